// Copyright 2026 refchain contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <mutex>
#include <optional>
#include <variant>

#include "refchain/refgen/reference.hpp"
#include "refchain/refgen/validation.hpp"
#include "refchain/transport/goal.hpp"
#include "refchain/transport/latest_slot.hpp"

namespace refchain::transport
{

/// In-process ingress for one reference generator: a latest-value topic cell
/// and a single pending-trajectory slot, plus the arrival sequence counter
/// that orders the two against each other.
///
/// Threading contract: any number of writer threads may publish references
/// and submit trajectories — they serialize among themselves on a writer-side
/// mutex. The control thread drains with take_topic / take_goal, which never
/// touch that mutex and complete in a bounded number of steps regardless of
/// writer activity. All validation runs on the writer threads; drained
/// payloads are pre-validated by construction.
class Inbox
{
public:
  Inbox() = default;

  /// Called by the owning generator at configure time; defines the
  /// validation envelope applied to every publish/submit.
  void configure(refgen::Limits limits, Eigen::Index expected_dim, bool task_space);

  /// Validate and publish an online reference. Returns nullopt on
  /// acceptance, the rejection code otherwise (mailbox untouched).
  std::optional<refgen::ResultCode> publish_reference(const refgen::ReferenceSample & reference);

  /// Validate and enqueue a trajectory. On acceptance the trajectory gets a
  /// fresh id and a PENDING handle; a submission arriving before the
  /// previous one was picked up replaces it, resolving the replaced goal
  /// ABORTED_BY_NEW_TRAJECTORY on this (writer) thread. On rejection the
  /// code is returned and nothing is retained.
  std::variant<GoalHandle, refgen::ResultCode> submit_trajectory(refgen::Trajectory trajectory);

  struct DrainedTopic
  {
    refgen::ReferenceSample reference;
    std::uint64_t sequence = 0;
  };

  struct DrainedGoal
  {
    refgen::Trajectory trajectory;
    GoalHandle handle;
    std::uint64_t sequence = 0;
  };

  /// Control-thread side, wait-free. At most one of each per cycle; the
  /// sequence numbers order topic against trajectory arrivals.
  std::optional<DrainedTopic> take_topic();
  std::optional<DrainedGoal> take_goal();

  /// Resolve a still-pending, never-drained goal (generator deactivation).
  std::optional<GoalHandle> abandon_pending(refgen::ResultCode code);

  std::uint64_t published_count() const { return publish_count_.load(std::memory_order_relaxed); }

  ~Inbox();

  Inbox(const Inbox &) = delete;
  Inbox & operator=(const Inbox &) = delete;

private:
  struct StampedReference
  {
    std::uint64_t sequence = 0;
    refgen::ReferenceSample reference;
  };

  struct PendingGoal
  {
    refgen::Trajectory trajectory;
    GoalHandle handle;
    std::uint64_t sequence = 0;
  };

  refgen::Limits limits_;
  Eigen::Index expected_dim_ = 0;
  bool task_space_ = false;

  std::mutex writer_mutex_;
  std::atomic<std::uint64_t> arrival_sequence_{0};
  std::atomic<std::uint64_t> next_goal_id_{1};
  std::atomic<std::uint64_t> publish_count_{0};

  LatestSlot<StampedReference> topic_;
  std::atomic<PendingGoal *> pending_{nullptr};

  StampedReference scratch_topic_;  // reader-side buffer, reused across cycles
};

}  // namespace refchain::transport
