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
#include <cstdint>
#include <memory>
#include <optional>

#include "refchain/refgen/reference.hpp"
#include "refchain/transport/latest_slot.hpp"

namespace refchain::transport
{

enum class GoalStatus
{
  pending,    // accepted, not yet picked up by the control loop
  executing,  // being interpolated
  terminal,   // resolved with a ResultCode, final
};

/// Periodic progress report published from the control thread.
struct GoalFeedback
{
  double fraction = 0.0;  // of trajectory time elapsed, clamped to [0, 1]
  refgen::ReferenceSample last_sample;
};

/// Shared record tracking one accepted trajectory from submission to its
/// single terminal result. Status moves strictly
/// PENDING -> (EXECUTING ->) terminal; resolving twice is a ProtocolError.
/// Feedback crosses threads through the same wait-free latest-value cell the
/// topic path uses, only in the opposite direction.
class GoalRecord
{
public:
  explicit GoalRecord(std::uint64_t id) : id_(id) {}

  std::uint64_t id() const { return id_; }

  GoalStatus status() const;
  std::optional<refgen::ResultCode> result() const;

  /// Client side: newest feedback if any was published since the last poll.
  bool poll_feedback(GoalFeedback & out) { return feedback_.poll(out); }

  // Control-loop / transport side.
  void mark_executing();
  void resolve(refgen::ResultCode code);
  void publish_feedback(const GoalFeedback & feedback) { feedback_.publish(feedback); }

private:
  static constexpr int kPending = 0;
  static constexpr int kExecuting = 1;
  static constexpr int kTerminalBase = 2;

  std::uint64_t id_;
  std::atomic<int> status_{kPending};
  LatestSlot<GoalFeedback> feedback_;
};

using GoalHandle = std::shared_ptr<GoalRecord>;

}  // namespace refchain::transport
