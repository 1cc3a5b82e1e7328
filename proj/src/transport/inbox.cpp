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

#include "refchain/transport/inbox.hpp"

#include <utility>

namespace refchain::transport
{

Inbox::~Inbox()
{
  if (PendingGoal * node = pending_.exchange(nullptr, std::memory_order_acq_rel)) {
    delete node;
  }
}

void Inbox::configure(refgen::Limits limits, Eigen::Index expected_dim, bool task_space)
{
  limits_ = std::move(limits);
  expected_dim_ = expected_dim;
  task_space_ = task_space;
}

std::optional<refgen::ResultCode> Inbox::publish_reference(
  const refgen::ReferenceSample & reference)
{
  const bool is_task = std::holds_alternative<refgen::TaskReference>(reference);
  if (is_task != task_space_) {
    return refgen::ResultCode::rejected_dimension;
  }
  if (auto code = refgen::validate_reference(reference, limits_, expected_dim_)) {
    return code;
  }

  std::lock_guard<std::mutex> lock(writer_mutex_);
  StampedReference stamped;
  stamped.sequence = ++arrival_sequence_;
  stamped.reference = reference;
  topic_.publish(stamped);
  publish_count_.fetch_add(1, std::memory_order_relaxed);
  return std::nullopt;
}

std::variant<GoalHandle, refgen::ResultCode> Inbox::submit_trajectory(
  refgen::Trajectory trajectory)
{
  const bool is_task = !trajectory.is_joint();
  if (is_task != task_space_) {
    return refgen::ResultCode::rejected_dimension;
  }
  if (auto code = refgen::validate_trajectory(trajectory, limits_, expected_dim_)) {
    return *code;
  }

  trajectory.id = next_goal_id_.fetch_add(1, std::memory_order_relaxed);
  auto handle = std::make_shared<GoalRecord>(trajectory.id);
  auto * node = new PendingGoal{std::move(trajectory), handle, 0};

  PendingGoal * replaced = nullptr;
  {
    std::lock_guard<std::mutex> lock(writer_mutex_);
    node->sequence = ++arrival_sequence_;
    replaced = pending_.exchange(node, std::memory_order_acq_rel);
  }
  if (replaced) {
    // Never reached the control loop; the newer submission preempts it here.
    replaced->handle->resolve(refgen::ResultCode::aborted_by_new_trajectory);
    delete replaced;
  }
  return handle;
}

std::optional<Inbox::DrainedTopic> Inbox::take_topic()
{
  if (!topic_.poll(scratch_topic_)) {
    return std::nullopt;
  }
  DrainedTopic out;
  out.reference = scratch_topic_.reference;
  out.sequence = scratch_topic_.sequence;
  return out;
}

std::optional<Inbox::DrainedGoal> Inbox::take_goal()
{
  PendingGoal * node = pending_.exchange(nullptr, std::memory_order_acq_rel);
  if (!node) {
    return std::nullopt;
  }
  DrainedGoal out;
  out.trajectory = std::move(node->trajectory);
  out.handle = std::move(node->handle);
  out.sequence = node->sequence;
  delete node;
  out.handle->mark_executing();
  return out;
}

std::optional<GoalHandle> Inbox::abandon_pending(refgen::ResultCode code)
{
  PendingGoal * node = pending_.exchange(nullptr, std::memory_order_acq_rel);
  if (!node) {
    return std::nullopt;
  }
  GoalHandle handle = std::move(node->handle);
  delete node;
  handle->resolve(code);
  return handle;
}

}  // namespace refchain::transport
