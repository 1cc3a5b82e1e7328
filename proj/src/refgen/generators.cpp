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

#include "refchain/refgen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"

namespace refchain::refgen
{

ReferenceGenerator::ReferenceGenerator(std::string name, bool task_space)
: chain::Component(std::move(name), chain::ComponentKind::reference_generator),
  inbox_(std::make_shared<transport::Inbox>()),
  task_space_(task_space)
{
}

void ReferenceGenerator::do_activate(const plant::PlantObservation & observation)
{
  state_ = GeneratorState{};
  state_.held = activation_hold(observation);
  live_goals_.clear();
}

void ReferenceGenerator::do_deactivate()
{
  deliver(fsm_transition(state_, DeactivateEvent{}));
  // A goal submitted but never picked up still deserves its terminal code.
  inbox_->abandon_pending(ResultCode::aborted_by_deactivation);
}

void ReferenceGenerator::deliver(const std::vector<EmittedResult> & results)
{
  for (const auto & result : results) {
    auto it = live_goals_.find(result.trajectory_id);
    if (it != live_goals_.end()) {
      it->second->resolve(result.code);
      live_goals_.erase(it);
    }
  }
}

void ReferenceGenerator::do_update(
  double t, double dt, const plant::PlantObservation & observation,
  Eigen::Ref<const Eigen::VectorXd> /*input*/, Eigen::Ref<Eigen::VectorXd> output)
{
  (void)observation;
  const auto cycle = static_cast<std::uint64_t>(std::llround(t / dt));

  // Drain the inbox exactly once per cycle: at most one topic value and one
  // trajectory, processed in arrival order so a later topic supersedes an
  // earlier trajectory and vice versa.
  auto topic = inbox_->take_topic();
  auto goal = inbox_->take_goal();
  if (goal) {
    live_goals_[goal->trajectory.id] = goal->handle;
  }

  const bool topic_first = topic && (!goal || topic->sequence < goal->sequence);
  if (topic_first) {
    deliver(fsm_transition(state_, TopicReferenceEvent{std::move(topic->reference)}));
    topic.reset();
  }
  if (goal) {
    deliver(fsm_transition(state_, NewTrajectoryEvent{std::move(goal->trajectory), cycle}));
  }
  if (topic) {
    deliver(fsm_transition(state_, TopicReferenceEvent{std::move(topic->reference)}));
  }

  if (state_.fsm == FsmState::trajectory_execution) {
    const ActiveTrajectory & active = *state_.active;
    const double elapsed = static_cast<double>(cycle - active.start_cycle) * dt;

    bool finished = false;
    const ReferenceSample sample = sample_trajectory(active.trajectory, elapsed, finished);

    auto handle_it = live_goals_.find(active.trajectory.id);
    if (handle_it != live_goals_.end()) {
      transport::GoalFeedback feedback;
      const double end = active.trajectory.end_time();
      feedback.fraction = end > 0.0 ? std::clamp(elapsed / end, 0.0, 1.0) : 1.0;
      feedback.last_sample = sample;
      handle_it->second->publish_feedback(feedback);
    }

    if (finished) {
      // Transition in the same cycle; the port still carries the final
      // waypoint, which is also what the hold will keep emitting.
      deliver(fsm_transition(state_, TrajectoryFinishedEvent{}));
    }
    write_port(sample, output);
    return;
  }

  write_port(state_.held, output);
}

// ---------------------------------------------------------------------------

JointReferenceGenerator::JointReferenceGenerator(std::string name)
: ReferenceGenerator(std::move(name), false)
{
}

void JointReferenceGenerator::do_configure(
  const chain::ParamMap & params, const chain::PlantInfo & plant)
{
  params.require_known_keys(name(), {"position_min", "position_max", "velocity_max"});
  dof_ = plant.dof;

  Limits limits;
  if (auto v = params.maybe_vector(name(), "position_min", dof_)) {
    limits.position_min = *v;
  }
  if (auto v = params.maybe_vector(name(), "position_max", dof_)) {
    limits.position_max = *v;
  }
  if (auto v = params.maybe_vector(name(), "velocity_max", dof_)) {
    limits.velocity_max = *v;
  }
  if (limits.position_min.size() == dof_ && limits.position_max.size() == dof_ &&
      (limits.position_min.array() > limits.position_max.array()).any()) {
    throw ConfigError(name() + ": position_min exceeds position_max");
  }
  inbox_->configure(std::move(limits), dof_, false);

  outputs_ = chain::joint_quantities("position", dof_);
  const auto vel = chain::joint_quantities("velocity", dof_);
  outputs_.insert(outputs_.end(), vel.begin(), vel.end());
}

ReferenceSample JointReferenceGenerator::activation_hold(
  const plant::PlantObservation & observation) const
{
  JointReference ref;
  ref.positions = observation.joints.positions;
  ref.velocities = Eigen::VectorXd::Zero(dof_);
  return ref;
}

ReferenceSample JointReferenceGenerator::sample_trajectory(
  const Trajectory & trajectory, double elapsed, bool & finished) const
{
  JointSample sample = interpolate_joint(trajectory, elapsed);
  finished = sample.finished;
  return std::move(sample.reference);
}

void JointReferenceGenerator::write_port(
  const ReferenceSample & sample, Eigen::Ref<Eigen::VectorXd> output) const
{
  const auto & ref = std::get<JointReference>(sample);
  output.head(dof_) = ref.positions;
  output.segment(dof_, dof_) = ref.velocities_or_zero();
}

// ---------------------------------------------------------------------------

TaskReferenceGenerator::TaskReferenceGenerator(std::string name)
: ReferenceGenerator(std::move(name), true)
{
}

void TaskReferenceGenerator::do_configure(
  const chain::ParamMap & params, const chain::PlantInfo & plant)
{
  params.require_known_keys(
    name(), {"workspace_min", "workspace_max", "cartesian_speed_max"});

  Limits limits;
  if (auto v = params.maybe_vector(name(), "workspace_min", 3)) {
    limits.workspace_min = *v;
  }
  if (auto v = params.maybe_vector(name(), "workspace_max", 3)) {
    limits.workspace_max = *v;
  }
  limits.cartesian_speed_max =
    params.scalar_or(name(), "cartesian_speed_max", limits.cartesian_speed_max);
  if (!(limits.cartesian_speed_max > 0.0)) {
    throw ConfigError(name() + ": cartesian_speed_max must be positive");
  }
  if ((limits.workspace_min.array() > limits.workspace_max.array()).any()) {
    throw ConfigError(name() + ": workspace_min exceeds workspace_max");
  }
  inbox_->configure(std::move(limits), plant.dof, true);

  outputs_ = chain::pose_quantities();
  const auto tw = chain::twist_quantities();
  const auto wr = chain::wrench_quantities();
  outputs_.insert(outputs_.end(), tw.begin(), tw.end());
  outputs_.insert(outputs_.end(), wr.begin(), wr.end());
}

ReferenceSample TaskReferenceGenerator::activation_hold(
  const plant::PlantObservation & observation) const
{
  TaskReference ref;
  ref.pose = observation.ee_pose;
  ref.twist = core::Twist::zero();
  ref.wrench = core::Wrench::zero();
  return ref;
}

ReferenceSample TaskReferenceGenerator::sample_trajectory(
  const Trajectory & trajectory, double elapsed, bool & finished) const
{
  TaskSample sample = interpolate_task(trajectory, elapsed);
  finished = sample.finished;
  return std::move(sample.reference);
}

void TaskReferenceGenerator::write_port(
  const ReferenceSample & sample, Eigen::Ref<Eigen::VectorXd> output) const
{
  pack_task_reference(std::get<TaskReference>(sample), output);
}

void pack_task_reference(const TaskReference & ref, Eigen::Ref<Eigen::VectorXd> out)
{
  out[0] = ref.pose.position.x();
  out[1] = ref.pose.position.y();
  out[2] = ref.pose.position.z();
  out[3] = ref.pose.orientation.w();
  out[4] = ref.pose.orientation.x();
  out[5] = ref.pose.orientation.y();
  out[6] = ref.pose.orientation.z();
  out.segment<6>(7) = ref.twist_or_zero().vector();
  out.segment<6>(13) = ref.wrench_or_zero().vector();
}

TaskReference unpack_task_reference(Eigen::Ref<const Eigen::VectorXd> in)
{
  TaskReference ref;
  ref.pose.position = Eigen::Vector3d(in[0], in[1], in[2]);
  ref.pose.orientation = Eigen::Quaterniond(in[3], in[4], in[5], in[6]);
  if (in.size() >= 13) {
    ref.twist = core::Twist::from_vector(in.segment<6>(7));
  }
  if (in.size() >= 19) {
    ref.wrench = core::Wrench::from_vector(in.segment<6>(13));
  }
  return ref;
}

}  // namespace refchain::refgen
