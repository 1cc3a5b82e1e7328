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

#include "refchain/refgen/fsm.hpp"

namespace refchain::refgen
{

namespace
{

// Hold sample after a trajectory completes: final waypoint, rates zeroed,
// bit-identical to what the finishing cycle emitted.
ReferenceSample terminal_hold(const Trajectory & trajectory)
{
  if (trajectory.is_joint()) {
    const auto & wps = std::get<std::vector<JointWaypoint>>(trajectory.waypoints);
    JointReference ref;
    ref.positions = wps.back().reference.positions;
    ref.velocities = Eigen::VectorXd::Zero(ref.positions.size());
    return ref;
  }
  const auto & wps = std::get<std::vector<TaskWaypoint>>(trajectory.waypoints);
  TaskReference ref;
  ref.pose = wps.back().reference.pose;
  ref.twist = core::Twist::zero();
  ref.wrench = wps.back().reference.wrench_or_zero();
  return ref;
}

}  // namespace

std::vector<EmittedResult> fsm_transition(GeneratorState & state, const GeneratorEvent & event)
{
  std::vector<EmittedResult> results;

  if (const auto * topic = std::get_if<TopicReferenceEvent>(&event)) {
    if (state.fsm == FsmState::trajectory_execution) {
      results.push_back(
        {state.active->trajectory.id, ResultCode::aborted_by_online_reference});
      state.active.reset();
      state.fsm = FsmState::online_reference;
    }
    state.held = topic->reference;
    return results;
  }

  if (const auto * traj = std::get_if<NewTrajectoryEvent>(&event)) {
    if (state.fsm == FsmState::trajectory_execution) {
      results.push_back({state.active->trajectory.id, ResultCode::aborted_by_new_trajectory});
    }
    state.active = ActiveTrajectory{traj->trajectory, traj->start_cycle};
    state.fsm = FsmState::trajectory_execution;
    return results;
  }

  if (std::holds_alternative<TrajectoryFinishedEvent>(event)) {
    if (state.fsm == FsmState::trajectory_execution) {
      results.push_back({state.active->trajectory.id, ResultCode::succeeded});
      state.held = terminal_hold(state.active->trajectory);
      state.active.reset();
      state.fsm = FsmState::online_reference;
    }
    return results;  // ignored while ONLINE
  }

  // DeactivateEvent
  if (state.fsm == FsmState::trajectory_execution) {
    results.push_back({state.active->trajectory.id, ResultCode::aborted_by_deactivation});
    state.active.reset();
  }
  state.fsm = FsmState::online_reference;
  return results;
}

}  // namespace refchain::refgen
