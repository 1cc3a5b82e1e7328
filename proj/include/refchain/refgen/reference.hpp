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

#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "refchain/core/types.hpp"

namespace refchain::refgen
{

/// Terminal outcome of a submitted trajectory, or the reason an input was
/// rejected before ever reaching the control loop.
enum class ResultCode
{
  succeeded,
  aborted_by_new_trajectory,
  aborted_by_online_reference,
  aborted_by_deactivation,
  rejected_dimension,
  rejected_nonfinite,
  rejected_limits,
  rejected_timestamps,
};

const char * to_string(ResultCode code);
bool is_rejection(ResultCode code);

/// Joint-space setpoint. Velocities are optional; absent means hold at zero.
struct JointReference
{
  Eigen::VectorXd positions;
  std::optional<Eigen::VectorXd> velocities;

  Eigen::VectorXd velocities_or_zero() const
  {
    return velocities ? *velocities : Eigen::VectorXd::Zero(positions.size());
  }
};

/// Task-space setpoint: pose plus optional twist and wrench feedforward.
struct TaskReference
{
  core::Pose pose;
  std::optional<core::Twist> twist;
  std::optional<core::Wrench> wrench;

  core::Twist twist_or_zero() const { return twist ? *twist : core::Twist::zero(); }
  core::Wrench wrench_or_zero() const { return wrench ? *wrench : core::Wrench::zero(); }
};

/// A single-period setpoint flowing through chain ports, in either space.
using ReferenceSample = std::variant<JointReference, TaskReference>;

struct JointWaypoint
{
  double time = 0.0;  // relative to the acceptance cycle
  JointReference reference;
};

struct TaskWaypoint
{
  double time = 0.0;
  TaskReference reference;
};

/// Timed waypoint list, all waypoints in the same space. The id is assigned
/// on submission and identifies the goal in results and logs.
struct Trajectory
{
  std::uint64_t id = 0;
  std::variant<std::vector<JointWaypoint>, std::vector<TaskWaypoint>> waypoints;

  bool is_joint() const { return std::holds_alternative<std::vector<JointWaypoint>>(waypoints); }

  std::size_t size() const
  {
    return is_joint() ? std::get<std::vector<JointWaypoint>>(waypoints).size()
                      : std::get<std::vector<TaskWaypoint>>(waypoints).size();
  }

  double end_time() const;
};

/// Validation envelope. Empty joint-limit vectors and infinite box/speed
/// bounds mean "unconstrained".
struct Limits
{
  Eigen::VectorXd position_min;
  Eigen::VectorXd position_max;
  Eigen::VectorXd velocity_max;

  Eigen::Vector3d workspace_min{
    Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity())};
  Eigen::Vector3d workspace_max{
    Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity())};
  double cartesian_speed_max = std::numeric_limits<double>::infinity();

  static Limits unbounded() { return Limits{}; }
};

}  // namespace refchain::refgen
