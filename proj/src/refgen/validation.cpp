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

#include "refchain/refgen/validation.hpp"

#include <atomic>
#include <cmath>

namespace refchain::refgen
{

const char * to_string(ResultCode code)
{
  switch (code) {
    case ResultCode::succeeded:
      return "SUCCEEDED";
    case ResultCode::aborted_by_new_trajectory:
      return "ABORTED_BY_NEW_TRAJECTORY";
    case ResultCode::aborted_by_online_reference:
      return "ABORTED_BY_ONLINE_REFERENCE";
    case ResultCode::aborted_by_deactivation:
      return "ABORTED_BY_DEACTIVATION";
    case ResultCode::rejected_dimension:
      return "REJECTED_DIMENSION";
    case ResultCode::rejected_nonfinite:
      return "REJECTED_NONFINITE";
    case ResultCode::rejected_limits:
      return "REJECTED_LIMITS";
    case ResultCode::rejected_timestamps:
      return "REJECTED_TIMESTAMPS";
  }
  return "UNKNOWN";
}

bool is_rejection(ResultCode code)
{
  return code == ResultCode::rejected_dimension || code == ResultCode::rejected_nonfinite ||
         code == ResultCode::rejected_limits || code == ResultCode::rejected_timestamps;
}

double Trajectory::end_time() const
{
  if (size() == 0) {
    return 0.0;
  }
  return is_joint() ? std::get<std::vector<JointWaypoint>>(waypoints).back().time
                    : std::get<std::vector<TaskWaypoint>>(waypoints).back().time;
}

namespace
{

std::atomic<ValidationProbe> g_probe{nullptr};

void fire_probe()
{
  if (auto p = g_probe.load(std::memory_order_relaxed)) {
    p();
  }
}

bool quat_ok(const Eigen::Quaterniond & q)
{
  return std::isfinite(q.w()) && std::isfinite(q.x()) && std::isfinite(q.y()) &&
         std::isfinite(q.z()) && std::abs(q.norm() - 1.0) <= 1e-6;
}

std::optional<ResultCode> check_joint(
  const JointReference & ref, const Limits & limits, Eigen::Index expected_dim)
{
  if (ref.positions.size() != expected_dim) {
    return ResultCode::rejected_dimension;
  }
  if (ref.velocities && ref.velocities->size() != expected_dim) {
    return ResultCode::rejected_dimension;
  }
  if (!ref.positions.allFinite() || (ref.velocities && !ref.velocities->allFinite())) {
    return ResultCode::rejected_nonfinite;
  }
  if (limits.position_min.size() == expected_dim &&
      (ref.positions.array() < limits.position_min.array()).any()) {
    return ResultCode::rejected_limits;
  }
  if (limits.position_max.size() == expected_dim &&
      (ref.positions.array() > limits.position_max.array()).any()) {
    return ResultCode::rejected_limits;
  }
  if (ref.velocities && limits.velocity_max.size() == expected_dim &&
      (ref.velocities->array().abs() > limits.velocity_max.array()).any()) {
    return ResultCode::rejected_limits;
  }
  return std::nullopt;
}

std::optional<ResultCode> check_task(const TaskReference & ref, const Limits & limits)
{
  if (!ref.pose.position.allFinite() || !quat_ok(ref.pose.orientation)) {
    return ResultCode::rejected_nonfinite;
  }
  if (ref.twist && (!ref.twist->linear.allFinite() || !ref.twist->angular.allFinite())) {
    return ResultCode::rejected_nonfinite;
  }
  if (ref.wrench && (!ref.wrench->force.allFinite() || !ref.wrench->torque.allFinite())) {
    return ResultCode::rejected_nonfinite;
  }
  if ((ref.pose.position.array() < limits.workspace_min.array()).any() ||
      (ref.pose.position.array() > limits.workspace_max.array()).any()) {
    return ResultCode::rejected_limits;
  }
  if (ref.twist && ref.twist->linear.norm() > limits.cartesian_speed_max) {
    return ResultCode::rejected_limits;
  }
  return std::nullopt;
}

}  // namespace

void set_validation_probe(ValidationProbe probe)
{
  g_probe.store(probe, std::memory_order_relaxed);
}

std::optional<ResultCode> validate_reference(
  const ReferenceSample & reference, const Limits & limits, Eigen::Index expected_dim)
{
  fire_probe();
  if (const auto * joint = std::get_if<JointReference>(&reference)) {
    return check_joint(*joint, limits, expected_dim);
  }
  return check_task(std::get<TaskReference>(reference), limits);
}

std::optional<ResultCode> validate_trajectory(
  const Trajectory & trajectory, const Limits & limits, Eigen::Index expected_dim)
{
  fire_probe();
  if (trajectory.size() == 0) {
    return ResultCode::rejected_dimension;
  }

  double previous_time = -1.0;  // waypoint times are >= 0, so any t_0 >= 0 passes
  if (trajectory.is_joint()) {
    for (const auto & wp : std::get<std::vector<JointWaypoint>>(trajectory.waypoints)) {
      if (auto code = check_joint(wp.reference, limits, expected_dim)) {
        return code;
      }
      if (!std::isfinite(wp.time) || wp.time < 0.0 || wp.time <= previous_time) {
        return ResultCode::rejected_timestamps;
      }
      previous_time = wp.time;
    }
    return std::nullopt;
  }

  const auto & wps = std::get<std::vector<TaskWaypoint>>(trajectory.waypoints);
  for (size_t k = 0; k < wps.size(); ++k) {
    if (auto code = check_task(wps[k].reference, limits)) {
      return code;
    }
    if (!std::isfinite(wps[k].time) || wps[k].time < 0.0 || wps[k].time <= previous_time) {
      return ResultCode::rejected_timestamps;
    }
    previous_time = wps[k].time;
    if (k > 0) {
      // Implied straight-line segment speed against the Cartesian cap.
      const double dt = wps[k].time - wps[k - 1].time;
      const double dist =
        (wps[k].reference.pose.position - wps[k - 1].reference.pose.position).norm();
      if (dist / dt > limits.cartesian_speed_max) {
        return ResultCode::rejected_limits;
      }
    }
  }
  return std::nullopt;
}

}  // namespace refchain::refgen
