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

#include "refchain/refgen/interpolation.hpp"

#include <algorithm>

#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"

namespace refchain::refgen
{

namespace
{

// Index of the segment start: largest k with t_k <= elapsed, given
// t_front < elapsed < t_back.
template <typename Waypoints>
size_t segment_index(const Waypoints & wps, double elapsed)
{
  auto it = std::upper_bound(
    wps.begin(), wps.end(), elapsed,
    [](double value, const auto & wp) { return value < wp.time; });
  return static_cast<size_t>(std::distance(wps.begin(), it)) - 1;
}

}  // namespace

JointSample interpolate_joint(const Trajectory & trajectory, double elapsed)
{
  if (!trajectory.is_joint() || trajectory.size() == 0) {
    throw InvalidInput("interpolate_joint: need a non-empty joint trajectory");
  }
  const auto & wps = std::get<std::vector<JointWaypoint>>(trajectory.waypoints);
  const Eigen::Index n = wps.front().reference.positions.size();

  JointSample out;
  if (elapsed < wps.front().time) {
    out.reference.positions = wps.front().reference.positions;
    out.reference.velocities = Eigen::VectorXd::Zero(n);
    return out;
  }
  if (elapsed >= wps.back().time) {
    out.reference.positions = wps.back().reference.positions;
    out.reference.velocities = Eigen::VectorXd::Zero(n);
    out.finished = true;
    return out;
  }

  const size_t k = segment_index(wps, elapsed);
  const auto & a = wps[k];
  const auto & b = wps[k + 1];
  const double span = b.time - a.time;
  const double s = (elapsed - a.time) / span;
  out.reference.positions =
    a.reference.positions + s * (b.reference.positions - a.reference.positions);
  out.reference.velocities = (b.reference.positions - a.reference.positions) / span;
  return out;
}

TaskSample interpolate_task(const Trajectory & trajectory, double elapsed)
{
  if (trajectory.is_joint() || trajectory.size() == 0) {
    throw InvalidInput("interpolate_task: need a non-empty task trajectory");
  }
  const auto & wps = std::get<std::vector<TaskWaypoint>>(trajectory.waypoints);

  TaskSample out;
  if (elapsed < wps.front().time) {
    out.reference.pose = wps.front().reference.pose;
    out.reference.twist = core::Twist::zero();
    out.reference.wrench = wps.front().reference.wrench_or_zero();
    return out;
  }
  if (elapsed >= wps.back().time) {
    out.reference.pose = wps.back().reference.pose;
    out.reference.twist = core::Twist::zero();
    out.reference.wrench = wps.back().reference.wrench_or_zero();
    out.finished = true;
    return out;
  }

  const size_t k = segment_index(wps, elapsed);
  const auto & a = wps[k];
  const auto & b = wps[k + 1];
  const double span = b.time - a.time;
  const double s = (elapsed - a.time) / span;

  out.reference.pose.position =
    a.reference.pose.position + s * (b.reference.pose.position - a.reference.pose.position);
  out.reference.pose.orientation =
    core::quat_slerp(a.reference.pose.orientation, b.reference.pose.orientation, s);

  core::Twist twist;
  twist.linear = (b.reference.pose.position - a.reference.pose.position) / span;
  twist.angular =
    core::orientation_error(b.reference.pose.orientation, a.reference.pose.orientation) / span;
  out.reference.twist = twist;

  const core::Vector6d ha = a.reference.wrench_or_zero().vector();
  const core::Vector6d hb = b.reference.wrench_or_zero().vector();
  out.reference.wrench = core::Wrench::from_vector(ha + s * (hb - ha));
  return out;
}

}  // namespace refchain::refgen
