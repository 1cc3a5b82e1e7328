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

#include "refchain/plant/wall.hpp"

#include <algorithm>

namespace refchain::plant
{

core::Wrench wall_wrench(const VirtualWall & wall, const core::Pose & ee_pose,
                         const core::Twist & ee_twist)
{
  const Eigen::Vector3d n = wall.normal.normalized();
  const double depth = std::max(0.0, (wall.plane_point - ee_pose.position).dot(n));
  core::Wrench w = core::Wrench::zero();
  if (depth > 0.0) {
    const double approach_speed = std::max(0.0, -ee_twist.linear.dot(n));
    w.force = (wall.stiffness * depth + wall.damping * approach_speed) * n;
  }
  return w;
}

}  // namespace refchain::plant
