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

#include "refchain/core/types.hpp"

namespace refchain::plant
{

/// Penalty-based virtual wall. The half-space behind the plane (opposite the
/// outward normal) is solid; penetration produces a purely normal force with
/// a stiffness term and a one-sided damping term. The wall is a force sensor
/// emulation: it feeds the measured wrench, it does not act on the plant.
struct VirtualWall
{
  Eigen::Vector3d plane_point{Eigen::Vector3d::Zero()};
  Eigen::Vector3d normal{Eigen::Vector3d::UnitX()};  // unit, pointing into free space
  double stiffness = 0.0;                            // N/m
  double damping = 0.0;                              // N s/m, resists further penetration only
};

/// Wrench exerted by the wall on the end effector for the given pose/twist.
/// Zero outside the wall; continuous at first contact.
core::Wrench wall_wrench(const VirtualWall & wall, const core::Pose & ee_pose,
                         const core::Twist & ee_twist);

}  // namespace refchain::plant
