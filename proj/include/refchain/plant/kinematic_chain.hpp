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

#include <vector>

#include "refchain/core/types.hpp"

namespace refchain::plant
{

/// One revolute joint of a serial chain: a fixed translation from the
/// previous frame followed by a rotation of q about `axis` (unit vector,
/// expressed in the preceding frame).
struct ChainJoint
{
  Eigen::Vector3d origin{Eigen::Vector3d::Zero()};
  Eigen::Vector3d axis{Eigen::Vector3d::UnitZ()};
};

/// Serial-chain kinematics: forward kinematics to a tool frame and the
/// geometric Jacobian. Geometry is data, so any robot expressible as a chain
/// of revolute joints can be swapped in from a config file.
class KinematicChain
{
public:
  KinematicChain(std::vector<ChainJoint> joints, const Eigen::Vector3d & tool_offset);

  /// Planar arm: every axis is z, link i extends along the rotated x axis.
  static KinematicChain planar(const Eigen::Ref<const Eigen::VectorXd> & link_lengths);

  Eigen::Index dof() const { return static_cast<Eigen::Index>(joints_.size()); }

  core::Pose forward_kinematics(const Eigen::Ref<const Eigen::VectorXd> & q) const;

  /// 6 x N geometric Jacobian in the base frame. Column i is
  /// (axis_i x (p_tool - p_i); axis_i) with everything in world coordinates.
  core::Jacobian6 jacobian(const Eigen::Ref<const Eigen::VectorXd> & q) const;

private:
  std::vector<ChainJoint> joints_;
  Eigen::Vector3d tool_;
};

}  // namespace refchain::plant
