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

#include "refchain/plant/kinematic_chain.hpp"

#include <utility>

#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"

namespace refchain::plant
{

KinematicChain::KinematicChain(std::vector<ChainJoint> joints, const Eigen::Vector3d & tool_offset)
: joints_(std::move(joints)), tool_(tool_offset)
{
  if (joints_.empty()) {
    throw ConfigError("kinematic chain: at least one joint required");
  }
  for (auto & j : joints_) {
    const double n = j.axis.norm();
    if (!(n > 1e-9) || !j.axis.allFinite() || !j.origin.allFinite()) {
      throw ConfigError("kinematic chain: joint axis/origin must be finite, axis non-zero");
    }
    j.axis /= n;
  }
  if (!tool_.allFinite()) {
    throw ConfigError("kinematic chain: tool offset must be finite");
  }
}

KinematicChain KinematicChain::planar(const Eigen::Ref<const Eigen::VectorXd> & link_lengths)
{
  if (link_lengths.size() < 1) {
    throw ConfigError("planar chain: at least one link required");
  }
  std::vector<ChainJoint> joints(static_cast<size_t>(link_lengths.size()));
  for (Eigen::Index i = 0; i < link_lengths.size(); ++i) {
    joints[static_cast<size_t>(i)].axis = Eigen::Vector3d::UnitZ();
    joints[static_cast<size_t>(i)].origin =
      i == 0 ? Eigen::Vector3d::Zero() : Eigen::Vector3d(link_lengths[i - 1], 0.0, 0.0);
  }
  const Eigen::Vector3d tool(link_lengths[link_lengths.size() - 1], 0.0, 0.0);
  return KinematicChain(std::move(joints), tool);
}

core::Pose KinematicChain::forward_kinematics(const Eigen::Ref<const Eigen::VectorXd> & q) const
{
  if (q.size() != dof()) {
    throw InvalidInput("forward_kinematics: joint vector dimension mismatch");
  }
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Quaterniond r = Eigen::Quaterniond::Identity();
  for (Eigen::Index i = 0; i < dof(); ++i) {
    const auto & joint = joints_[static_cast<size_t>(i)];
    p += r * joint.origin;
    r = r * Eigen::Quaterniond(Eigen::AngleAxisd(q[i], joint.axis));
  }
  core::Pose pose;
  pose.position = p + r * tool_;
  pose.orientation = core::canonicalize(r);
  return pose;
}

core::Jacobian6 KinematicChain::jacobian(const Eigen::Ref<const Eigen::VectorXd> & q) const
{
  if (q.size() != dof()) {
    throw InvalidInput("jacobian: joint vector dimension mismatch");
  }
  const Eigen::Index n = dof();
  std::vector<Eigen::Vector3d> joint_positions(static_cast<size_t>(n));
  std::vector<Eigen::Vector3d> joint_axes(static_cast<size_t>(n));

  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Quaterniond r = Eigen::Quaterniond::Identity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto & joint = joints_[static_cast<size_t>(i)];
    p += r * joint.origin;
    joint_positions[static_cast<size_t>(i)] = p;
    joint_axes[static_cast<size_t>(i)] = r * joint.axis;
    r = r * Eigen::Quaterniond(Eigen::AngleAxisd(q[i], joint.axis));
  }
  const Eigen::Vector3d p_tool = p + r * tool_;

  core::Jacobian6 jac(6, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector3d & axis = joint_axes[static_cast<size_t>(i)];
    jac.col(i).head<3>() = axis.cross(p_tool - joint_positions[static_cast<size_t>(i)]);
    jac.col(i).tail<3>() = axis;
  }
  return jac;
}

}  // namespace refchain::plant
