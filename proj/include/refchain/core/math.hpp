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

namespace refchain::core
{

/// Normalize and flip the sign so that w >= 0. Every quaternion produced by
/// this library goes through here, which keeps interpolation and logging free
/// of double-cover ambiguity.
Eigen::Quaterniond canonicalize(const Eigen::Quaterniond & q);

/// Hamilton product a ⊗ b, renormalized and sign-canonicalized.
/// Throws InvalidInput on non-finite or clearly non-unit input.
Eigen::Quaterniond quat_multiply(const Eigen::Quaterniond & a, const Eigen::Quaterniond & b);

/// Shortest-arc spherical interpolation for s in [0, 1]. Antipodal
/// representations are reconciled by sign flip before interpolating.
Eigen::Quaterniond quat_slerp(
  const Eigen::Quaterniond & a, const Eigen::Quaterniond & b, double s);

/// Rotation-vector exponential: axis * angle -> unit quaternion.
Eigen::Quaterniond exp_map(const Eigen::Vector3d & rotation);

/// Quaternion logarithm as an axis * angle vector with angle in [0, pi].
Eigen::Vector3d axis_angle(const Eigen::Quaterniond & q);

/// World-frame rotation error desired ⊗ actual^{-1}, returned as an
/// axis * angle vector whose magnitude never exceeds pi.
Eigen::Vector3d orientation_error(
  const Eigen::Quaterniond & desired, const Eigen::Quaterniond & actual);

/// 6-vector [position error; orientation error], both in the base frame.
Vector6d pose_error(const Pose & desired, const Pose & actual);

/// Damped least-squares pseudoinverse J^T (J J^T + lambda^2 I)^{-1} of a
/// 6 x N Jacobian, computed with a direct dense solve of the 6 x 6 system.
/// With lambda == 0 a singular J J^T raises SingularMatrix.
Eigen::MatrixXd dls_pinv(const Eigen::Ref<const Jacobian6> & jacobian, double lambda);

/// One explicit Euler step of a pose under a base-frame twist: the position
/// advances linearly, the orientation is pre-multiplied by the exponential of
/// the angular increment and renormalized.
Pose integrate_pose(const Pose & pose, const Twist & twist, double dt);

bool all_finite(const Eigen::Ref<const Eigen::VectorXd> & v);

}  // namespace refchain::core
