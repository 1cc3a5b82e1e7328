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

#include "refchain/core/math.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "refchain/core/error.hpp"

namespace refchain::core
{

namespace
{

bool quat_finite(const Eigen::Quaterniond & q)
{
  return std::isfinite(q.w()) && std::isfinite(q.x()) && std::isfinite(q.y()) &&
         std::isfinite(q.z());
}

void require_unit(const Eigen::Quaterniond & q, const char * who)
{
  if (!quat_finite(q)) {
    throw InvalidInput(std::string(who) + ": non-finite quaternion");
  }
  if (std::abs(q.norm() - 1.0) > 1e-6) {
    throw InvalidInput(std::string(who) + ": quaternion is not unit norm");
  }
}

}  // namespace

bool all_finite(const Eigen::Ref<const Eigen::VectorXd> & v) { return v.allFinite(); }

Eigen::Quaterniond canonicalize(const Eigen::Quaterniond & q)
{
  Eigen::Quaterniond out = q.normalized();
  if (out.w() < 0.0) {
    out.coeffs() = -out.coeffs();
  }
  return out;
}

Eigen::Quaterniond quat_multiply(const Eigen::Quaterniond & a, const Eigen::Quaterniond & b)
{
  require_unit(a, "quat_multiply");
  require_unit(b, "quat_multiply");
  return canonicalize(a * b);
}

Eigen::Quaterniond quat_slerp(
  const Eigen::Quaterniond & a, const Eigen::Quaterniond & b, double s)
{
  require_unit(a, "quat_slerp");
  require_unit(b, "quat_slerp");
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidInput("quat_slerp: interpolation parameter outside [0, 1]");
  }
  if (s == 0.0) {
    return canonicalize(a);
  }
  if (s == 1.0) {
    return canonicalize(b);
  }

  Eigen::Quaterniond bb = b;
  double dot = a.dot(b);
  if (dot < 0.0) {
    bb.coeffs() = -bb.coeffs();
    dot = -dot;
  }
  dot = std::min(dot, 1.0);

  const double theta = std::acos(dot);
  Eigen::Quaterniond out;
  if (theta < 1e-9) {
    // Nearly parallel: linear blend is exact to machine precision here.
    out.coeffs() = (1.0 - s) * a.coeffs() + s * bb.coeffs();
  } else {
    const double inv_sin = 1.0 / std::sin(theta);
    const double wa = std::sin((1.0 - s) * theta) * inv_sin;
    const double wb = std::sin(s * theta) * inv_sin;
    out.coeffs() = wa * a.coeffs() + wb * bb.coeffs();
  }
  return canonicalize(out);
}

Eigen::Quaterniond exp_map(const Eigen::Vector3d & rotation)
{
  if (!rotation.allFinite()) {
    throw InvalidInput("exp_map: non-finite rotation vector");
  }
  const double angle = rotation.norm();
  if (angle < 1e-12) {
    Eigen::Quaterniond q(1.0, 0.5 * rotation.x(), 0.5 * rotation.y(), 0.5 * rotation.z());
    return canonicalize(q);
  }
  const double half = 0.5 * angle;
  const Eigen::Vector3d axis = rotation / angle;
  Eigen::Quaterniond q;
  q.w() = std::cos(half);
  q.vec() = std::sin(half) * axis;
  return canonicalize(q);
}

Eigen::Vector3d axis_angle(const Eigen::Quaterniond & q)
{
  require_unit(q, "axis_angle");
  const Eigen::Quaterniond c = canonicalize(q);
  const double vec_norm = c.vec().norm();
  if (vec_norm < 1e-12) {
    // Small rotation: angle ~ 2 |v|, axis ~ v / |v|.
    return 2.0 * c.vec();
  }
  const double angle = 2.0 * std::atan2(vec_norm, c.w());
  return c.vec() * (angle / vec_norm);
}

Eigen::Vector3d orientation_error(
  const Eigen::Quaterniond & desired, const Eigen::Quaterniond & actual)
{
  require_unit(desired, "orientation_error");
  require_unit(actual, "orientation_error");
  return axis_angle(desired * actual.conjugate());
}

Vector6d pose_error(const Pose & desired, const Pose & actual)
{
  Vector6d e;
  e.head<3>() = desired.position - actual.position;
  e.tail<3>() = orientation_error(desired.orientation, actual.orientation);
  return e;
}

Eigen::MatrixXd dls_pinv(const Eigen::Ref<const Jacobian6> & jacobian, double lambda)
{
  if (!jacobian.allFinite()) {
    throw InvalidInput("dls_pinv: non-finite Jacobian");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("dls_pinv: damping must be finite and non-negative");
  }

  const Matrix6d gram =
    jacobian * jacobian.transpose() + lambda * lambda * Matrix6d::Identity();

  // gram is symmetric, so solving gram X = J and transposing yields
  // J^T gram^{-1} without forming the inverse.
  if (lambda == 0.0) {
    Eigen::FullPivLU<Matrix6d> lu(gram);
    if (!lu.isInvertible()) {
      throw SingularMatrix("dls_pinv: J J^T is singular and damping is zero");
    }
    return lu.solve(Eigen::MatrixXd(jacobian)).transpose();
  }
  return gram.ldlt().solve(Eigen::MatrixXd(jacobian)).transpose();
}

Pose integrate_pose(const Pose & pose, const Twist & twist, double dt)
{
  Pose out;
  out.position = pose.position + twist.linear * dt;
  out.orientation = canonicalize(exp_map(twist.angular * dt) * pose.orientation);
  return out;
}

}  // namespace refchain::core
