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

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace refchain::core
{

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
// Task-space Jacobian, 6 rows (linear, angular), one column per joint.
using Jacobian6 = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// Measured joint-space state of an N-joint mechanism. The three vectors
/// always have the same length.
struct JointState
{
  Eigen::VectorXd positions;
  Eigen::VectorXd velocities;
  Eigen::VectorXd efforts;

  static JointState zero(Eigen::Index dof)
  {
    JointState s;
    s.positions = Eigen::VectorXd::Zero(dof);
    s.velocities = Eigen::VectorXd::Zero(dof);
    s.efforts = Eigen::VectorXd::Zero(dof);
    return s;
  }

  Eigen::Index dof() const { return positions.size(); }

  bool valid() const
  {
    return positions.size() >= 1 && velocities.size() == positions.size() &&
           efforts.size() == positions.size() && positions.allFinite() &&
           velocities.allFinite() && efforts.allFinite();
  }
};

/// Position plus unit quaternion, expressed in the base frame.
/// Producers keep the quaternion normalized with w >= 0.
struct Pose
{
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  Eigen::Quaterniond orientation{Eigen::Quaterniond::Identity()};

  static Pose identity() { return Pose{}; }
};

struct Twist
{
  Eigen::Vector3d linear{Eigen::Vector3d::Zero()};
  Eigen::Vector3d angular{Eigen::Vector3d::Zero()};

  static Twist zero() { return Twist{}; }

  Vector6d vector() const
  {
    Vector6d v;
    v << linear, angular;
    return v;
  }

  static Twist from_vector(const Vector6d & v)
  {
    Twist t;
    t.linear = v.head<3>();
    t.angular = v.tail<3>();
    return t;
  }
};

struct Wrench
{
  Eigen::Vector3d force{Eigen::Vector3d::Zero()};
  Eigen::Vector3d torque{Eigen::Vector3d::Zero()};

  static Wrench zero() { return Wrench{}; }

  Vector6d vector() const
  {
    Vector6d v;
    v << force, torque;
    return v;
  }

  static Wrench from_vector(const Vector6d & v)
  {
    Wrench w;
    w.force = v.head<3>();
    w.torque = v.tail<3>();
    return w;
  }
};

/// Diagonal gain matrix stored as its diagonal. All controllers in this
/// project use decoupled per-axis gains.
struct DiagonalGains
{
  Eigen::VectorXd diagonal;

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd> & v) const
  {
    return diagonal.cwiseProduct(v);
  }
};

}  // namespace refchain::core
