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

#include "refchain/control/controllers.hpp"

#include <utility>

#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"
#include "refchain/refgen/generators.hpp"

namespace refchain::control
{

namespace
{

Eigen::VectorXd positive_gains(
  const chain::ParamMap & params, const std::string & component, const char * key,
  Eigen::Index size)
{
  Eigen::VectorXd v = params.vector(component, key, size);
  if ((v.array() <= 0.0).any() || !v.allFinite()) {
    throw ConfigError(component + ": parameter '" + key + "' must be strictly positive");
  }
  return v;
}

Eigen::VectorXd nonnegative_gains(
  const chain::ParamMap & params, const std::string & component, const char * key,
  Eigen::Index size)
{
  Eigen::VectorXd v = params.vector(component, key, size);
  if ((v.array() < 0.0).any() || !v.allFinite()) {
    throw ConfigError(component + ": parameter '" + key + "' must be non-negative");
  }
  return v;
}

std::vector<std::string> task_input_quantities(bool with_wrench)
{
  auto q = chain::pose_quantities();
  const auto tw = chain::twist_quantities();
  q.insert(q.end(), tw.begin(), tw.end());
  if (with_wrench) {
    const auto wr = chain::wrench_quantities();
    q.insert(q.end(), wr.begin(), wr.end());
  }
  return q;
}

}  // namespace

// --------------------------------------------------------------------------

GravityCompPdController::GravityCompPdController(std::string name)
: chain::Component(std::move(name), chain::ComponentKind::controller)
{
}

void GravityCompPdController::do_configure(
  const chain::ParamMap & params, const chain::PlantInfo & plant)
{
  params.require_known_keys(name(), {"kp", "kd"});
  dof_ = plant.dof;
  kp_.diagonal = positive_gains(params, name(), "kp", dof_);
  kd_.diagonal = positive_gains(params, name(), "kd", dof_);
  inputs_ = chain::joint_quantities("position", dof_);
  outputs_ = chain::joint_quantities("effort", dof_);
}

void GravityCompPdController::do_update(
  double /*t*/, double /*dt*/, const plant::PlantObservation & observation,
  Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output)
{
  output = kp_.apply(input - observation.joints.positions) -
           kd_.apply(observation.joints.velocities) + observation.gravity;
}

// --------------------------------------------------------------------------

JointPidController::JointPidController(std::string name)
: chain::Component(std::move(name), chain::ComponentKind::controller)
{
}

void JointPidController::do_configure(
  const chain::ParamMap & params, const chain::PlantInfo & plant)
{
  params.require_known_keys(name(), {"kp", "kd", "ki", "i_clamp"});
  dof_ = plant.dof;
  kp_.diagonal = positive_gains(params, name(), "kp", dof_);
  kd_.diagonal = nonnegative_gains(params, name(), "kd", dof_);
  ki_.diagonal = nonnegative_gains(params, name(), "ki", dof_);
  integral_clamp_ = positive_gains(params, name(), "i_clamp", dof_);

  inputs_ = chain::joint_quantities("position", dof_);
  const auto vel = chain::joint_quantities("velocity", dof_);
  inputs_.insert(inputs_.end(), vel.begin(), vel.end());
  outputs_ = chain::joint_quantities("effort", dof_);
}

void JointPidController::do_activate(const plant::PlantObservation &)
{
  integral_ = Eigen::VectorXd::Zero(dof_);
}

void JointPidController::do_update(
  double /*t*/, double dt, const plant::PlantObservation & observation,
  Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output)
{
  const auto q_des = input.head(dof_);
  const auto qd_des = input.segment(dof_, dof_);
  const Eigen::VectorXd error = q_des - observation.joints.positions;

  integral_ += error * dt;
  integral_ = integral_.cwiseMax(-integral_clamp_).cwiseMin(integral_clamp_);

  output = kp_.apply(error) + kd_.apply(qd_des - observation.joints.velocities) +
           ki_.apply(integral_);
}

// --------------------------------------------------------------------------

AdmittanceController::AdmittanceController(std::string name)
: chain::Component(std::move(name), chain::ComponentKind::controller)
{
}

void AdmittanceController::do_configure(
  const chain::ParamMap & params, const chain::PlantInfo & /*plant*/)
{
  params.require_known_keys(name(), {"mass", "damping", "stiffness"});
  mass_ = positive_gains(params, name(), "mass", 6);
  damping_ = nonnegative_gains(params, name(), "damping", 6);
  stiffness_ = nonnegative_gains(params, name(), "stiffness", 6);

  inputs_ = task_input_quantities(true);
  outputs_ = task_input_quantities(false);
}

void AdmittanceController::do_activate(const plant::PlantObservation &)
{
  deviation_.setZero();
  deviation_rate_.setZero();
}

void AdmittanceController::do_update(
  double /*t*/, double dt, const plant::PlantObservation & observation,
  Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output)
{
  const refgen::TaskReference desired = refgen::unpack_task_reference(input);
  const core::Vector6d h_desired = desired.wrench_or_zero().vector();
  const core::Vector6d h_measured = observation.wrench.vector();

  // Semi-implicit Euler: the rate updates first and the fresh rate advances
  // the deviation, which keeps the discrete oscillator stable at 1 kHz.
  const core::Vector6d acceleration =
    (h_desired - h_measured - damping_.cwiseProduct(deviation_rate_) -
     stiffness_.cwiseProduct(deviation_))
      .cwiseQuotient(mass_);
  deviation_rate_ += acceleration * dt;
  deviation_ += deviation_rate_ * dt;

  refgen::TaskReference compliant;
  compliant.pose.position = desired.pose.position - deviation_.head<3>();
  // A pure pass-through must stay bit-exact, so skip the rotation composition
  // when the angular deviation is identically zero.
  if (deviation_.tail<3>().isZero(0.0)) {
    compliant.pose.orientation = desired.pose.orientation;
  } else {
    compliant.pose.orientation = core::canonicalize(
      core::exp_map(-deviation_.tail<3>()) * desired.pose.orientation);
  }
  compliant.twist = core::Twist::from_vector(desired.twist_or_zero().vector() - deviation_rate_);

  output.head(3) = compliant.pose.position;
  output[3] = compliant.pose.orientation.w();
  output[4] = compliant.pose.orientation.x();
  output[5] = compliant.pose.orientation.y();
  output[6] = compliant.pose.orientation.z();
  output.segment<6>(7) = compliant.twist->vector();
}

// --------------------------------------------------------------------------

CartesianPoseController::CartesianPoseController(std::string name)
: chain::Component(std::move(name), chain::ComponentKind::controller)
{
}

void CartesianPoseController::do_configure(
  const chain::ParamMap & params, const chain::PlantInfo & plant)
{
  params.require_known_keys(name(), {"kp", "dls_lambda"});
  dof_ = plant.dof;
  kp_.diagonal = positive_gains(params, name(), "kp", 6);
  dls_lambda_ = params.scalar_or(name(), "dls_lambda", 0.0);
  if (!(dls_lambda_ >= 0.0)) {
    throw ConfigError(name() + ": parameter 'dls_lambda' must be non-negative");
  }

  inputs_ = task_input_quantities(false);
  outputs_ = chain::joint_quantities("position", dof_);
  const auto vel = chain::joint_quantities("velocity", dof_);
  outputs_.insert(outputs_.end(), vel.begin(), vel.end());
}

void CartesianPoseController::do_activate(const plant::PlantObservation & observation)
{
  q_cmd_ = observation.joints.positions;
}

void CartesianPoseController::do_update(
  double /*t*/, double dt, const plant::PlantObservation & observation,
  Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output)
{
  const refgen::TaskReference desired = refgen::unpack_task_reference(input);

  core::Pose desired_pose;
  desired_pose.position = desired.pose.position;
  desired_pose.orientation = core::canonicalize(desired.pose.orientation);

  const core::Vector6d u = kp_.apply(core::pose_error(desired_pose, observation.ee_pose)) +
                           desired.twist_or_zero().vector();
  const Eigen::VectorXd qd_cmd = core::dls_pinv(observation.jacobian, dls_lambda_) * u;

  q_cmd_ += qd_cmd * dt;
  output.head(dof_) = q_cmd_;
  output.segment(dof_, dof_) = qd_cmd;
}

}  // namespace refchain::control
