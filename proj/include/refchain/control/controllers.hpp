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

#include "refchain/chain/component.hpp"
#include "refchain/core/types.hpp"

namespace refchain::control
{

/// Joint-space PD with exact gravity compensation:
///
///   τ = K_P (q_d - q) - K_D q̇ + g(q)
///
/// g(q) comes from the plant observation, so the law itself carries no robot
/// model. Consumes position references, produces efforts.
class GravityCompPdController : public chain::Component
{
public:
  explicit GravityCompPdController(std::string name);

protected:
  void do_configure(const chain::ParamMap & params, const chain::PlantInfo & plant) override;
  void do_activate(const plant::PlantObservation &) override {}
  void do_update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output) override;

private:
  Eigen::Index dof_ = 0;
  core::DiagonalGains kp_;
  core::DiagonalGains kd_;
};

/// Joint-space PID on position and velocity errors:
///
///   τ = K_P (q_d - q) + K_D (q̇_d - q̇) + K_I ∫(q_d - q) dt
///
/// The integral accumulates by the rectangle rule and is clamped elementwise
/// (anti-windup). Activation zeroes the accumulator.
class JointPidController : public chain::Component
{
public:
  explicit JointPidController(std::string name);

  const Eigen::VectorXd & integral() const { return integral_; }

protected:
  void do_configure(const chain::ParamMap & params, const chain::PlantInfo & plant) override;
  void do_activate(const plant::PlantObservation &) override;
  void do_update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output) override;

private:
  Eigen::Index dof_ = 0;
  core::DiagonalGains kp_;
  core::DiagonalGains kd_;
  core::DiagonalGains ki_;
  Eigen::VectorXd integral_clamp_;
  Eigen::VectorXd integral_;
};

/// Task-space admittance: maintains a deviation state x̃ driven by the gap
/// between commanded and measured wrench,
///
///   M_d x̃̈ + K_D x̃̇ + K_P x̃ = h_d - h_e
///
/// integrated with semi-implicit Euler, and emits the compliant reference
/// x_c = x_d - x̃ with twist v_c = v_d - x̃̇. With no contact and no
/// feedforward wrench the input passes through bit-exactly.
class AdmittanceController : public chain::Component
{
public:
  explicit AdmittanceController(std::string name);

  const core::Vector6d & deviation() const { return deviation_; }
  const core::Vector6d & deviation_rate() const { return deviation_rate_; }

protected:
  void do_configure(const chain::ParamMap & params, const chain::PlantInfo & plant) override;
  void do_activate(const plant::PlantObservation &) override;
  void do_update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output) override;

private:
  core::Vector6d mass_;
  core::Vector6d damping_;
  core::Vector6d stiffness_;
  core::Vector6d deviation_;
  core::Vector6d deviation_rate_;
};

/// Cartesian pose tracker: closes the loop on measured tool pose,
///
///   q̇_c = J†(q) (K_P e_pose + v_d),   J† damped least squares,
///
/// then integrates q̇_c into a joint position command. The integrator seeds
/// from the measured joint positions at activation, so engagement is
/// bumpless. Consumes pose+twist references, produces joint position and
/// velocity commands.
class CartesianPoseController : public chain::Component
{
public:
  explicit CartesianPoseController(std::string name);

  const Eigen::VectorXd & commanded_positions() const { return q_cmd_; }

protected:
  void do_configure(const chain::ParamMap & params, const chain::PlantInfo & plant) override;
  void do_activate(const plant::PlantObservation & observation) override;
  void do_update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output) override;

private:
  Eigen::Index dof_ = 0;
  core::DiagonalGains kp_;
  double dls_lambda_ = 0.0;
  Eigen::VectorXd q_cmd_;
};

}  // namespace refchain::control
