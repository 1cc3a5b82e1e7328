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

#include "refchain/plant/plant.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "refchain/core/error.hpp"

namespace refchain::plant
{

namespace
{

bool span_finite(std::span<const double> v)
{
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

PlantObservation Plant::observe() const
{
  PlantObservation obs;
  obs.joints = state_.joints;
  obs.ee_pose = kinematics().forward_kinematics(state_.joints.positions);
  obs.jacobian = kinematics().jacobian(state_.joints.positions);
  obs.ee_twist = core::Twist::from_vector(obs.jacobian * state_.joints.velocities);
  obs.gravity = gravity_torque();
  obs.wrench = state_.measured_wrench;
  obs.time = state_.time;
  return obs;
}

DynamicArmPlant::DynamicArmPlant(
  PlanarArmParams params, const Eigen::Ref<const Eigen::VectorXd> & initial_q)
: model_(std::move(params)), chain_(KinematicChain::planar(model_.params().link_lengths))
{
  if (initial_q.size() != model_.dof()) {
    throw ConfigError("dynamic plant: initial position dimension mismatch");
  }
  state_.joints = core::JointState::zero(model_.dof());
  state_.joints.positions = initial_q;
  external_torque_ = Eigen::VectorXd::Zero(model_.dof());
}

void DynamicArmPlant::set_external_torque(const Eigen::Ref<const Eigen::VectorXd> & tau)
{
  if (tau.size() != dof() || !tau.allFinite()) {
    throw InvalidInput("dynamic plant: external torque must be finite with matching dimension");
  }
  external_torque_ = tau;
}

void DynamicArmPlant::apply_command(std::span<const double> command, double dt)
{
  if (command.size() != static_cast<size_t>(dof()) || !span_finite(command)) {
    throw FaultStop("dynamic plant: non-finite or mis-sized effort command", 0, "plant");
  }
  scratch_tau_.resize(dof());
  for (Eigen::Index i = 0; i < dof(); ++i) {
    scratch_tau_[i] = command[static_cast<size_t>(i)];
  }
  state_.joints.efforts = scratch_tau_;
  scratch_tau_ += external_torque_;
  model_.rk4_step(state_.joints.positions, state_.joints.velocities, scratch_tau_, dt);
  state_.time += dt;
}

KinematicArmPlant::KinematicArmPlant(
  KinematicChain chain, const Eigen::Ref<const Eigen::VectorXd> & initial_q,
  std::optional<Eigen::VectorXd> rate_limit)
: chain_(std::move(chain)), rate_limit_(std::move(rate_limit))
{
  if (initial_q.size() != chain_.dof()) {
    throw ConfigError("kinematic plant: initial position dimension mismatch");
  }
  if (rate_limit_ &&
      (rate_limit_->size() != chain_.dof() || (rate_limit_->array() <= 0.0).any())) {
    throw ConfigError("kinematic plant: rate limit must be positive with matching dimension");
  }
  state_.joints = core::JointState::zero(chain_.dof());
  state_.joints.positions = initial_q;
}

void KinematicArmPlant::apply_command(std::span<const double> command, double dt)
{
  if (command.size() != static_cast<size_t>(dof()) || !span_finite(command)) {
    throw FaultStop("kinematic plant: non-finite or mis-sized position command", 0, "plant");
  }
  for (Eigen::Index i = 0; i < dof(); ++i) {
    double delta = command[static_cast<size_t>(i)] - state_.joints.positions[i];
    if (rate_limit_) {
      const double max_step = (*rate_limit_)[i] * dt;
      delta = std::clamp(delta, -max_step, max_step);
    }
    state_.joints.positions[i] += delta;
    state_.joints.velocities[i] = delta / dt;
  }
  state_.time += dt;
}

}  // namespace refchain::plant
