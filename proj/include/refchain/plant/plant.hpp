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

#include <memory>
#include <optional>
#include <span>

#include "refchain/core/types.hpp"
#include "refchain/plant/kinematic_chain.hpp"
#include "refchain/plant/planar_dynamics.hpp"

namespace refchain::plant
{

enum class CommandKind
{
  effort,
  position,
};

/// Joint state of the simulated mechanism plus the simulated clock and the
/// last measured contact wrench.
struct PlantState
{
  core::JointState joints;
  double time = 0.0;
  core::Wrench measured_wrench;
};

/// Everything a pipeline component may read from the plant in one cycle:
/// joint state, tool pose and twist, the geometric Jacobian, the plant
/// model's gravity torque (zero for kinematic plants) and the measured
/// external wrench. Captured once per cycle so every component sees the same
/// snapshot.
struct PlantObservation
{
  core::JointState joints;
  core::Pose ee_pose;
  core::Twist ee_twist;
  core::Jacobian6 jacobian;
  Eigen::VectorXd gravity;
  core::Wrench wrench;
  double time = 0.0;
};

/// Simulated mechanism interface. Implementations advance their own state
/// under commands; controllers only ever see PlantObservation snapshots,
/// which is what keeps them robot-agnostic.
class Plant
{
public:
  virtual ~Plant() = default;

  virtual Eigen::Index dof() const = 0;
  virtual CommandKind command_kind() const = 0;
  virtual const KinematicChain & kinematics() const = 0;

  /// Advance the simulation by dt under the given command vector.
  /// Non-finite commands raise FaultStop without touching the state.
  virtual void apply_command(std::span<const double> command, double dt) = 0;

  const PlantState & state() const { return state_; }
  void set_measured_wrench(const core::Wrench & w) { state_.measured_wrench = w; }

  PlantObservation observe() const;

protected:
  virtual Eigen::VectorXd gravity_torque() const { return Eigen::VectorXd::Zero(dof()); }

  PlantState state_;
};

/// Planar arm with full Lagrangian dynamics, effort-commanded, integrated
/// with RK4 at the control period.
class DynamicArmPlant : public Plant
{
public:
  DynamicArmPlant(PlanarArmParams params, const Eigen::Ref<const Eigen::VectorXd> & initial_q);

  Eigen::Index dof() const override { return model_.dof(); }
  CommandKind command_kind() const override { return CommandKind::effort; }
  const KinematicChain & kinematics() const override { return chain_; }
  void apply_command(std::span<const double> command, double dt) override;

  const PlanarArmDynamics & model() const { return model_; }

  /// Constant joint-torque offset added to every command, for
  /// disturbance-rejection experiments.
  void set_external_torque(const Eigen::Ref<const Eigen::VectorXd> & tau);

protected:
  Eigen::VectorXd gravity_torque() const override
  {
    return model_.gravity_vec(state_.joints.positions);
  }

private:
  PlanarArmDynamics model_;
  KinematicChain chain_;
  Eigen::VectorXd external_torque_;
  Eigen::VectorXd scratch_tau_;
};

/// Position-commanded plant that follows commands exactly, subject to an
/// optional per-joint rate limit. Stands in for a velocity/position
/// controlled industrial arm whose inner loops are opaque.
class KinematicArmPlant : public Plant
{
public:
  KinematicArmPlant(KinematicChain chain, const Eigen::Ref<const Eigen::VectorXd> & initial_q,
                    std::optional<Eigen::VectorXd> rate_limit = std::nullopt);

  Eigen::Index dof() const override { return chain_.dof(); }
  CommandKind command_kind() const override { return CommandKind::position; }
  const KinematicChain & kinematics() const override { return chain_; }
  void apply_command(std::span<const double> command, double dt) override;

private:
  KinematicChain chain_;
  std::optional<Eigen::VectorXd> rate_limit_;
};

}  // namespace refchain::plant
