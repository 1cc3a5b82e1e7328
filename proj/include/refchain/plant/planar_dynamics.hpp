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

namespace refchain::plant
{

struct PlanarArmParams
{
  Eigen::VectorXd link_lengths;
  Eigen::VectorXd link_masses;      // point masses at the link tips
  Eigen::VectorXd viscous_friction; // per-joint coefficients
  double gravity = 9.81;            // acting along -y of the plane
  bool gravity_enabled = true;
};

/// Closed-form Lagrangian dynamics of a planar N-link arm with point masses
/// at the link tips:
///
///   B(q) q̈ + C(q, q̇) q̇ + f(q̇) + g(q) = τ
///
/// The inertia matrix follows from the point-mass Jacobians, the Coriolis
/// matrix is assembled from the Christoffel symbols of B (all derivatives
/// analytic, no differencing), friction is viscous, gravity derives from the
/// potential of the masses.
class PlanarArmDynamics
{
public:
  explicit PlanarArmDynamics(PlanarArmParams params);

  Eigen::Index dof() const { return params_.link_lengths.size(); }
  const PlanarArmParams & params() const { return params_; }

  Eigen::MatrixXd inertia(const Eigen::Ref<const Eigen::VectorXd> & q) const;
  Eigen::MatrixXd coriolis(
    const Eigen::Ref<const Eigen::VectorXd> & q,
    const Eigen::Ref<const Eigen::VectorXd> & qdot) const;
  Eigen::VectorXd gravity_vec(const Eigen::Ref<const Eigen::VectorXd> & q) const;
  Eigen::VectorXd friction(const Eigen::Ref<const Eigen::VectorXd> & qdot) const;

  /// Gravitational potential energy; the reference level is y = 0.
  double potential(const Eigen::Ref<const Eigen::VectorXd> & q) const;
  /// Kinetic plus potential energy, for conservation checks.
  double energy(
    const Eigen::Ref<const Eigen::VectorXd> & q,
    const Eigen::Ref<const Eigen::VectorXd> & qdot) const;

  /// q̈ = B^{-1} (τ - C q̇ - f(q̇) - g(q))
  Eigen::VectorXd forward_dynamics(
    const Eigen::Ref<const Eigen::VectorXd> & q, const Eigen::Ref<const Eigen::VectorXd> & qdot,
    const Eigen::Ref<const Eigen::VectorXd> & tau) const;

  /// One classical RK4 step of (q, q̇) under zero-order-hold torque.
  void rk4_step(
    Eigen::VectorXd & q, Eigen::VectorXd & qdot, const Eigen::Ref<const Eigen::VectorXd> & tau,
    double dt) const;

private:
  // dB/dq_m, needed for the Christoffel symbols.
  Eigen::MatrixXd inertia_partial(
    const Eigen::Ref<const Eigen::VectorXd> & q, Eigen::Index m) const;

  PlanarArmParams params_;
  Eigen::VectorXd tail_mass_;  // tail_mass_[j] = sum of masses k >= j
};

}  // namespace refchain::plant
