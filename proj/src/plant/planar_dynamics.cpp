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

#include "refchain/plant/planar_dynamics.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "refchain/core/error.hpp"

namespace refchain::plant
{

namespace
{

// Cumulative joint angles: theta_j = q_0 + ... + q_j.
Eigen::VectorXd cumulative(const Eigen::Ref<const Eigen::VectorXd> & q)
{
  Eigen::VectorXd theta(q.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    acc += q[i];
    theta[i] = acc;
  }
  return theta;
}

}  // namespace

PlanarArmDynamics::PlanarArmDynamics(PlanarArmParams params) : params_(std::move(params))
{
  const Eigen::Index n = params_.link_lengths.size();
  if (n < 1) {
    throw ConfigError("planar dynamics: at least one link required");
  }
  if (params_.link_masses.size() != n || params_.viscous_friction.size() != n) {
    throw ConfigError("planar dynamics: lengths, masses and friction must have equal size");
  }
  if ((params_.link_lengths.array() <= 0.0).any() || (params_.link_masses.array() <= 0.0).any()) {
    throw ConfigError("planar dynamics: link lengths and masses must be positive");
  }
  if ((params_.viscous_friction.array() < 0.0).any()) {
    throw ConfigError("planar dynamics: friction coefficients must be non-negative");
  }
  if (!std::isfinite(params_.gravity)) {
    throw ConfigError("planar dynamics: gravity must be finite");
  }
  tail_mass_.resize(n);
  double acc = 0.0;
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    acc += params_.link_masses[j];
    tail_mass_[j] = acc;
  }
}

// B_ij = sum over mass points k >= max(i, j) of m_k * (dp_k/dq_i) . (dp_k/dq_j).
// With point masses at link tips this collapses to
//   B_ij = sum_{a >= i} sum_{b >= j} l_a l_b cos(theta_a - theta_b) * S_max(a,b)
// where S_c is the total mass carried at or beyond link c.
Eigen::MatrixXd PlanarArmDynamics::inertia(const Eigen::Ref<const Eigen::VectorXd> & q) const
{
  const Eigen::Index n = dof();
  const Eigen::VectorXd theta = cumulative(q);
  const Eigen::VectorXd & l = params_.link_lengths;

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double sum = 0.0;
      for (Eigen::Index a = i; a < n; ++a) {
        for (Eigen::Index bb = j; bb < n; ++bb) {
          sum += l[a] * l[bb] * std::cos(theta[a] - theta[bb]) * tail_mass_[std::max(a, bb)];
        }
      }
      b(i, j) = sum;
      b(j, i) = sum;
    }
  }
  return b;
}

Eigen::MatrixXd PlanarArmDynamics::inertia_partial(
  const Eigen::Ref<const Eigen::VectorXd> & q, Eigen::Index m) const
{
  const Eigen::Index n = dof();
  const Eigen::VectorXd theta = cumulative(q);
  const Eigen::VectorXd & l = params_.link_lengths;

  Eigen::MatrixXd db = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double sum = 0.0;
      for (Eigen::Index a = i; a < n; ++a) {
        for (Eigen::Index bb = j; bb < n; ++bb) {
          const int da = m <= a ? 1 : 0;
          const int dbb = m <= bb ? 1 : 0;
          if (da == dbb) {
            continue;  // theta_a - theta_b unaffected by q_m
          }
          sum -= l[a] * l[bb] * std::sin(theta[a] - theta[bb]) *
                 static_cast<double>(da - dbb) * tail_mass_[std::max(a, bb)];
        }
      }
      db(i, j) = sum;
    }
  }
  return db;
}

Eigen::MatrixXd PlanarArmDynamics::coriolis(
  const Eigen::Ref<const Eigen::VectorXd> & q,
  const Eigen::Ref<const Eigen::VectorXd> & qdot) const
{
  const Eigen::Index n = dof();
  std::vector<Eigen::MatrixXd> db(static_cast<size_t>(n));
  for (Eigen::Index m = 0; m < n; ++m) {
    db[static_cast<size_t>(m)] = inertia_partial(q, m);
  }

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double sum = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        const double christoffel =
          0.5 * (db[static_cast<size_t>(k)](i, j) + db[static_cast<size_t>(j)](i, k) -
                 db[static_cast<size_t>(i)](j, k));
        sum += christoffel * qdot[k];
      }
      c(i, j) = sum;
    }
  }
  return c;
}

Eigen::VectorXd PlanarArmDynamics::gravity_vec(const Eigen::Ref<const Eigen::VectorXd> & q) const
{
  const Eigen::Index n = dof();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (!params_.gravity_enabled) {
    return g;
  }
  const Eigen::VectorXd theta = cumulative(q);
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = i; j < n; ++j) {
      sum += params_.link_lengths[j] * std::cos(theta[j]) * tail_mass_[j];
    }
    g[i] = params_.gravity * sum;
  }
  return g;
}

Eigen::VectorXd PlanarArmDynamics::friction(const Eigen::Ref<const Eigen::VectorXd> & qdot) const
{
  return params_.viscous_friction.cwiseProduct(qdot);
}

double PlanarArmDynamics::potential(const Eigen::Ref<const Eigen::VectorXd> & q) const
{
  if (!params_.gravity_enabled) {
    return 0.0;
  }
  const Eigen::VectorXd theta = cumulative(q);
  double p = 0.0;
  for (Eigen::Index j = 0; j < dof(); ++j) {
    p += params_.link_lengths[j] * std::sin(theta[j]) * tail_mass_[j];
  }
  return params_.gravity * p;
}

double PlanarArmDynamics::energy(
  const Eigen::Ref<const Eigen::VectorXd> & q,
  const Eigen::Ref<const Eigen::VectorXd> & qdot) const
{
  return 0.5 * qdot.dot(inertia(q) * qdot) + potential(q);
}

Eigen::VectorXd PlanarArmDynamics::forward_dynamics(
  const Eigen::Ref<const Eigen::VectorXd> & q, const Eigen::Ref<const Eigen::VectorXd> & qdot,
  const Eigen::Ref<const Eigen::VectorXd> & tau) const
{
  const Eigen::VectorXd rhs = tau - coriolis(q, qdot) * qdot - friction(qdot) - gravity_vec(q);
  return inertia(q).ldlt().solve(rhs);
}

void PlanarArmDynamics::rk4_step(
  Eigen::VectorXd & q, Eigen::VectorXd & qdot, const Eigen::Ref<const Eigen::VectorXd> & tau,
  double dt) const
{
  const Eigen::VectorXd k1q = qdot;
  const Eigen::VectorXd k1v = forward_dynamics(q, qdot, tau);

  const Eigen::VectorXd k2q = qdot + 0.5 * dt * k1v;
  const Eigen::VectorXd k2v = forward_dynamics(q + 0.5 * dt * k1q, k2q, tau);

  const Eigen::VectorXd k3q = qdot + 0.5 * dt * k2v;
  const Eigen::VectorXd k3v = forward_dynamics(q + 0.5 * dt * k2q, k3q, tau);

  const Eigen::VectorXd k4q = qdot + dt * k3v;
  const Eigen::VectorXd k4v = forward_dynamics(q + dt * k3q, k4q, tau);

  q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
  qdot += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

}  // namespace refchain::plant
