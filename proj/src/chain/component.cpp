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

#include "refchain/chain/component.hpp"

#include "refchain/core/error.hpp"

namespace refchain::chain
{

void Component::configure(const ParamMap & params, const PlantInfo & plant)
{
  if (lifecycle_ == LifecycleState::active) {
    throw ConfigError(name_ + ": cannot configure while active");
  }
  inputs_.clear();
  outputs_.clear();
  do_configure(params, plant);
  lifecycle_ = LifecycleState::configured;
}

void Component::activate(const plant::PlantObservation & observation)
{
  if (lifecycle_ != LifecycleState::configured) {
    throw ConfigError(name_ + ": activate requires the configured state");
  }
  do_activate(observation);
  lifecycle_ = LifecycleState::active;
}

void Component::deactivate()
{
  if (lifecycle_ != LifecycleState::active) {
    return;
  }
  do_deactivate();
  lifecycle_ = LifecycleState::configured;
}

void Component::update(
  double t, double dt, const plant::PlantObservation & observation,
  Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output)
{
  if (lifecycle_ != LifecycleState::active) {
    throw ConfigError(name_ + ": update requires the active state");
  }
  do_update(t, dt, observation, input, output);
}

std::vector<std::string> joint_quantities(const std::string & stem, Eigen::Index dof)
{
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(dof));
  for (Eigen::Index i = 0; i < dof; ++i) {
    out.push_back(stem + "/" + std::to_string(i));
  }
  return out;
}

std::vector<std::string> pose_quantities()
{
  return {"pose/x", "pose/y", "pose/z", "pose/qw", "pose/qx", "pose/qy", "pose/qz"};
}

std::vector<std::string> twist_quantities()
{
  return {"twist/vx", "twist/vy", "twist/vz", "twist/wx", "twist/wy", "twist/wz"};
}

std::vector<std::string> wrench_quantities()
{
  return {"wrench/fx", "wrench/fy", "wrench/fz", "wrench/tx", "wrench/ty", "wrench/tz"};
}

}  // namespace refchain::chain
