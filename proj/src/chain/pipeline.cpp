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

#include "refchain/chain/pipeline.hpp"

#include <cmath>
#include <utility>

#include "refchain/control/controllers.hpp"
#include "refchain/core/error.hpp"

namespace refchain::chain
{

namespace
{

std::unique_ptr<Component> make_component(const ComponentDescriptor & d)
{
  if (d.type == "joint_reference_generator") {
    return std::make_unique<refgen::JointReferenceGenerator>(d.name);
  }
  if (d.type == "task_reference_generator") {
    return std::make_unique<refgen::TaskReferenceGenerator>(d.name);
  }
  if (d.type == "pd_gravity_compensation") {
    return std::make_unique<control::GravityCompPdController>(d.name);
  }
  if (d.type == "pid") {
    return std::make_unique<control::JointPidController>(d.name);
  }
  if (d.type == "admittance") {
    return std::make_unique<control::AdmittanceController>(d.name);
  }
  if (d.type == "cartesian_pose") {
    return std::make_unique<control::CartesianPoseController>(d.name);
  }
  throw ConfigError(d.name + ": unknown component type '" + d.type + "'");
}

}  // namespace

Pipeline Pipeline::build(
  const std::vector<ComponentDescriptor> & descriptors, const PlantInfo & plant, double period)
{
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("pipeline: period must be positive and finite");
  }
  if (descriptors.empty()) {
    throw ConfigError("pipeline: at least one component is required");
  }

  Pipeline p;
  p.period_ = period;
  for (const auto & d : descriptors) {
    auto c = make_component(d);
    c->configure(d.params, plant);
    p.components_.push_back(std::move(c));
  }

  if (p.components_.front()->kind() != ComponentKind::reference_generator) {
    throw WiringError(
      p.components_.front()->name() + ": the first component must be a reference generator");
  }
  for (size_t i = 1; i < p.components_.size(); ++i) {
    if (p.components_[i]->kind() != ComponentKind::reference_generator) {
      continue;
    }
    throw WiringError(
      p.components_[i]->name() + ": reference generators can only head a chain");
  }

  // One output port per component; downstream inputs resolve against the
  // immediately preceding port by quantity name. Extra upstream channels are
  // legal (a consumer takes the subset it declares).
  p.input_indices_.resize(p.components_.size());
  p.input_scratch_.resize(p.components_.size());
  for (size_t i = 0; i < p.components_.size(); ++i) {
    const Component & c = *p.components_[i];
    p.ports_.emplace_back(c.name(), c.output_quantities());
    if (i == 0) {
      if (!c.input_quantities().empty()) {
        throw WiringError(c.name() + ": a reference generator cannot declare inputs");
      }
      continue;
    }
    const Port & upstream = p.ports_[i - 1];
    auto & indices = p.input_indices_[i];
    for (const auto & quantity : c.input_quantities()) {
      const Eigen::Index at = upstream.index_of(quantity);
      if (at < 0) {
        throw WiringError(
          c.name() + ": input channel '" + quantity + "' is not produced by '" +
          upstream.component() + "'");
      }
      indices.push_back(at);
    }
    p.input_scratch_[i].setZero(static_cast<Eigen::Index>(indices.size()));
  }

  // The plant consumes either efforts or positions; those channels must all
  // be present on the last port.
  const Port & last = p.ports_.back();
  const std::string stem =
    plant.command == plant::CommandKind::effort ? "effort" : "position";
  for (Eigen::Index j = 0; j < plant.dof; ++j) {
    const std::string quantity = stem + "/" + std::to_string(j);
    const Eigen::Index at = last.index_of(quantity);
    if (at < 0) {
      throw WiringError(
        "plant: command channel '" + quantity + "' is not produced by '" + last.component() +
        "'");
    }
    p.command_indices_.push_back(at);
    p.command_channels_.push_back(last.component() + "/" + quantity);
  }
  p.command_.setZero(plant.dof);
  return p;
}

void Pipeline::activate(const plant::PlantObservation & observation)
{
  for (auto & c : components_) {
    c->activate(observation);
  }
  cycle_ = 0;
}

void Pipeline::deactivate()
{
  // Reverse order: the generator resolves outstanding goals last, after the
  // controllers have already stopped consuming its port.
  for (auto it = components_.rbegin(); it != components_.rend(); ++it) {
    (*it)->deactivate();
  }
}

const Eigen::VectorXd & Pipeline::step(double t, const plant::PlantObservation & observation)
{
  const double expected = static_cast<double>(cycle_) * period_;
  if (std::abs(t - expected) > 1e-9 * std::max(1.0, expected)) {
    throw CycleOrderError(
      "pipeline: step at t=" + std::to_string(t) + " but cycle " + std::to_string(cycle_) +
      " expects t=" + std::to_string(expected));
  }

  for (size_t i = 0; i < components_.size(); ++i) {
    Component & c = *components_[i];
    if (i > 0) {
      const Eigen::VectorXd & upstream = ports_[i - 1].values();
      auto & in = input_scratch_[i];
      const auto & indices = input_indices_[i];
      for (size_t k = 0; k < indices.size(); ++k) {
        in[static_cast<Eigen::Index>(k)] = upstream[indices[k]];
      }
    }
    Eigen::VectorXd & out = ports_[i].values();
    try {
      c.update(t, period_, observation, input_scratch_[i], out);
    } catch (const SingularMatrix & e) {
      throw FaultStop(std::string(e.what()), cycle_, c.name());
    }
    if (!out.allFinite()) {
      throw FaultStop("component produced a non-finite output", cycle_, c.name());
    }
    ports_[i].bump_generation();
  }

  const Eigen::VectorXd & last = ports_.back().values();
  for (size_t k = 0; k < command_indices_.size(); ++k) {
    command_[static_cast<Eigen::Index>(k)] = last[command_indices_[k]];
  }
  ++cycle_;
  return command_;
}

const Port & Pipeline::port_of(const std::string & component_name) const
{
  for (size_t i = 0; i < components_.size(); ++i) {
    if (components_[i]->name() == component_name) {
      return ports_[i];
    }
  }
  throw ConfigError("pipeline: no component named '" + component_name + "'");
}

refgen::ReferenceGenerator & Pipeline::generator()
{
  return dynamic_cast<refgen::ReferenceGenerator &>(*components_.front());
}

}  // namespace refchain::chain
