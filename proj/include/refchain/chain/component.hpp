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

#include <string>
#include <vector>

#include "refchain/chain/params.hpp"
#include "refchain/plant/plant.hpp"

namespace refchain::chain
{

enum class LifecycleState
{
  unconfigured,
  configured,
  active,
};

enum class ComponentKind
{
  reference_generator,
  controller,
};

/// What a component may know about the plant at configure time: joint count
/// and how the plant is commanded. Everything else arrives per cycle through
/// PlantObservation.
struct PlantInfo
{
  Eigen::Index dof = 0;
  plant::CommandKind command = plant::CommandKind::effort;
};

/// One stage of a control pipeline. Components are chained head to tail:
/// each consumes the named channels of its upstream neighbour and produces
/// its own output port. Lifecycle: UNCONFIGURED -> CONFIGURED (parameters
/// checked, layouts fixed) -> ACTIVE (state seeded from the plant) and back
/// to CONFIGURED on deactivation.
class Component
{
public:
  Component(std::string name, ComponentKind kind) : name_(std::move(name)), kind_(kind) {}
  virtual ~Component() = default;

  const std::string & name() const { return name_; }
  ComponentKind kind() const { return kind_; }
  LifecycleState lifecycle() const { return lifecycle_; }

  void configure(const ParamMap & params, const PlantInfo & plant);
  void activate(const plant::PlantObservation & observation);
  void deactivate();

  /// Input channels consumed, named without a component prefix
  /// ("position/0", "pose/qw", ...). Empty for reference generators.
  const std::vector<std::string> & input_quantities() const { return inputs_; }
  /// Output channels produced, in port order.
  const std::vector<std::string> & output_quantities() const { return outputs_; }

  /// One control cycle. `input` carries the upstream channels in
  /// input_quantities() order; the component writes every output channel.
  void update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output);

protected:
  virtual void do_configure(const ParamMap & params, const PlantInfo & plant) = 0;
  virtual void do_activate(const plant::PlantObservation & observation) = 0;
  virtual void do_deactivate() {}
  virtual void do_update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output) = 0;

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;

private:
  std::string name_;
  ComponentKind kind_;
  LifecycleState lifecycle_ = LifecycleState::unconfigured;
};

/// Channel-name helpers shared by components and the logger.
std::vector<std::string> joint_quantities(const std::string & stem, Eigen::Index dof);
std::vector<std::string> pose_quantities();
std::vector<std::string> twist_quantities();
std::vector<std::string> wrench_quantities();

}  // namespace refchain::chain
