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
#include <string>
#include <vector>

#include "refchain/chain/component.hpp"
#include "refchain/chain/port.hpp"
#include "refchain/refgen/generators.hpp"

namespace refchain::chain
{

/// Declarative description of one pipeline stage. `type` selects the
/// implementation ("joint_reference_generator", "pid", ...), `params` must
/// be complete and valid for that type.
struct ComponentDescriptor
{
  std::string name;
  std::string type;
  ParamMap params;
};

/// An ordered chain: one reference generator followed by one or more
/// controllers, ending in channels that match how the plant is commanded.
/// Built once from descriptors, wired by channel name, stepped at a fixed
/// period on a simulated clock.
class Pipeline
{
public:
  /// Construct, configure and wire all components. Raises ConfigError for
  /// bad descriptors/parameters and WiringError for layout mismatches
  /// (wrong component order, unsatisfied input channel, command channels the
  /// last component does not produce).
  static Pipeline build(
    const std::vector<ComponentDescriptor> & descriptors, const PlantInfo & plant,
    double period);

  void activate(const plant::PlantObservation & observation);
  void deactivate();

  /// Run one cycle at simulated time t (must equal cycle() * period()).
  /// Every component updates in chain order against the same observation;
  /// the returned vector carries the plant command channels. Non-finite
  /// component output and singular kinematics surface as FaultStop with the
  /// cycle index frozen.
  const Eigen::VectorXd & step(double t, const plant::PlantObservation & observation);

  double period() const { return period_; }
  std::uint64_t cycle() const { return cycle_; }

  size_t size() const { return components_.size(); }
  Component & component(size_t i) { return *components_[i]; }
  const Port & port(size_t i) const { return ports_[i]; }
  const Port & port_of(const std::string & component_name) const;

  /// The generator heading this chain, for event injection.
  refgen::ReferenceGenerator & generator();

  /// Fully qualified channel names of the final command vector.
  const std::vector<std::string> & command_channels() const { return command_channels_; }

private:
  Pipeline() = default;

  double period_ = 0.0;
  std::uint64_t cycle_ = 0;
  std::vector<std::unique_ptr<Component>> components_;
  std::vector<Port> ports_;
  // For component i > 0: indices into port i-1, one per input quantity.
  std::vector<std::vector<Eigen::Index>> input_indices_;
  std::vector<Eigen::VectorXd> input_scratch_;
  std::vector<Eigen::Index> command_indices_;  // into the last port
  std::vector<std::string> command_channels_;
  Eigen::VectorXd command_;
};

}  // namespace refchain::chain
