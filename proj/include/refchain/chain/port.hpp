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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace refchain::chain
{

/// Output port of one chain component: an ordered set of named scalar
/// channels plus a generation counter. The layout is fixed when the pipeline
/// is built; afterwards only the owning component writes values, once per
/// cycle, and the pipeline bumps the generation after each write.
class Port
{
public:
  Port(const std::string & component, std::vector<std::string> quantities);

  /// Name of the component that owns (writes) this port.
  const std::string & component() const { return component_; }
  /// Channel names without the component prefix, e.g. "position/0".
  const std::vector<std::string> & quantities() const { return quantities_; }
  /// Fully qualified names, e.g. "jrg/position/0".
  const std::vector<std::string> & channel_names() const { return channel_names_; }

  Eigen::Index size() const { return values_.size(); }
  Eigen::VectorXd & values() { return values_; }
  const Eigen::VectorXd & values() const { return values_; }

  std::uint64_t generation() const { return generation_; }
  void bump_generation() { ++generation_; }

  /// Index of a quantity within this port, -1 if absent.
  Eigen::Index index_of(const std::string & quantity) const;

private:
  std::string component_;
  std::vector<std::string> quantities_;
  std::vector<std::string> channel_names_;
  Eigen::VectorXd values_;
  std::uint64_t generation_ = 0;
};

}  // namespace refchain::chain
