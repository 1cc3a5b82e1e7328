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

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace refchain::chain
{

/// Key -> numeric value(s) map carried by a component descriptor. Scalars are
/// stored as one-element vectors. Lookups that fail raise ConfigError naming
/// the component and the key, so misspelled or mis-sized scenario parameters
/// surface before anything runs.
class ParamMap
{
public:
  ParamMap() = default;

  void set(const std::string & key, double value);
  void set(const std::string & key, Eigen::VectorXd value);
  void set(const std::string & key, std::initializer_list<double> values);

  bool has(const std::string & key) const;

  double scalar(const std::string & component, const std::string & key) const;
  double scalar_or(const std::string & component, const std::string & key, double fallback) const;

  Eigen::VectorXd vector(
    const std::string & component, const std::string & key, Eigen::Index expected_size) const;
  std::optional<Eigen::VectorXd> maybe_vector(
    const std::string & component, const std::string & key, Eigen::Index expected_size) const;

  /// Reject any key outside `known`, naming the first offender.
  void require_known_keys(
    const std::string & component, std::initializer_list<const char *> known) const;

private:
  std::map<std::string, Eigen::VectorXd> values_;
};

}  // namespace refchain::chain
