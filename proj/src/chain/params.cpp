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

#include "refchain/chain/params.hpp"

#include <algorithm>
#include <utility>

#include "refchain/core/error.hpp"

namespace refchain::chain
{

void ParamMap::set(const std::string & key, double value)
{
  values_[key] = Eigen::VectorXd::Constant(1, value);
}

void ParamMap::set(const std::string & key, Eigen::VectorXd value)
{
  values_[key] = std::move(value);
}

void ParamMap::set(const std::string & key, std::initializer_list<double> values)
{
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) {
    v[i++] = x;
  }
  values_[key] = std::move(v);
}

bool ParamMap::has(const std::string & key) const { return values_.count(key) > 0; }

double ParamMap::scalar(const std::string & component, const std::string & key) const
{
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(component + ": missing parameter '" + key + "'");
  }
  if (it->second.size() != 1) {
    throw ConfigError(component + ": parameter '" + key + "' must be a scalar");
  }
  return it->second[0];
}

double ParamMap::scalar_or(
  const std::string & component, const std::string & key, double fallback) const
{
  return has(key) ? scalar(component, key) : fallback;
}

Eigen::VectorXd ParamMap::vector(
  const std::string & component, const std::string & key, Eigen::Index expected_size) const
{
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(component + ": missing parameter '" + key + "'");
  }
  if (it->second.size() != expected_size) {
    throw ConfigError(
      component + ": parameter '" + key + "' length " + std::to_string(it->second.size()) +
      ", expected " + std::to_string(expected_size));
  }
  return it->second;
}

std::optional<Eigen::VectorXd> ParamMap::maybe_vector(
  const std::string & component, const std::string & key, Eigen::Index expected_size) const
{
  if (!has(key)) {
    return std::nullopt;
  }
  return vector(component, key, expected_size);
}

void ParamMap::require_known_keys(
  const std::string & component, std::initializer_list<const char *> known) const
{
  for (const auto & [key, value] : values_) {
    const bool ok = std::any_of(
      known.begin(), known.end(), [&key](const char * k) { return key == k; });
    if (!ok) {
      throw ConfigError(component + ": unknown parameter '" + key + "'");
    }
  }
}

}  // namespace refchain::chain
