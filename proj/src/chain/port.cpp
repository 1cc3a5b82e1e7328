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

#include "refchain/chain/port.hpp"

#include <utility>

namespace refchain::chain
{

Port::Port(const std::string & component, std::vector<std::string> quantities)
: component_(component), quantities_(std::move(quantities))
{
  channel_names_.reserve(quantities_.size());
  for (const auto & q : quantities_) {
    channel_names_.push_back(component + "/" + q);
  }
  values_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(quantities_.size()));
}

Eigen::Index Port::index_of(const std::string & quantity) const
{
  for (size_t i = 0; i < quantities_.size(); ++i) {
    if (quantities_[i] == quantity) {
      return static_cast<Eigen::Index>(i);
    }
  }
  return -1;
}

}  // namespace refchain::chain
