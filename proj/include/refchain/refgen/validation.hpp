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

#include <optional>

#include "refchain/refgen/reference.hpp"

namespace refchain::refgen
{

/// Hook fired at the entry of every validation call, so tests can prove
/// which threads pay for validation. Never used for control flow.
using ValidationProbe = void (*)();
void set_validation_probe(ValidationProbe probe);

/// Full admission check for a single reference. Checks run in a fixed order:
/// dimension, then finiteness, then limits; the first violation wins.
/// Returns nullopt when the reference is acceptable. Never throws.
std::optional<ResultCode> validate_reference(
  const ReferenceSample & reference, const Limits & limits, Eigen::Index expected_dim);

/// Trajectory admission: every waypoint must pass validate_reference, the
/// timestamps must start at t >= 0 and strictly increase, and task segments
/// must respect the Cartesian speed cap. First failure wins. Never throws.
std::optional<ResultCode> validate_trajectory(
  const Trajectory & trajectory, const Limits & limits, Eigen::Index expected_dim);

}  // namespace refchain::refgen
