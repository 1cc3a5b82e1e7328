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

#include "refchain/refgen/reference.hpp"

namespace refchain::refgen
{

struct JointSample
{
  JointReference reference;
  bool finished = false;
};

struct TaskSample
{
  TaskReference reference;
  bool finished = false;
};

/// Piecewise-linear sampling of a joint trajectory at `elapsed` seconds past
/// the acceptance cycle. Before the first waypoint the first position is held
/// with zero velocity; past the last waypoint the final position is held with
/// zero velocity and the sample reports finished. Between waypoints the
/// velocity is the segment slope — stored waypoint velocities take part in
/// validation but not in sampling.
JointSample interpolate_joint(const Trajectory & trajectory, double elapsed);

/// Task-space counterpart: positions interpolate linearly, orientations
/// along the shortest arc, the twist is the finite-difference segment rate
/// and the wrench interpolates linearly. Hold semantics at the ends mirror
/// interpolate_joint (zero twist, endpoint wrench).
TaskSample interpolate_task(const Trajectory & trajectory, double elapsed);

}  // namespace refchain::refgen
