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
#include <optional>
#include <variant>
#include <vector>

#include "refchain/refgen/reference.hpp"

namespace refchain::refgen
{

/// A reference generator is either forwarding the held online reference or
/// executing a timed trajectory. Nothing else.
enum class FsmState
{
  online_reference,
  trajectory_execution,
};

struct ActiveTrajectory
{
  Trajectory trajectory;
  std::uint64_t start_cycle = 0;  // acceptance cycle; waypoint times are relative to it
};

/// Complete generator state: mode, the reference held for online forwarding,
/// and the trajectory being executed, if any.
struct GeneratorState
{
  FsmState fsm = FsmState::online_reference;
  ReferenceSample held;
  std::optional<ActiveTrajectory> active;
};

struct TopicReferenceEvent
{
  ReferenceSample reference;
};

struct NewTrajectoryEvent
{
  Trajectory trajectory;
  std::uint64_t start_cycle = 0;
};

struct TrajectoryFinishedEvent
{
};

struct DeactivateEvent
{
};

using GeneratorEvent =
  std::variant<TopicReferenceEvent, NewTrajectoryEvent, TrajectoryFinishedEvent, DeactivateEvent>;

/// Terminal outcome emitted by a transition, to be delivered to the goal
/// handle carrying that trajectory id.
struct EmittedResult
{
  std::uint64_t trajectory_id = 0;
  ResultCode code = ResultCode::succeeded;
};

/// Pure transition function of the generator state machine. Mutates `state`
/// and returns the results emitted by this transition (at most one). Total:
/// every (state, event) pair is defined; events that do not apply in the
/// current state are ignored.
///
///   ONLINE + topic      -> hold the new reference
///   ONLINE + trajectory -> start executing it
///   EXEC   + topic      -> abort trajectory (ABORTED_BY_ONLINE_REFERENCE), hold topic value
///   EXEC   + trajectory -> abort current (ABORTED_BY_NEW_TRAJECTORY), start the new one
///   EXEC   + finished   -> SUCCEEDED, hold the final waypoint
///   any    + deactivate -> abort active trajectory (ABORTED_BY_DEACTIVATION), go ONLINE
std::vector<EmittedResult> fsm_transition(GeneratorState & state, const GeneratorEvent & event);

}  // namespace refchain::refgen
