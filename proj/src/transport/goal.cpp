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

#include "refchain/transport/goal.hpp"

#include "refchain/core/error.hpp"

namespace refchain::transport
{

GoalStatus GoalRecord::status() const
{
  const int s = status_.load(std::memory_order_acquire);
  if (s == kPending) {
    return GoalStatus::pending;
  }
  if (s == kExecuting) {
    return GoalStatus::executing;
  }
  return GoalStatus::terminal;
}

std::optional<refgen::ResultCode> GoalRecord::result() const
{
  const int s = status_.load(std::memory_order_acquire);
  if (s < kTerminalBase) {
    return std::nullopt;
  }
  return static_cast<refgen::ResultCode>(s - kTerminalBase);
}

void GoalRecord::mark_executing()
{
  int expected = kPending;
  status_.compare_exchange_strong(expected, kExecuting, std::memory_order_acq_rel);
}

void GoalRecord::resolve(refgen::ResultCode code)
{
  const int terminal = kTerminalBase + static_cast<int>(code);
  int current = status_.load(std::memory_order_acquire);
  while (current < kTerminalBase) {
    if (status_.compare_exchange_weak(current, terminal, std::memory_order_acq_rel)) {
      return;
    }
  }
  throw ProtocolError("goal already resolved");
}

}  // namespace refchain::transport
