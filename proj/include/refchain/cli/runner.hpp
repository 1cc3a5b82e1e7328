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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refchain/cli/scenario.hpp"

namespace refchain::cli
{

struct RunOptions
{
  /// Overrides the scenario's own log path. Empty optional keeps the
  /// scenario default (which may itself be "no log").
  std::optional<std::string> log_path;
  /// Flood the generator's intake from a second thread with inputs that
  /// fail validation. Exercises the concurrent ingress paths without
  /// changing what the control loop computes, so logs stay reproducible.
  bool stress = false;
};

struct GoalOutcome
{
  std::uint64_t id = 0;
  refgen::ResultCode code = refgen::ResultCode::succeeded;
};

/// Running aggregate of one scalar error signal.
struct ErrorStat
{
  double max_abs = 0.0;
  double rms = 0.0;
  double final_abs = 0.0;
};

struct RunSummary
{
  std::string scenario;
  std::uint64_t cycles = 0;
  std::string log_path;  // empty when nothing was written
  std::vector<GoalOutcome> goals;
  /// Reference-tracking error statistics over the whole run, keyed by
  /// metric ("joint_position_error" for joint chains, "position_error" /
  /// "orientation_error" for task chains).
  std::map<std::string, ErrorStat> tracking;
  /// Scenario events whose payload was rejected at validation, as
  /// "t=<time> <kind>: <code>" lines. Normally empty.
  std::vector<std::string> rejected_events;
  std::uint64_t stress_attempts = 0;
};

/// Build plant and pipeline from the scenario, run the control loop for the
/// configured duration, fire the scenario's events, and deactivate. Raises
/// FaultStop/ConfigError/WiringError/IoError as the underlying layers do.
RunSummary run_scenario(const Scenario & scenario, const RunOptions & options);

/// Convenience: load_scenario + run_scenario.
RunSummary run_scenario_file(const std::filesystem::path & path, const RunOptions & options);

/// Render a human-readable report of a finished run.
std::string format_summary(const RunSummary & summary);

}  // namespace refchain::cli
