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

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "refchain/cli/runner.hpp"

namespace refchain::cli
{

/// A run log loaded back from CSV: column names (first is always "time")
/// and one vector per column.
struct LogData
{
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // values[c][row]

  std::size_t rows() const { return values.empty() ? 0 : values.front().size(); }
  /// Column index by exact name, -1 if absent.
  long column(const std::string & name) const;
};

LogData read_log(const std::filesystem::path & path);

/// One comparison between a reference channel (or pose stem) and a measured
/// one. Pose stems ("trg/pose" vs "plant/pose") expand into a position-norm
/// metric and an orientation-angle metric.
struct PairStat
{
  std::string label;
  ErrorStat stat;
};

/// `pairs_spec` is "a:b[,c:d...]"; each side is either a scalar column name
/// or a pose stem (a name for which "<stem>/x".."<stem>/qz" columns exist).
/// Rows outside [from, to] (on the time column) are ignored. Unknown
/// channels and malformed specs raise ReportError.
std::vector<PairStat> summarize_pairs(
  const LogData & log, const std::string & pairs_spec,
  double from = -std::numeric_limits<double>::infinity(),
  double to = std::numeric_limits<double>::infinity());

std::string format_pair_stats(const std::vector<PairStat> & stats);

}  // namespace refchain::cli
