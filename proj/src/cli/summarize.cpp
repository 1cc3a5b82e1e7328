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

#include "refchain/cli/summarize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <Eigen/Geometry>

#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"

namespace refchain::cli
{

namespace
{

std::vector<std::string> split(const std::string & s, char sep)
{
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    if (at == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

struct PoseColumns
{
  long x, y, z, qw, qx, qy, qz;
};

/// A side of a pair is either one scalar column or a pose stem.
struct Side
{
  std::string name;
  long scalar = -1;
  std::optional<PoseColumns> pose;
};

Side resolve_side(const LogData & log, const std::string & name)
{
  Side side;
  side.name = name;
  const long scalar = log.column(name);
  if (scalar >= 0) {
    side.scalar = scalar;
    return side;
  }
  PoseColumns p{
    log.column(name + "/x"),  log.column(name + "/y"),  log.column(name + "/z"),
    log.column(name + "/qw"), log.column(name + "/qx"), log.column(name + "/qy"),
    log.column(name + "/qz")};
  if (p.x >= 0 && p.y >= 0 && p.z >= 0 && p.qw >= 0 && p.qx >= 0 && p.qy >= 0 && p.qz >= 0) {
    side.pose = p;
    return side;
  }
  throw ReportError("no column or pose stem named '" + name + "' in the log");
}

class StatAccumulator
{
public:
  void add(double value)
  {
    const double a = std::abs(value);
    max_ = std::max(max_, a);
    sum_sq_ += value * value;
    last_ = a;
    ++n_;
  }

  bool empty() const { return n_ == 0; }

  ErrorStat finish() const
  {
    ErrorStat s;
    s.max_abs = max_;
    s.rms = n_ > 0 ? std::sqrt(sum_sq_ / static_cast<double>(n_)) : 0.0;
    s.final_abs = last_;
    return s;
  }

private:
  double max_ = 0.0;
  double sum_sq_ = 0.0;
  double last_ = 0.0;
  std::uint64_t n_ = 0;
};

}  // namespace

long LogData::column(const std::string & name) const
{
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return static_cast<long>(i);
    }
  }
  return -1;
}

LogData read_log(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open log '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ReportError("log '" + path.string() + "' is empty");
  }
  LogData log;
  log.columns = split(line, ',');
  if (log.columns.empty() || log.columns.front() != "time") {
    throw ReportError("log '" + path.string() + "' does not start with a time column");
  }
  log.values.resize(log.columns.size());

  size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) {
      continue;
    }
    const char * p = line.c_str();
    for (size_t c = 0; c < log.columns.size(); ++c) {
      char * end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) {
        throw ReportError(
          "log '" + path.string() + "' row " + std::to_string(row) + ": cannot parse column " +
          std::to_string(c));
      }
      log.values[c].push_back(v);
      p = end;
      if (*p == ',') {
        ++p;
      } else if (*p != '\0') {
        throw ReportError(
          "log '" + path.string() + "' row " + std::to_string(row) + ": malformed separator");
      }
    }
    if (*p != '\0') {
      throw ReportError(
        "log '" + path.string() + "' row " + std::to_string(row) + ": too many columns");
    }
  }
  return log;
}

std::vector<PairStat> summarize_pairs(
  const LogData & log, const std::string & pairs_spec, double from, double to)
{
  if (log.rows() == 0) {
    throw ReportError("log has no data rows");
  }
  std::vector<PairStat> out;
  for (const std::string & pair : split(pairs_spec, ',')) {
    const auto parts = split(pair, ':');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      throw ReportError("malformed pair '" + pair + "', expected '<ref>:<measured>'");
    }
    const Side a = resolve_side(log, parts[0]);
    const Side b = resolve_side(log, parts[1]);
    if (static_cast<bool>(a.pose) != static_cast<bool>(b.pose)) {
      throw ReportError(
        "pair '" + pair + "' mixes a pose stem with a scalar channel");
    }

    const std::vector<double> & time = log.values.front();
    if (a.pose) {
      StatAccumulator position;
      StatAccumulator orientation;
      for (size_t r = 0; r < log.rows(); ++r) {
        if (time[r] < from || time[r] > to) {
          continue;
        }
        const Eigen::Vector3d pa(
          log.values[a.pose->x][r], log.values[a.pose->y][r], log.values[a.pose->z][r]);
        const Eigen::Vector3d pb(
          log.values[b.pose->x][r], log.values[b.pose->y][r], log.values[b.pose->z][r]);
        position.add((pa - pb).norm());
        const Eigen::Quaterniond qa(
          log.values[a.pose->qw][r], log.values[a.pose->qx][r], log.values[a.pose->qy][r],
          log.values[a.pose->qz][r]);
        const Eigen::Quaterniond qb(
          log.values[b.pose->qw][r], log.values[b.pose->qx][r], log.values[b.pose->qy][r],
          log.values[b.pose->qz][r]);
        orientation.add(core::orientation_error(qa, qb).norm());
      }
      if (position.empty()) {
        throw ReportError("pair '" + pair + "': no rows in the requested time window");
      }
      out.push_back(PairStat{pair + " position", position.finish()});
      out.push_back(PairStat{pair + " orientation", orientation.finish()});
    } else {
      StatAccumulator stat;
      for (size_t r = 0; r < log.rows(); ++r) {
        if (time[r] < from || time[r] > to) {
          continue;
        }
        stat.add(log.values[a.scalar][r] - log.values[b.scalar][r]);
      }
      if (stat.empty()) {
        throw ReportError("pair '" + pair + "': no rows in the requested time window");
      }
      out.push_back(PairStat{pair, stat.finish()});
    }
  }
  return out;
}

std::string format_pair_stats(const std::vector<PairStat> & stats)
{
  std::ostringstream out;
  char buf[200];
  for (const auto & s : stats) {
    std::snprintf(
      buf, sizeof buf, "%s: max %.10g rms %.10g final %.10g\n", s.label.c_str(), s.stat.max_abs,
      s.stat.rms, s.stat.final_abs);
    out << buf;
  }
  return out.str();
}

}  // namespace refchain::cli
