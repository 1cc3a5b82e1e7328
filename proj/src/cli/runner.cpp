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

#include "refchain/cli/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"

namespace refchain::cli
{

namespace
{

/// CSV writer: fixed column set decided up front, every value rendered with
/// "%.17g" so doubles survive a write/read round trip bit-exactly and two
/// identical runs produce identical bytes.
class CycleLogger
{
public:
  CycleLogger(const std::string & path, std::vector<std::string> columns)
  : out_(path, std::ios::binary), columns_(std::move(columns))
  {
    if (!out_) {
      throw IoError("cannot open log file '" + path + "' for writing");
    }
    out_ << "time";
    for (const auto & c : columns_) {
      out_ << ',' << c;
    }
    out_ << '\n';
  }

  void row(double time, const std::vector<double> & values)
  {
    append(time);
    for (double v : values) {
      line_ += ',';
      append(v);
    }
    line_ += '\n';
    out_ << line_;
    line_.clear();
  }

  void close()
  {
    out_.close();
    if (!out_) {
      throw IoError("failed writing log file");
    }
  }

private:
  void append(double v)
  {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line_ += buf;
  }

  std::ofstream out_;
  std::vector<std::string> columns_;
  std::string line_;
};

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

/// Background flood of inputs that always fail validation (wrong reference
/// dimension), so the ingress paths run hot while accepted traffic — and
/// therefore the logged trajectory — is untouched.
class StressInjector
{
public:
  explicit StressInjector(const std::shared_ptr<transport::Inbox> & inbox, Eigen::Index dof)
  {
    refgen::JointReference bad;
    bad.positions = Eigen::VectorXd::Zero(dof + 1);
    thread_ = std::thread([this, inbox, bad] {
      while (!stop_.load(std::memory_order_relaxed)) {
        (void)inbox->publish_reference(bad);
        attempts_.fetch_add(1, std::memory_order_relaxed);
        std::this_thread::yield();
      }
    });
    // A short run could otherwise finish before the scheduler ever gives the
    // flood a slice; don't start the control loop until it is live.
    while (attempts_.load(std::memory_order_relaxed) == 0) {
      std::this_thread::yield();
    }
  }

  std::uint64_t stop()
  {
    stop_.store(true, std::memory_order_relaxed);
    if (thread_.joinable()) {
      thread_.join();
    }
    return attempts_.load(std::memory_order_relaxed);
  }

  ~StressInjector()
  {
    stop_.store(true, std::memory_order_relaxed);
    if (thread_.joinable()) {
      thread_.join();
    }
  }

private:
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> attempts_{0};
  std::thread thread_;
};

std::vector<std::string> log_columns(const chain::Pipeline & pipeline, Eigen::Index dof)
{
  std::vector<std::string> columns;
  for (size_t i = 0; i < pipeline.size(); ++i) {
    const auto & names = pipeline.port(i).channel_names();
    columns.insert(columns.end(), names.begin(), names.end());
  }
  for (const char * stem : {"position", "velocity", "effort"}) {
    for (Eigen::Index j = 0; j < dof; ++j) {
      columns.push_back(std::string("plant/") + stem + "/" + std::to_string(j));
    }
  }
  for (const auto & q : chain::pose_quantities()) {
    columns.push_back("plant/" + q);
  }
  for (const auto & q : chain::twist_quantities()) {
    columns.push_back("plant/" + q);
  }
  for (const auto & q : chain::wrench_quantities()) {
    columns.push_back("plant/" + q);
  }
  return columns;
}

void append_vec(std::vector<double> & row, const Eigen::Ref<const Eigen::VectorXd> & v)
{
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    row.push_back(v[i]);
  }
}

}  // namespace

RunSummary run_scenario(const Scenario & scenario, const RunOptions & options)
{
  RunSummary summary;
  summary.scenario = scenario.name;

  auto plant = make_plant(scenario.plant);
  const Eigen::Index dof = plant->dof();
  const double dt = 1.0 / scenario.frequency_hz;
  const auto cycles = static_cast<std::uint64_t>(
    std::llround(scenario.duration_s * scenario.frequency_hz));

  chain::PlantInfo info;
  info.dof = dof;
  info.command = plant->command_kind();
  chain::Pipeline pipeline = chain::Pipeline::build(scenario.pipeline, info, dt);
  pipeline.activate(plant->observe());

  std::string log_path = options.log_path ? *options.log_path : scenario.default_log;
  std::optional<CycleLogger> logger;
  if (!log_path.empty()) {
    logger.emplace(log_path, log_columns(pipeline, dof));
  }

  const bool joint_chain = scenario.pipeline.front().type == "joint_reference_generator";
  StatAccumulator joint_err;
  StatAccumulator position_err;
  StatAccumulator orientation_err;

  std::vector<std::pair<transport::GoalHandle, double>> goal_handles;  // handle, submit time
  std::optional<StressInjector> stressor;
  if (options.stress) {
    stressor.emplace(pipeline.generator().inbox(), dof);
  }

  size_t next_event = 0;
  std::vector<double> row;
  for (std::uint64_t cycle = 0; cycle < cycles; ++cycle) {
    const double t = static_cast<double>(cycle) * dt;

    while (next_event < scenario.events.size() &&
           scenario.events[next_event].time <= t + dt * 1e-6) {
      const EventSpec & event = scenario.events[next_event];
      if (event.reference) {
        const auto rejection = pipeline.generator().inbox()->publish_reference(*event.reference);
        if (rejection) {
          summary.rejected_events.push_back(
            "t=" + std::to_string(event.time) +
            " publish_reference: " + refgen::to_string(*rejection));
        }
      } else if (event.trajectory) {
        auto outcome = pipeline.generator().inbox()->submit_trajectory(*event.trajectory);
        if (auto * handle = std::get_if<transport::GoalHandle>(&outcome)) {
          goal_handles.emplace_back(*handle, event.time);
        } else {
          summary.rejected_events.push_back(
            "t=" + std::to_string(event.time) + " submit_trajectory: " +
            refgen::to_string(std::get<refgen::ResultCode>(outcome)));
        }
      }
      ++next_event;
    }

    const plant::PlantObservation obs = plant->observe();
    const Eigen::VectorXd & command = pipeline.step(t, obs);

    const Eigen::VectorXd & reference = pipeline.port(0).values();
    if (joint_chain) {
      joint_err.add((reference.head(dof) - obs.joints.positions).cwiseAbs().maxCoeff());
    } else {
      position_err.add((reference.head<3>() - obs.ee_pose.position).norm());
      const Eigen::Quaterniond q_ref(reference[3], reference[4], reference[5], reference[6]);
      orientation_err.add(core::orientation_error(q_ref, obs.ee_pose.orientation).norm());
    }

    if (logger) {
      row.clear();
      for (size_t i = 0; i < pipeline.size(); ++i) {
        append_vec(row, pipeline.port(i).values());
      }
      append_vec(row, obs.joints.positions);
      append_vec(row, obs.joints.velocities);
      append_vec(row, obs.joints.efforts);
      row.push_back(obs.ee_pose.position.x());
      row.push_back(obs.ee_pose.position.y());
      row.push_back(obs.ee_pose.position.z());
      row.push_back(obs.ee_pose.orientation.w());
      row.push_back(obs.ee_pose.orientation.x());
      row.push_back(obs.ee_pose.orientation.y());
      row.push_back(obs.ee_pose.orientation.z());
      append_vec(row, obs.ee_twist.vector());
      append_vec(row, obs.wrench.vector());
      logger->row(t, row);
    }

    plant->apply_command({command.data(), static_cast<size_t>(command.size())}, dt);

    if (scenario.wall) {
      const plant::PlantObservation after = plant->observe();
      plant->set_measured_wrench(
        plant::wall_wrench(scenario.wall->wall, after.ee_pose, after.ee_twist));
    }
  }

  if (stressor) {
    summary.stress_attempts = stressor->stop();
    stressor.reset();
  }
  pipeline.deactivate();

  for (const auto & [handle, submit_time] : goal_handles) {
    const auto result = handle->result();
    if (!result) {
      throw ProtocolError(
        "goal " + std::to_string(handle->id()) + " not terminal after deactivation");
    }
    summary.goals.push_back(GoalOutcome{handle->id(), *result});
  }

  summary.cycles = cycles;
  if (joint_chain) {
    summary.tracking["joint_position_error"] = joint_err.finish();
  } else {
    summary.tracking["position_error"] = position_err.finish();
    summary.tracking["orientation_error"] = orientation_err.finish();
  }
  if (logger) {
    logger->close();
    summary.log_path = log_path;
  }
  return summary;
}

RunSummary run_scenario_file(const std::filesystem::path & path, const RunOptions & options)
{
  return run_scenario(load_scenario(path), options);
}

std::string format_summary(const RunSummary & summary)
{
  std::ostringstream out;
  out << "scenario: " << summary.scenario << "\n";
  out << "cycles: " << summary.cycles << "\n";
  if (!summary.log_path.empty()) {
    out << "log: " << summary.log_path << "\n";
  }
  for (const auto & goal : summary.goals) {
    out << "goal " << goal.id << ": " << refgen::to_string(goal.code) << "\n";
  }
  for (const auto & note : summary.rejected_events) {
    out << "rejected event: " << note << "\n";
  }
  char buf[160];
  for (const auto & [name, stat] : summary.tracking) {
    std::snprintf(
      buf, sizeof buf, "%s: max %.6g rms %.6g final %.6g\n", name.c_str(), stat.max_abs,
      stat.rms, stat.final_abs);
    out << buf;
  }
  if (summary.stress_attempts > 0) {
    out << "stress attempts: " << summary.stress_attempts << "\n";
  }
  return out.str();
}

}  // namespace refchain::cli
