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

#include <clocale>
#include <iostream>

#include <CLI11.hpp>

#include "refchain/cli/runner.hpp"
#include "refchain/cli/summarize.hpp"
#include "refchain/core/error.hpp"

namespace
{

// 0 success; 2 configuration, wiring or report errors; 3 fault stop;
// 4 I/O failures; 1 anything else.
int dispatch(const std::function<void()> & body)
{
  using namespace refchain;
  try {
    body();
    return 0;
  } catch (const FaultStop & e) {
    std::cerr << "fault stop at cycle " << e.cycle() << " (" << e.component()
              << "): " << e.what() << "\n";
    return 3;
  } catch (const IoError & e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const ConfigError & e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const WiringError & e) {
    std::cerr << "wiring error: " << e.what() << "\n";
    return 2;
  } catch (const ReportError & e) {
    std::cerr << "report error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput & e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int do_validate(const std::string & scenario_path)
{
  using namespace refchain;
  const cli::Scenario scenario = cli::load_scenario(scenario_path);
  auto plant = cli::make_plant(scenario.plant);
  chain::PlantInfo info;
  info.dof = plant->dof();
  info.command = plant->command_kind();
  chain::Pipeline pipeline =
    chain::Pipeline::build(scenario.pipeline, info, 1.0 / scenario.frequency_hz);

  // Push every event payload through the generator's validation envelope,
  // exactly as a live submission would be checked.
  auto inbox = pipeline.generator().inbox();
  size_t rejected = 0;
  for (size_t i = 0; i < scenario.events.size(); ++i) {
    const cli::EventSpec & event = scenario.events[i];
    std::optional<refgen::ResultCode> code;
    if (event.reference) {
      code = inbox->publish_reference(*event.reference);
    } else if (event.trajectory) {
      auto outcome = inbox->submit_trajectory(*event.trajectory);
      if (auto * rejection = std::get_if<refgen::ResultCode>(&outcome)) {
        code = *rejection;
      }
    }
    if (code) {
      ++rejected;
      std::cout << "event " << i << " (t=" << event.time
                << "): " << refgen::to_string(*code) << "\n";
    }
  }
  if (rejected > 0) {
    throw refchain::ConfigError(
      std::to_string(rejected) + " event payload(s) fail validation");
  }

  std::cout << "scenario '" << scenario.name << "' OK: " << scenario.pipeline.size()
            << " components, " << plant->dof() << " joints, " << scenario.events.size()
            << " events, " << pipeline.command_channels().size() << " command channels\n";
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  std::setlocale(LC_ALL, "C");

  CLI::App app{"refchain — chained reference/controller pipelines on simulated plants"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string log_override;
  bool stress = false;
  auto * run = app.add_subcommand("run", "Run a scenario to completion and print a summary");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--log", log_override, "Write the cycle log CSV to this path");
  run->add_flag(
    "--stress", stress,
    "Flood the intake with always-rejected inputs from a second thread while running");

  std::string log_path;
  std::string pairs;
  double from = -std::numeric_limits<double>::infinity();
  double to = std::numeric_limits<double>::infinity();
  auto * summarize =
    app.add_subcommand("summarize", "Compute error statistics between logged channels");
  summarize->add_option("log", log_path, "Cycle log CSV produced by 'run'")->required();
  summarize
    ->add_option(
      "--pairs", pairs,
      "Comma-separated '<ref>:<measured>' channel pairs; pose stems compare 7 columns")
    ->required();
  summarize->add_option("--from", from, "Ignore rows before this time");
  summarize->add_option("--to", to, "Ignore rows after this time");

  std::string validate_path;
  auto * validate =
    app.add_subcommand("validate", "Check a scenario without running the control loop");
  validate->add_option("scenario", validate_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) {
    return dispatch([&] {
      refchain::cli::RunOptions options;
      if (!log_override.empty()) {
        options.log_path = log_override;
      }
      options.stress = stress;
      const auto summary = refchain::cli::run_scenario_file(scenario_path, options);
      std::cout << refchain::cli::format_summary(summary);
    });
  }
  if (summarize->parsed()) {
    return dispatch([&] {
      const auto log = refchain::cli::read_log(log_path);
      const auto stats = refchain::cli::summarize_pairs(log, pairs, from, to);
      std::cout << refchain::cli::format_pair_stats(stats);
    });
  }
  return dispatch([&] { do_validate(validate_path); });
}
