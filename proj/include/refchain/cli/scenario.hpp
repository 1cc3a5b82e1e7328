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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refchain/chain/pipeline.hpp"
#include "refchain/plant/plant.hpp"
#include "refchain/plant/wall.hpp"
#include "refchain/refgen/reference.hpp"

namespace refchain::cli
{

/// Forgiving-to-read, strict-to-validate scenario description loaded from
/// JSON. Unknown keys are rejected everywhere so that a typo cannot
/// silently fall back to a default.
struct PlantSpec
{
  std::string type;  // "planar_dynamic" or "kinematic_chain"
  Eigen::VectorXd initial_positions;
  // planar_dynamic
  plant::PlanarArmParams arm;
  // kinematic_chain
  std::optional<plant::KinematicChain> chain;
  std::optional<Eigen::VectorXd> rate_limit;
};

struct WallSpec
{
  plant::VirtualWall wall;
};

/// One timed injection into the generator's inbox. Exactly one of the
/// payloads is set.
struct EventSpec
{
  double time = 0.0;
  std::optional<refgen::ReferenceSample> reference;
  std::optional<refgen::Trajectory> trajectory;
};

struct Scenario
{
  std::string name;
  double frequency_hz = 0.0;
  double duration_s = 0.0;
  PlantSpec plant;
  std::optional<WallSpec> wall;
  std::vector<chain::ComponentDescriptor> pipeline;
  std::vector<EventSpec> events;
  std::string default_log;           // relative to the working directory; may be empty
  std::filesystem::path source_dir;  // directory the scenario was loaded from
};

/// Parse a scenario file. Referenced trajectory and chain-geometry files are
/// resolved relative to the scenario file and loaded eagerly, so a returned
/// Scenario is self-contained. Raises ConfigError on any schema violation
/// and IoError when a file cannot be read.
Scenario load_scenario(const std::filesystem::path & path);

/// Parse a standalone trajectory file (same schema as inline trajectories).
refgen::Trajectory load_trajectory_file(const std::filesystem::path & path);

/// Parse a chain-geometry file: joint axes/origins plus a tool offset.
plant::KinematicChain load_chain_file(const std::filesystem::path & path);

/// Instantiate the simulated plant a scenario describes.
std::unique_ptr<plant::Plant> make_plant(const PlantSpec & spec);

}  // namespace refchain::cli
