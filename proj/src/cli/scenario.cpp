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

#include "refchain/cli/scenario.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "refchain/core/error.hpp"

namespace refchain::cli
{

namespace
{

using nlohmann::json;

json read_json(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error & e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void require_keys(
  const json & j, const std::string & where, std::initializer_list<const char *> required,
  std::initializer_list<const char *> optional = {})
{
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const char * key : required) {
    if (!j.contains(key)) {
      throw ConfigError(where + ": missing key '" + key + "'");
    }
  }
  std::set<std::string> known;
  for (const char * key : required) {
    known.insert(key);
  }
  for (const char * key : optional) {
    known.insert(key);
  }
  for (const auto & item : j.items()) {
    if (!known.count(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

double as_number(const json & j, const std::string & where)
{
  if (!j.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  return j.get<double>();
}

Eigen::VectorXd as_vector(const json & j, const std::string & where)
{
  if (!j.is_array()) {
    throw ConfigError(where + ": expected an array of numbers");
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto & item : j) {
    out[i++] = as_number(item, where);
  }
  return out;
}

Eigen::Vector3d as_vector3(const json & j, const std::string & where)
{
  const Eigen::VectorXd v = as_vector(j, where);
  if (v.size() != 3) {
    throw ConfigError(where + ": expected exactly 3 numbers");
  }
  return v;
}

core::Pose as_pose(const json & j, const std::string & where)
{
  const Eigen::VectorXd v = as_vector(j, where);
  if (v.size() != 7) {
    throw ConfigError(where + ": expected 7 numbers [x y z qw qx qy qz]");
  }
  core::Pose pose;
  pose.position = v.head<3>();
  pose.orientation = Eigen::Quaterniond(v[3], v[4], v[5], v[6]);
  return pose;
}

core::Twist as_twist(const json & j, const std::string & where)
{
  const Eigen::VectorXd v = as_vector(j, where);
  if (v.size() != 6) {
    throw ConfigError(where + ": expected 6 numbers [vx vy vz wx wy wz]");
  }
  core::Twist t;
  t.linear = v.head<3>();
  t.angular = v.tail<3>();
  return t;
}

core::Wrench as_wrench(const json & j, const std::string & where)
{
  const Eigen::VectorXd v = as_vector(j, where);
  if (v.size() != 6) {
    throw ConfigError(where + ": expected 6 numbers [fx fy fz tx ty tz]");
  }
  core::Wrench w;
  w.force = v.head<3>();
  w.torque = v.tail<3>();
  return w;
}

refgen::ReferenceSample parse_reference(const json & j, const std::string & where)
{
  if (j.contains("positions")) {
    require_keys(j, where, {"positions"}, {"velocities"});
    refgen::JointReference ref;
    ref.positions = as_vector(j["positions"], where + ".positions");
    if (j.contains("velocities")) {
      ref.velocities = as_vector(j["velocities"], where + ".velocities");
    }
    return ref;
  }
  if (j.contains("pose")) {
    require_keys(j, where, {"pose"}, {"twist", "wrench"});
    refgen::TaskReference ref;
    ref.pose = as_pose(j["pose"], where + ".pose");
    if (j.contains("twist")) {
      ref.twist = as_twist(j["twist"], where + ".twist");
    }
    if (j.contains("wrench")) {
      ref.wrench = as_wrench(j["wrench"], where + ".wrench");
    }
    return ref;
  }
  throw ConfigError(where + ": a reference needs either 'positions' or 'pose'");
}

refgen::Trajectory parse_trajectory(const json & j, const std::string & where)
{
  require_keys(j, where, {"variant", "waypoints"});
  const std::string variant = j["variant"].is_string() ? j["variant"].get<std::string>() : "";
  if (variant != "joint" && variant != "task") {
    throw ConfigError(where + ".variant: expected \"joint\" or \"task\"");
  }
  if (!j["waypoints"].is_array()) {
    throw ConfigError(where + ".waypoints: expected an array");
  }

  refgen::Trajectory trajectory;
  if (variant == "joint") {
    std::vector<refgen::JointWaypoint> points;
    size_t k = 0;
    for (const auto & wj : j["waypoints"]) {
      const std::string at = where + ".waypoints[" + std::to_string(k++) + "]";
      require_keys(wj, at, {"time", "positions"}, {"velocities"});
      refgen::JointWaypoint w;
      w.time = as_number(wj["time"], at + ".time");
      w.reference.positions = as_vector(wj["positions"], at + ".positions");
      if (wj.contains("velocities")) {
        w.reference.velocities = as_vector(wj["velocities"], at + ".velocities");
      }
      points.push_back(std::move(w));
    }
    trajectory.waypoints = std::move(points);
  } else {
    std::vector<refgen::TaskWaypoint> points;
    size_t k = 0;
    for (const auto & wj : j["waypoints"]) {
      const std::string at = where + ".waypoints[" + std::to_string(k++) + "]";
      require_keys(wj, at, {"time", "pose"}, {"twist", "wrench"});
      refgen::TaskWaypoint w;
      w.time = as_number(wj["time"], at + ".time");
      w.reference.pose = as_pose(wj["pose"], at + ".pose");
      if (wj.contains("twist")) {
        w.reference.twist = as_twist(wj["twist"], at + ".twist");
      }
      if (wj.contains("wrench")) {
        w.reference.wrench = as_wrench(wj["wrench"], at + ".wrench");
      }
      points.push_back(std::move(w));
    }
    trajectory.waypoints = std::move(points);
  }
  return trajectory;
}

chain::ParamMap parse_params(const json & j, const std::string & where)
{
  if (!j.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  chain::ParamMap params;
  for (const auto & item : j.items()) {
    const std::string at = where + "." + item.key();
    if (item.value().is_number()) {
      params.set(item.key(), item.value().get<double>());
    } else if (item.value().is_array()) {
      params.set(item.key(), as_vector(item.value(), at));
    } else {
      throw ConfigError(at + ": expected a number or an array of numbers");
    }
  }
  return params;
}

PlantSpec parse_plant(
  const json & j, const std::filesystem::path & dir, const std::string & where)
{
  PlantSpec spec;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ConfigError(where + ": expected an object with a string 'type'");
  }
  spec.type = j["type"].get<std::string>();
  if (spec.type == "planar_dynamic") {
    require_keys(
      j, where, {"type", "initial_positions", "link_lengths", "link_masses"},
      {"viscous_friction", "gravity", "gravity_enabled"});
    spec.initial_positions = as_vector(j["initial_positions"], where + ".initial_positions");
    spec.arm.link_lengths = as_vector(j["link_lengths"], where + ".link_lengths");
    spec.arm.link_masses = as_vector(j["link_masses"], where + ".link_masses");
    spec.arm.viscous_friction = j.contains("viscous_friction")
                                  ? as_vector(j["viscous_friction"], where + ".viscous_friction")
                                  : Eigen::VectorXd::Zero(spec.arm.link_lengths.size()).eval();
    if (j.contains("gravity")) {
      spec.arm.gravity = as_number(j["gravity"], where + ".gravity");
    }
    if (j.contains("gravity_enabled")) {
      if (!j["gravity_enabled"].is_boolean()) {
        throw ConfigError(where + ".gravity_enabled: expected a boolean");
      }
      spec.arm.gravity_enabled = j["gravity_enabled"].get<bool>();
    }
  } else if (spec.type == "kinematic_chain") {
    require_keys(j, where, {"type", "initial_positions", "chain_file"}, {"rate_limit"});
    spec.initial_positions = as_vector(j["initial_positions"], where + ".initial_positions");
    if (!j["chain_file"].is_string()) {
      throw ConfigError(where + ".chain_file: expected a path string");
    }
    spec.chain = load_chain_file(dir / j["chain_file"].get<std::string>());
    if (j.contains("rate_limit")) {
      spec.rate_limit = as_vector(j["rate_limit"], where + ".rate_limit");
    }
  } else {
    throw ConfigError(where + ".type: unknown plant type '" + spec.type + "'");
  }
  return spec;
}

}  // namespace

refgen::Trajectory load_trajectory_file(const std::filesystem::path & path)
{
  return parse_trajectory(read_json(path), path.filename().string());
}

plant::KinematicChain load_chain_file(const std::filesystem::path & path)
{
  const json j = read_json(path);
  const std::string where = path.filename().string();
  require_keys(j, where, {"joints", "tool"});
  if (!j["joints"].is_array() || j["joints"].empty()) {
    throw ConfigError(where + ".joints: expected a non-empty array");
  }
  std::vector<plant::ChainJoint> joints;
  size_t k = 0;
  for (const auto & jj : j["joints"]) {
    const std::string at = where + ".joints[" + std::to_string(k++) + "]";
    require_keys(jj, at, {"axis", "origin"});
    plant::ChainJoint joint;
    joint.axis = as_vector3(jj["axis"], at + ".axis");
    joint.origin = as_vector3(jj["origin"], at + ".origin");
    joints.push_back(joint);
  }
  return plant::KinematicChain(std::move(joints), as_vector3(j["tool"], where + ".tool"));
}

Scenario load_scenario(const std::filesystem::path & path)
{
  const json j = read_json(path);
  const std::string where = path.filename().string();
  require_keys(
    j, where, {"name", "frequency_hz", "duration_s", "plant", "pipeline"},
    {"wall", "events", "log"});

  Scenario s;
  s.source_dir = path.parent_path();
  if (!j["name"].is_string()) {
    throw ConfigError(where + ".name: expected a string");
  }
  s.name = j["name"].get<std::string>();
  s.frequency_hz = as_number(j["frequency_hz"], where + ".frequency_hz");
  s.duration_s = as_number(j["duration_s"], where + ".duration_s");
  if (!(s.frequency_hz > 0.0)) {
    throw ConfigError(where + ".frequency_hz: must be positive");
  }
  if (!(s.duration_s > 0.0)) {
    throw ConfigError(where + ".duration_s: must be positive");
  }

  s.plant = parse_plant(j["plant"], s.source_dir, where + ".plant");

  if (j.contains("wall")) {
    const json & wj = j["wall"];
    const std::string at = where + ".wall";
    require_keys(wj, at, {"point", "normal", "stiffness"}, {"damping"});
    WallSpec wall;
    wall.wall.plane_point = as_vector3(wj["point"], at + ".point");
    wall.wall.normal = as_vector3(wj["normal"], at + ".normal");
    const double norm = wall.wall.normal.norm();
    if (!(norm > 0.0) || !wall.wall.normal.allFinite()) {
      throw ConfigError(at + ".normal: must be a nonzero vector");
    }
    wall.wall.normal /= norm;
    wall.wall.stiffness = as_number(wj["stiffness"], at + ".stiffness");
    wall.wall.damping = wj.contains("damping") ? as_number(wj["damping"], at + ".damping") : 0.0;
    if (wall.wall.stiffness < 0.0 || wall.wall.damping < 0.0) {
      throw ConfigError(at + ": stiffness and damping must be non-negative");
    }
    s.wall = wall;
  }

  if (!j["pipeline"].is_array() || j["pipeline"].empty()) {
    throw ConfigError(where + ".pipeline: expected a non-empty array");
  }
  size_t k = 0;
  for (const auto & cj : j["pipeline"]) {
    const std::string at = where + ".pipeline[" + std::to_string(k++) + "]";
    require_keys(cj, at, {"name", "type"}, {"params"});
    if (!cj["name"].is_string() || !cj["type"].is_string()) {
      throw ConfigError(at + ": 'name' and 'type' must be strings");
    }
    chain::ComponentDescriptor d;
    d.name = cj["name"].get<std::string>();
    d.type = cj["type"].get<std::string>();
    if (cj.contains("params")) {
      d.params = parse_params(cj["params"], at + ".params");
    }
    s.pipeline.push_back(std::move(d));
  }

  if (j.contains("events")) {
    if (!j["events"].is_array()) {
      throw ConfigError(where + ".events: expected an array");
    }
    k = 0;
    for (const auto & ej : j["events"]) {
      const std::string at = where + ".events[" + std::to_string(k++) + "]";
      if (!ej.is_object() || !ej.contains("time")) {
        throw ConfigError(at + ": expected an object with a 'time'");
      }
      EventSpec event;
      event.time = as_number(ej["time"], at + ".time");
      const bool has_ref = ej.contains("publish_reference");
      const bool has_traj = ej.contains("submit_trajectory");
      if (has_ref == has_traj) {
        throw ConfigError(
          at + ": exactly one of 'publish_reference' or 'submit_trajectory' is required");
      }
      require_keys(ej, at, {"time"}, {"publish_reference", "submit_trajectory"});
      if (has_ref) {
        event.reference = parse_reference(ej["publish_reference"], at + ".publish_reference");
      } else {
        const json & tj = ej["submit_trajectory"];
        const std::string tat = at + ".submit_trajectory";
        if (tj.is_object() && tj.contains("file")) {
          require_keys(tj, tat, {"file"});
          if (!tj["file"].is_string()) {
            throw ConfigError(tat + ".file: expected a path string");
          }
          event.trajectory = load_trajectory_file(s.source_dir / tj["file"].get<std::string>());
        } else {
          event.trajectory = parse_trajectory(tj, tat);
        }
      }
      s.events.push_back(std::move(event));
    }
  }

  if (j.contains("log")) {
    if (!j["log"].is_string()) {
      throw ConfigError(where + ".log: expected a path string");
    }
    s.default_log = j["log"].get<std::string>();
  }
  return s;
}

std::unique_ptr<plant::Plant> make_plant(const PlantSpec & spec)
{
  if (spec.type == "planar_dynamic") {
    return std::make_unique<plant::DynamicArmPlant>(spec.arm, spec.initial_positions);
  }
  if (spec.type == "kinematic_chain") {
    if (!spec.chain) {
      throw ConfigError("plant: kinematic_chain spec carries no chain geometry");
    }
    return std::make_unique<plant::KinematicArmPlant>(
      *spec.chain, spec.initial_positions, spec.rate_limit);
  }
  throw ConfigError("plant: unknown plant type '" + spec.type + "'");
}

}  // namespace refchain::cli
