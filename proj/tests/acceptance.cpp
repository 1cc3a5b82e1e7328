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

// Acceptance gate for the whole pipeline stack. Each criterion drives the
// shipped scenarios or a purpose-built experiment against a stated numeric
// bound and reports one [PASS]/[FAIL] line; run with a list of criterion
// numbers to execute a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "refchain/chain/pipeline.hpp"
#include "refchain/cli/runner.hpp"
#include "refchain/cli/scenario.hpp"
#include "refchain/cli/summarize.hpp"
#include "refchain/core/error.hpp"
#include "refchain/core/math.hpp"
#include "refchain/plant/planar_dynamics.hpp"
#include "refchain/plant/plant.hpp"
#include "refchain/plant/wall.hpp"
#include "refchain/refgen/interpolation.hpp"
#include "refchain/refgen/validation.hpp"
#include "refchain/transport/inbox.hpp"

#ifndef REFCHAIN_CONFIG_DIR
#error "REFCHAIN_CONFIG_DIR must point at the shipped configs directory"
#endif

namespace chain = refchain::chain;
namespace cli = refchain::cli;
namespace core = refchain::core;
namespace plant = refchain::plant;
namespace refgen = refchain::refgen;
namespace transport = refchain::transport;
namespace fs = std::filesystem;

namespace
{

// ---------------------------------------------------------------------------
// Reporting

struct Gate
{
  bool ok = true;
  std::vector<std::string> notes;

  void note(const std::string & text) { notes.push_back(text); }

  bool require(bool condition, const std::string & what)
  {
    if (condition) {
      notes.push_back(what);
    } else {
      ok = false;
      notes.push_back(what + "  <-- FAILED");
    }
    return condition;
  }

  /// value must stay strictly below limit.
  bool below(const char * label, double value, double limit)
  {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s = %.6g (must be < %.6g)", label, value, limit);
    return require(value < limit, buf);
  }

  /// value must reach at least limit.
  bool at_least(const char * label, double value, double limit)
  {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s = %.6g (must be >= %.6g)", label, value, limit);
    return require(value >= limit, buf);
  }
};

// ---------------------------------------------------------------------------
// Shared helpers

fs::path scenario_path(const char * file)
{
  return fs::path(REFCHAIN_CONFIG_DIR) / "scenarios" / file;
}

const fs::path & temp_dir()
{
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "refchain_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

cli::RunOptions without_log()
{
  cli::RunOptions options;
  options.log_path = std::string{};
  return options;
}

std::string read_bytes(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw refchain::IoError("cannot read '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Eigen::VectorXd vec3(double a, double b, double c)
{
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

size_t column_or_throw(const cli::LogData & log, const std::string & name)
{
  const long c = log.column(name);
  if (c < 0) {
    throw std::runtime_error("log has no column '" + name + "'");
  }
  return static_cast<size_t>(c);
}

chain::ComponentDescriptor descriptor(std::string name, std::string type)
{
  chain::ComponentDescriptor d;
  d.name = std::move(name);
  d.type = std::move(type);
  return d;
}

plant::PlanarArmParams planar_params(bool with_friction, bool with_gravity)
{
  plant::PlanarArmParams p;
  p.link_lengths = vec3(0.5, 0.4, 0.3);
  p.link_masses = vec3(1.2, 1.0, 0.8);
  p.viscous_friction = with_friction ? vec3(0.3, 0.2, 0.1) : vec3(0.0, 0.0, 0.0);
  p.gravity_enabled = with_gravity;
  return p;
}

// ---------------------------------------------------------------------------
// Criterion 1: gravity-compensated PD holds a step target at 1 kHz, and the
// whole 5 s simulation finishes faster than real time.

void criterion_1(Gate & g)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto summary = cli::run_scenario_file(scenario_path("jrg_pdgc_planar.json"), without_log());
  const double wall =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  g.require(summary.cycles == 5000, "5 s at 1 kHz = 5000 cycles");
  g.below(
    "final max joint error [rad]", summary.tracking.at("joint_position_error").final_abs, 1e-3);
  g.below("wall-clock time for 5 simulated seconds [s]", wall, 5.0);
}

// ---------------------------------------------------------------------------
// Criterion 2: PID tracks a waypoint trajectory, and its integral term is
// what removes the steady-state error under a constant joint disturbance.

double pid_steady_error_under_disturbance(double ki)
{
  std::vector<chain::ComponentDescriptor> descriptors = {
    descriptor("jrg", "joint_reference_generator"),
    descriptor("pid", "pid"),
  };
  descriptors[1].params.set("kp", vec3(200, 200, 200));
  descriptors[1].params.set("kd", vec3(10, 10, 10));
  descriptors[1].params.set("ki", vec3(ki, ki, ki));
  descriptors[1].params.set("i_clamp", vec3(20, 20, 20));

  const chain::PlantInfo info{3, plant::CommandKind::effort};
  auto pipeline = chain::Pipeline::build(descriptors, info, 1e-3);
  plant::DynamicArmPlant arm(planar_params(true, false), vec3(0.1, -0.2, 0.3));
  pipeline.activate(arm.observe());

  for (int k = 0; k < 9000; ++k) {
    if (k == 1000) {
      arm.set_external_torque(Eigen::VectorXd::Ones(3));
    }
    const auto obs = arm.observe();
    const Eigen::VectorXd & cmd = pipeline.step(k * 1e-3, obs);
    arm.apply_command({cmd.data(), 3}, 1e-3);
  }
  return (pipeline.port(0).values().head(3) - arm.state().joints.positions)
    .cwiseAbs()
    .maxCoeff();
}

void criterion_2(Gate & g)
{
  const auto summary = cli::run_scenario_file(scenario_path("jrg_pid_planar.json"), without_log());
  g.require(
    summary.goals.size() == 1 && summary.goals[0].code == refgen::ResultCode::succeeded,
    "waypoint trajectory goal resolved as succeeded");
  g.below(
    "max tracking error over the run [rad]",
    summary.tracking.at("joint_position_error").max_abs, 0.05);
  g.below(
    "final tracking error [rad]", summary.tracking.at("joint_position_error").final_abs, 1e-3);

  // 1 N*m per joint, applied after settling; errors measured 8 s later.
  g.below(
    "steady error with integral action [rad]", pid_steady_error_under_disturbance(150.0), 1e-4);
  g.at_least(
    "steady error without integral action [rad]", pid_steady_error_under_disturbance(0.0), 1e-3);
}

// ---------------------------------------------------------------------------
// Criterion 3: task-space square tracked at 125 Hz; reference and measured
// quaternions stay unit-norm on every logged cycle.

void criterion_3(Gate & g)
{
  cli::RunOptions options;
  options.log_path = (temp_dir() / "c3.csv").string();
  const auto summary = cli::run_scenario_file(scenario_path("trg_cpc_6dof_125hz.json"), options);

  g.require(
    summary.goals.size() == 1 && summary.goals[0].code == refgen::ResultCode::succeeded,
    "square trajectory goal resolved as succeeded");
  g.below("max position error [m]", summary.tracking.at("position_error").max_abs, 2e-3);
  g.below(
    "max orientation error [rad]", summary.tracking.at("orientation_error").max_abs, 0.01);

  const cli::LogData log = cli::read_log(options.log_path.value());
  double worst = 0.0;
  for (const char * stem : {"trg/pose", "plant/pose"}) {
    const size_t qw = column_or_throw(log, std::string(stem) + "/qw");
    const size_t qx = column_or_throw(log, std::string(stem) + "/qx");
    const size_t qy = column_or_throw(log, std::string(stem) + "/qy");
    const size_t qz = column_or_throw(log, std::string(stem) + "/qz");
    for (size_t r = 0; r < log.rows(); ++r) {
      const double norm = std::sqrt(
        log.values[qw][r] * log.values[qw][r] + log.values[qx][r] * log.values[qx][r] +
        log.values[qy][r] * log.values[qy][r] + log.values[qz][r] * log.values[qz][r]);
      worst = std::max(worst, std::abs(norm - 1.0));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "quaternion norms scanned over %zu rows", log.rows());
  g.note(buf);
  g.below("worst |quaternion norm - 1|", worst, 1e-9);
  fs::remove(options.log_path.value());
}

// ---------------------------------------------------------------------------
// Criterion 4: with the end effector pressed into a stiff virtual wall, the
// admittance deflection settles where the two springs balance:
//   depth* = preload * k_admittance / (k_admittance + k_wall).

void criterion_4(Gate & g)
{
  const auto chain_geometry =
    cli::load_chain_file(fs::path(REFCHAIN_CONFIG_DIR) / "robots" / "sixdof.json");
  Eigen::VectorXd q0(6);
  q0 << 0.0, 0.5, -0.9, 0.0, 0.6, 0.0;
  plant::KinematicArmPlant arm(chain_geometry, q0);

  std::vector<chain::ComponentDescriptor> descriptors = {
    descriptor("trg", "task_reference_generator"),
    descriptor("ac", "admittance"),
    descriptor("cpc", "cartesian_pose"),
  };
  Eigen::VectorXd mass(6), damping(6), stiffness(6);
  mass << 8, 8, 8, 0.5, 0.5, 0.5;
  damping << 580, 580, 580, 10, 10, 10;
  stiffness << 500, 500, 500, 50, 50, 50;
  descriptors[1].params.set("mass", mass);
  descriptors[1].params.set("damping", damping);
  descriptors[1].params.set("stiffness", stiffness);
  descriptors[2].params.set("kp", 5.0 * Eigen::VectorXd::Ones(6));
  descriptors[2].params.set("dls_lambda", 0.01);

  const chain::PlantInfo info{6, plant::CommandKind::position};
  auto pipeline = chain::Pipeline::build(descriptors, info, 1e-3);
  pipeline.activate(arm.observe());

  // Wall plane through the initial tool position, free space behind it; the
  // commanded pose sits 5 mm beyond the plane.
  const core::Pose start = arm.observe().ee_pose;
  plant::VirtualWall wall;
  wall.plane_point = start.position;
  wall.normal = Eigen::Vector3d(0.0, -1.0, 0.0);
  wall.stiffness = 10000.0;
  wall.damping = 50.0;

  const double preload = 0.005;
  refgen::TaskReference target;
  target.pose = start;
  target.pose.position.y() += preload;  // into the wall
  pipeline.generator().inbox()->publish_reference(target);

  for (int k = 0; k < 5000; ++k) {
    const auto obs = arm.observe();
    const Eigen::VectorXd & cmd = pipeline.step(k * 1e-3, obs);
    arm.apply_command({cmd.data(), 6}, 1e-3);
    const auto after = arm.observe();
    arm.set_measured_wrench(plant::wall_wrench(wall, after.ee_pose, after.ee_twist));
  }

  const auto final_obs = arm.observe();
  const Eigen::Vector3d displacement = final_obs.ee_pose.position - start.position;
  const double depth = displacement.y();
  const double tangential = std::hypot(displacement.x(), displacement.z());
  const double analytic = preload * 500.0 / (500.0 + 10000.0);

  char buf[160];
  std::snprintf(buf, sizeof buf, "measured penetration %.8g m, analytic %.8g m", depth, analytic);
  g.note(buf);
  g.at_least("final wall force [N]", wall.stiffness * depth, 1.0);
  g.below("residual tool speed [m/s]", final_obs.ee_twist.linear.norm(), 1e-5);
  g.below("|penetration - analytic| [m]", std::abs(depth - analytic), 1e-4);
  g.below("tangential drift along the wall [m]", tangential, 1e-4);
}

// ---------------------------------------------------------------------------
// Criterion 5: the four-stage chain (task generator, admittance, pose
// tracker, joint PID) completes its wall-contact trajectory and stays within
// 5 mm wherever the end effector is out of contact.

void criterion_5(Gate & g)
{
  cli::RunOptions options;
  options.log_path = (temp_dir() / "c5.csv").string();
  const auto summary =
    cli::run_scenario_file(scenario_path("trg_ac_cpc_pid_planar_wall.json"), options);

  g.require(
    summary.goals.size() == 1 && summary.goals[0].code == refgen::ResultCode::succeeded,
    "wall-contact trajectory goal resolved as succeeded");

  const cli::LogData log = cli::read_log(options.log_path.value());
  const char * wrench_channels[] = {"plant/wrench/fx", "plant/wrench/fy", "plant/wrench/fz",
                                    "plant/wrench/tx", "plant/wrench/ty", "plant/wrench/tz"};
  std::vector<size_t> wrench_cols;
  for (const char * name : wrench_channels) {
    wrench_cols.push_back(column_or_throw(log, name));
  }
  const size_t rx = column_or_throw(log, "trg/pose/x");
  const size_t ry = column_or_throw(log, "trg/pose/y");
  const size_t rz = column_or_throw(log, "trg/pose/z");
  const size_t px = column_or_throw(log, "plant/pose/x");
  const size_t py = column_or_throw(log, "plant/pose/y");
  const size_t pz = column_or_throw(log, "plant/pose/z");

  size_t free_rows = 0;
  size_t contact_rows = 0;
  double worst_free = 0.0;
  for (size_t r = 0; r < log.rows(); ++r) {
    bool in_contact = false;
    for (size_t c : wrench_cols) {
      in_contact = in_contact || log.values[c][r] != 0.0;
    }
    if (in_contact) {
      ++contact_rows;
      continue;
    }
    ++free_rows;
    const Eigen::Vector3d err(
      log.values[rx][r] - log.values[px][r], log.values[ry][r] - log.values[py][r],
      log.values[rz][r] - log.values[pz][r]);
    worst_free = std::max(worst_free, err.norm());
  }

  char buf[128];
  std::snprintf(
    buf, sizeof buf, "%zu free-space rows, %zu contact rows", free_rows, contact_rows);
  g.note(buf);
  g.require(free_rows > 0 && contact_rows > 0, "run contains both phases");
  g.below("max free-space position error [m]", worst_free, 5e-3);
  fs::remove(options.log_path.value());
}

// ---------------------------------------------------------------------------
// Criterion 6: the preemption scenario resolves all three goals, each with
// exactly the terminal code its fate dictates.

void criterion_6(Gate & g)
{
  const auto summary = cli::run_scenario_file(scenario_path("fsm_preemption.json"), without_log());
  if (!g.require(summary.goals.size() == 3, "three trajectory goals submitted and resolved")) {
    return;
  }
  for (const auto & goal : summary.goals) {
    g.note(
      "goal " + std::to_string(goal.id) + " -> " + refgen::to_string(goal.code));
  }
  g.require(
    summary.goals[0].code == refgen::ResultCode::aborted_by_new_trajectory,
    "first goal displaced by the second trajectory");
  g.require(
    summary.goals[1].code == refgen::ResultCode::aborted_by_online_reference,
    "second goal displaced by the online reference");
  g.require(
    summary.goals[2].code == refgen::ResultCode::succeeded, "third goal ran to completion");
  g.note("the run loop verifies every goal is terminal after deactivation");

  // Startup with no input: the generator holds the activation pose exactly.
  std::vector<chain::ComponentDescriptor> descriptors = {
    descriptor("jrg", "joint_reference_generator")};
  const chain::PlantInfo info{3, plant::CommandKind::position};
  auto pipeline = chain::Pipeline::build(descriptors, info, 1e-3);
  plant::KinematicArmPlant arm(
    plant::KinematicChain::planar(vec3(0.5, 0.4, 0.3)), vec3(0.2, -0.4, 0.6));
  pipeline.activate(arm.observe());
  double worst_hold = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd & cmd = pipeline.step(k * 1e-3, arm.observe());
    worst_hold = std::max(
      worst_hold, (cmd.head(3) - vec3(0.2, -0.4, 0.6)).cwiseAbs().maxCoeff());
    arm.apply_command({cmd.data(), 3}, 1e-3);
  }
  g.require(worst_hold == 0.0, "port holds the activation positions bit-exactly before any input");
}

// ---------------------------------------------------------------------------
// Criterion 7: independent numeric oracles for the dynamics and kinematics.

core::Jacobian6 fd_jacobian(
  const plant::KinematicChain & chain_geometry, const Eigen::VectorXd & q, double h)
{
  core::Jacobian6 J(6, q.size());
  Eigen::VectorXd qp = q, qm = q;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    qp[j] = q[j] + h;
    qm[j] = q[j] - h;
    const core::Pose a = chain_geometry.forward_kinematics(qp);
    const core::Pose b = chain_geometry.forward_kinematics(qm);
    J.col(j).head<3>() = (a.position - b.position) / (2.0 * h);
    J.col(j).tail<3>() = core::orientation_error(a.orientation, b.orientation) / (2.0 * h);
    qp[j] = q[j];
    qm[j] = q[j];
  }
  return J;
}

void criterion_7(Gate & g)
{
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::uniform_real_distribution<double> rate(-2.0, 2.0);
  const plant::PlanarArmDynamics model(planar_params(true, true));

  auto random_q = [&] { return vec3(angle(rng), angle(rng), angle(rng)); };
  auto random_qd = [&] { return vec3(rate(rng), rate(rng), rate(rng)); };

  // Inertia stays symmetric positive definite across the workspace.
  double min_eig = std::numeric_limits<double>::infinity();
  double worst_asym = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd B = model.inertia(random_q());
    worst_asym = std::max(worst_asym, (B - B.transpose()).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
  }
  g.below("worst inertia asymmetry", worst_asym, 1e-12);
  g.at_least("min inertia eigenvalue over 100 configurations", min_eig, 1e-6);

  // d/dt B - 2C is skew symmetric; B-dot comes from central differences, so
  // the two routes to the Coriolis terms are independent.
  double worst_power = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd q = random_q();
    const Eigen::VectorXd qd = random_qd();
    const double h = 1e-5;
    const Eigen::MatrixXd Bdot =
      (model.inertia(q + h * qd) - model.inertia(q - h * qd)) / (2.0 * h);
    const Eigen::MatrixXd N = Bdot - 2.0 * model.coriolis(q, qd);
    for (int p = 0; p < 5; ++p) {
      const Eigen::VectorXd v = random_qd();
      worst_power = std::max(worst_power, std::abs(v.dot(N * v)));
    }
  }
  g.below("worst |v^T (Bdot - 2C) v|", worst_power, 1e-6);

  // Gravity torque equals the gradient of the potential.
  double worst_gravity = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd q = random_q();
    const Eigen::VectorXd grav = model.gravity_vec(q);
    const double h = 1e-6;
    for (Eigen::Index j = 0; j < 3; ++j) {
      Eigen::VectorXd qp = q, qm = q;
      qp[j] += h;
      qm[j] -= h;
      const double fd = (model.potential(qp) - model.potential(qm)) / (2.0 * h);
      worst_gravity = std::max(worst_gravity, std::abs(fd - grav[j]));
    }
  }
  g.below("worst |gravity - dU/dq|", worst_gravity, 1e-6);

  // Analytic Jacobians match central differences of forward kinematics, for
  // the planar factory and for the six-axis geometry file.
  const auto planar_chain = plant::KinematicChain::planar(vec3(0.5, 0.4, 0.3));
  const auto spatial_chain =
    cli::load_chain_file(fs::path(REFCHAIN_CONFIG_DIR) / "robots" / "sixdof.json");
  double worst_jac = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd q = random_q();
    worst_jac = std::max(
      worst_jac,
      (planar_chain.jacobian(q) - fd_jacobian(planar_chain, q, 1e-6)).cwiseAbs().maxCoeff());
    Eigen::VectorXd q6(6);
    for (int j = 0; j < 6; ++j) {
      q6[j] = angle(rng);
    }
    worst_jac = std::max(
      worst_jac,
      (spatial_chain.jacobian(q6) - fd_jacobian(spatial_chain, q6, 1e-6)).cwiseAbs().maxCoeff());
  }
  g.below("worst |J - J_fd| entry", worst_jac, 1e-5);

  // Unforced frictionless swing conserves energy over 2 s of RK4.
  {
    const plant::PlanarArmDynamics frictionless(planar_params(false, true));
    Eigen::VectorXd q = vec3(0.4, 0.3, 0.2);
    Eigen::VectorXd qd = Eigen::VectorXd::Zero(3);
    const Eigen::VectorXd tau = Eigen::VectorXd::Zero(3);
    const double e0 = frictionless.energy(q, qd);
    for (int k = 0; k < 2000; ++k) {
      frictionless.rk4_step(q, qd, tau, 1e-3);
    }
    const double drift = std::abs(frictionless.energy(q, qd) - e0) / std::abs(e0);
    g.require(std::abs(e0) > 0.1, "initial energy is far from zero");
    g.below("relative energy drift over 2 s", drift, 1e-6);
  }

  // Halving the step divides the integration error by about sixteen.
  {
    const auto integrate = [&](double dt, double horizon) {
      Eigen::VectorXd q = vec3(0.4, 0.3, 0.2);
      Eigen::VectorXd qd = Eigen::VectorXd::Zero(3);
      const Eigen::VectorXd tau = vec3(0.3, -0.2, 0.1);
      const auto steps = static_cast<long>(std::llround(horizon / dt));
      for (long k = 0; k < steps; ++k) {
        model.rk4_step(q, qd, tau, dt);
      }
      return q;
    };
    const Eigen::VectorXd reference = integrate(1e-5, 0.4);
    const double e_coarse = (integrate(0.02, 0.4) - reference).cwiseAbs().maxCoeff();
    const double e_fine = (integrate(0.01, 0.4) - reference).cwiseAbs().maxCoeff();
    g.require(e_fine > 1e-14, "fine-step error stays above rounding noise");
    g.at_least("observed integration order", std::log2(e_coarse / e_fine), 3.5);
  }
}

// ---------------------------------------------------------------------------
// Criterion 8: interpolation reproduces waypoints exactly and splits
// rotations along the great arc.

void criterion_8(Gate & g)
{
  // Joint space: exact waypoint reproduction and segment-slope velocities.
  refgen::Trajectory joint;
  {
    std::vector<refgen::JointWaypoint> wps(3);
    wps[0].time = 0.0;
    wps[0].reference.positions = vec3(0.1, -0.7, 1.3);
    wps[1].time = 0.75;
    wps[1].reference.positions = vec3(-0.4, 0.2, 0.9);
    wps[2].time = 2.0;
    wps[2].reference.positions = vec3(0.6, 0.5, -0.3);
    joint.waypoints = wps;

    double worst = 0.0;
    for (const auto & wp : wps) {
      const auto sample = refgen::interpolate_joint(joint, wp.time);
      worst = std::max(
        worst, (sample.reference.positions - wp.reference.positions).cwiseAbs().maxCoeff());
    }
    g.below("worst joint waypoint reproduction error [rad]", worst, 1e-12);

    const auto mid = refgen::interpolate_joint(joint, 0.375);
    const Eigen::VectorXd expected_vel =
      (wps[1].reference.positions - wps[0].reference.positions) / 0.75;
    g.below(
      "segment velocity deviation [rad/s]",
      (mid.reference.velocities_or_zero() - expected_vel).cwiseAbs().maxCoeff(), 1e-12);
  }

  // Task space: waypoints exact, the halfway orientation bisects the arc.
  {
    const Eigen::Vector3d axis = Eigen::Vector3d(1.0, 2.0, 3.0).normalized();
    refgen::TaskWaypoint a;
    a.time = 0.0;
    a.reference.pose.position = Eigen::Vector3d(0.2, -0.1, 0.5);
    a.reference.pose.orientation = Eigen::Quaterniond::Identity();
    refgen::TaskWaypoint b;
    b.time = 2.0;
    b.reference.pose.position = Eigen::Vector3d(0.5, 0.3, 0.1);
    b.reference.pose.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(1.0, axis));

    refgen::Trajectory task;
    task.waypoints = std::vector<refgen::TaskWaypoint>{a, b};

    double worst_pos = 0.0;
    double worst_ang = 0.0;
    for (const auto & wp : {a, b}) {
      const auto sample = refgen::interpolate_task(task, wp.time);
      worst_pos = std::max(
        worst_pos,
        (sample.reference.pose.position - wp.reference.pose.position).cwiseAbs().maxCoeff());
      worst_ang = std::max(
        worst_ang,
        core::orientation_error(sample.reference.pose.orientation, wp.reference.pose.orientation)
          .norm());
    }
    g.below("worst task waypoint position error [m]", worst_pos, 1e-12);
    g.below("worst task waypoint orientation error [rad]", worst_ang, 1e-9);

    const auto mid = refgen::interpolate_task(task, 1.0);
    const Eigen::Quaterniond half(Eigen::AngleAxisd(0.5, axis));
    g.below(
      "midpoint orientation vs half-angle rotation [rad]",
      core::orientation_error(mid.reference.pose.orientation, half).norm(), 1e-9);
    g.below(
      "midpoint angular rate vs arc rate [rad/s]",
      (mid.reference.twist_or_zero().angular - 0.5 * axis).cwiseAbs().maxCoeff(), 1e-9);
  }
}

// ---------------------------------------------------------------------------
// Criterion 9: the transport layer under fire. A saturating publisher cannot
// tear a read or push validation onto the control thread, and a randomized
// preemption storm resolves every goal exactly once.

std::atomic<std::uint64_t> g_probe_calls{0};
std::atomic<std::uint64_t> g_probe_on_control_thread{0};
std::atomic<bool> g_control_thread_set{false};
std::thread::id g_control_thread_id;

void validation_probe()
{
  g_probe_calls.fetch_add(1, std::memory_order_relaxed);
  if (
    g_control_thread_set.load(std::memory_order_relaxed) &&
    std::this_thread::get_id() == g_control_thread_id)
  {
    g_probe_on_control_thread.fetch_add(1, std::memory_order_relaxed);
  }
}

void criterion_9(Gate & g)
{
  g_control_thread_id = std::this_thread::get_id();
  g_control_thread_set.store(true);
  g_probe_calls.store(0);
  g_probe_on_control_thread.store(0);
  refgen::set_validation_probe(&validation_probe);

  // Part one: one million control cycles against a saturating publisher.
  // Payloads are self-checking: consecutive values plus their sum.
  {
    transport::Inbox inbox;
    inbox.configure(refgen::Limits::unbounded(), 8, false);

    std::atomic<bool> stop{false};
    std::thread writer([&] {
      refgen::JointReference ref;
      ref.positions = Eigen::VectorXd::Zero(8);
      for (double s = 1.0; !stop.load(std::memory_order_relaxed); s += 1.0) {
        double sum = 0.0;
        for (int i = 0; i < 7; ++i) {
          ref.positions[i] = s + i;
          sum += s + i;
        }
        ref.positions[7] = sum;
        (void)inbox.publish_reference(ref);
        std::this_thread::yield();
      }
    });

    std::uint64_t drained = 0;
    std::uint64_t torn = 0;
    std::uint64_t out_of_order = 0;
    double last_seen = 0.0;
    for (std::uint64_t cycle = 0; cycle < 1000000; ++cycle) {
      if (auto topic = inbox.take_topic()) {
        const auto & ref = std::get<refgen::JointReference>(topic->reference);
        ++drained;
        bool coherent = ref.positions.size() == 8;
        double sum = 0.0;
        if (coherent) {
          const double s = ref.positions[0];
          for (int i = 0; i < 7; ++i) {
            coherent = coherent && ref.positions[i] == s + i;
            sum += s + i;
          }
          coherent = coherent && ref.positions[7] == sum;
        }
        if (!coherent) {
          ++torn;
        } else {
          if (ref.positions[0] <= last_seen) {
            ++out_of_order;
          }
          last_seen = ref.positions[0];
        }
      }
      if ((cycle & 0xfff) == 0) {
        std::this_thread::yield();
      }
    }
    stop.store(true);
    writer.join();

    char buf[128];
    std::snprintf(
      buf, sizeof buf, "1000000 control cycles, %llu fresh samples drained",
      static_cast<unsigned long long>(drained));
    g.note(buf);
    g.at_least("fresh samples seen", static_cast<double>(drained), 1.0);
    g.require(torn == 0, "zero torn reads");
    g.require(out_of_order == 0, "samples arrive in publication order");
  }

  // Part two: ten thousand submissions racing pickup, replacement and
  // shutdown; afterwards every goal is terminal with exactly one code.
  {
    transport::Inbox inbox;
    inbox.configure(refgen::Limits::unbounded(), 2, false);

    constexpr int kGoals = 10000;
    std::vector<transport::GoalHandle> handles(kGoals);
    std::atomic<bool> submitter_done{false};
    std::thread submitter([&] {
      Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
      for (int i = 0; i < kGoals; ++i) {
        refgen::Trajectory traj;
        std::vector<refgen::JointWaypoint> wps(2);
        wps[0].time = 0.0;
        wps[0].reference.positions = zero;
        wps[1].time = 0.1;
        wps[1].reference.positions = vec3(0.1, 0.2, 0.0).head(2);
        traj.waypoints = std::move(wps);
        auto outcome = inbox.submit_trajectory(std::move(traj));
        handles[static_cast<size_t>(i)] = std::get<transport::GoalHandle>(outcome);
        if ((i & 0xf) == 0) {
          std::this_thread::yield();
        }
      }
      submitter_done.store(true, std::memory_order_release);
    });

    std::mt19937 rng(999);
    std::vector<transport::GoalHandle> executing;
    while (true) {
      switch (rng() % 4) {
        case 0:
          if (auto goal = inbox.take_goal()) {
            executing.push_back(goal->handle);
          }
          break;
        case 1:
          if (!executing.empty()) {
            const size_t pick = rng() % executing.size();
            executing[pick]->resolve(refgen::ResultCode::succeeded);
            executing.erase(executing.begin() + static_cast<long>(pick));
          }
          break;
        case 2:
          (void)inbox.abandon_pending(refgen::ResultCode::aborted_by_deactivation);
          break;
        default:
          std::this_thread::yield();
          break;
      }
      if (submitter_done.load(std::memory_order_acquire)) {
        // Drain what is left, then stop.
        while (auto goal = inbox.take_goal()) {
          executing.push_back(goal->handle);
        }
        (void)inbox.abandon_pending(refgen::ResultCode::aborted_by_deactivation);
        for (auto & h : executing) {
          h->resolve(refgen::ResultCode::aborted_by_deactivation);
        }
        executing.clear();
        break;
      }
    }
    submitter.join();

    std::uint64_t terminal = 0;
    std::uint64_t succeeded = 0;
    std::uint64_t displaced = 0;
    std::uint64_t abandoned = 0;
    for (const auto & handle : handles) {
      if (!handle || handle->status() != transport::GoalStatus::terminal) {
        continue;
      }
      ++terminal;
      switch (*handle->result()) {
        case refgen::ResultCode::succeeded:
          ++succeeded;
          break;
        case refgen::ResultCode::aborted_by_new_trajectory:
          ++displaced;
          break;
        case refgen::ResultCode::aborted_by_deactivation:
          ++abandoned;
          break;
        default:
          break;
      }
    }
    char buf[192];
    std::snprintf(
      buf, sizeof buf,
      "10000 goals: %llu succeeded, %llu displaced by newer submissions, %llu abandoned",
      static_cast<unsigned long long>(succeeded), static_cast<unsigned long long>(displaced),
      static_cast<unsigned long long>(abandoned));
    g.note(buf);
    g.require(terminal == kGoals, "every goal reached exactly one terminal state");
    g.require(
      succeeded + displaced + abandoned == kGoals, "every terminal code is one of the three");
    g.note("a second resolution would have thrown; none did");
  }

  refgen::set_validation_probe(nullptr);
  g.at_least(
    "validation calls observed on writer threads",
    static_cast<double>(g_probe_calls.load()), 1.0);
  g.require(
    g_probe_on_control_thread.load() == 0, "zero validation calls on the control thread");
}

// ---------------------------------------------------------------------------
// Criterion 10: every shipped scenario, run twice, logs byte-identical CSV.

void criterion_10(Gate & g)
{
  const fs::path dir = fs::path(REFCHAIN_CONFIG_DIR) / "scenarios";
  std::vector<fs::path> files;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  g.require(files.size() == 7, "seven shipped scenarios found");

  for (const auto & file : files) {
    const std::string stem = file.stem().string();
    cli::RunOptions first;
    first.log_path = (temp_dir() / (stem + "_a.csv")).string();
    cli::RunOptions second;
    second.log_path = (temp_dir() / (stem + "_b.csv")).string();
    cli::run_scenario_file(file, first);
    cli::run_scenario_file(file, second);

    const std::string a = read_bytes(*first.log_path);
    const std::string b = read_bytes(*second.log_path);
    char buf[160];
    std::snprintf(
      buf, sizeof buf, "%s: %zu bytes per log", stem.c_str(), a.size());
    g.note(buf);
    g.require(!a.empty() && a == b, stem + ": two runs byte-identical");
    fs::remove(*first.log_path);
    fs::remove(*second.log_path);
  }
}

// ---------------------------------------------------------------------------

struct Entry
{
  int id;
  const char * name;
  void (*fn)(Gate &);
};

constexpr Entry kCriteria[] = {
  {1, "gravity-compensated PD holds a step target at 1 kHz", criterion_1},
  {2, "integral action rejects a constant joint disturbance", criterion_2},
  {3, "task-space square tracked at 125 Hz with unit quaternions", criterion_3},
  {4, "admittance settles at the two-spring wall equilibrium", criterion_4},
  {5, "four-stage contact chain stays accurate in free space", criterion_5},
  {6, "preempted goals resolve with their dictated terminal codes", criterion_6},
  {7, "dynamics and kinematics pass independent numeric oracles", criterion_7},
  {8, "trajectory interpolation is exact at waypoints and arcs", criterion_8},
  {9, "transport survives a saturating publisher and preemption storm", criterion_9},
  {10, "every shipped scenario logs byte-identical reruns", criterion_10},
};

}  // namespace

int main(int argc, char ** argv)
{
  std::setlocale(LC_ALL, "C");

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::atoi(argv[i]));
  }

  int failures = 0;
  int executed = 0;
  for (const Entry & entry : kCriteria) {
    if (!selected.empty() && !selected.count(entry.id)) {
      continue;
    }
    ++executed;
    Gate gate;
    try {
      entry.fn(gate);
    } catch (const std::exception & e) {
      gate.ok = false;
      gate.notes.push_back(std::string("unexpected exception: ") + e.what());
    }
    std::printf("[%s] criterion %2d — %s\n", gate.ok ? "PASS" : "FAIL", entry.id, entry.name);
    for (const auto & note : gate.notes) {
      std::printf("          %s\n", note.c_str());
    }
    if (!gate.ok) {
      ++failures;
    }
  }

  std::printf("%d/%d criteria passed\n", executed - failures, executed);
  if (executed == 0) {
    std::printf("no criterion matched the requested ids\n");
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
