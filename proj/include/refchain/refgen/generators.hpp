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
#include <memory>

#include "refchain/chain/component.hpp"
#include "refchain/refgen/fsm.hpp"
#include "refchain/refgen/interpolation.hpp"
#include "refchain/transport/inbox.hpp"

namespace refchain::refgen
{

/// Shared machinery of both reference generators: an inbox drained once per
/// cycle, the online/trajectory state machine, goal bookkeeping and
/// feedback. Subclasses fix the reference space (joint or task) and how
/// samples map to port channels.
class ReferenceGenerator : public chain::Component
{
public:
  ReferenceGenerator(std::string name, bool task_space);

  const std::shared_ptr<transport::Inbox> & inbox() const { return inbox_; }
  const GeneratorState & state() const { return state_; }

protected:
  void do_activate(const plant::PlantObservation & observation) override;
  void do_deactivate() override;
  void do_update(
    double t, double dt, const plant::PlantObservation & observation,
    Eigen::Ref<const Eigen::VectorXd> input, Eigen::Ref<Eigen::VectorXd> output) override;

  /// Reference held at activation, taken from the measured plant state so
  /// the pipeline starts bumpless.
  virtual ReferenceSample activation_hold(const plant::PlantObservation & observation) const = 0;
  virtual ReferenceSample sample_trajectory(
    const Trajectory & trajectory, double elapsed, bool & finished) const = 0;
  virtual void write_port(
    const ReferenceSample & sample, Eigen::Ref<Eigen::VectorXd> output) const = 0;

  std::shared_ptr<transport::Inbox> inbox_;

private:
  void deliver(const std::vector<EmittedResult> & results);

  bool task_space_;
  GeneratorState state_;
  std::map<std::uint64_t, transport::GoalHandle> live_goals_;
};

/// Emits position/velocity channels per joint. Online references and
/// trajectories are validated against joint position/velocity limits.
class JointReferenceGenerator : public ReferenceGenerator
{
public:
  explicit JointReferenceGenerator(std::string name);

protected:
  void do_configure(const chain::ParamMap & params, const chain::PlantInfo & plant) override;
  ReferenceSample activation_hold(const plant::PlantObservation & observation) const override;
  ReferenceSample sample_trajectory(
    const Trajectory & trajectory, double elapsed, bool & finished) const override;
  void write_port(
    const ReferenceSample & sample, Eigen::Ref<Eigen::VectorXd> output) const override;

private:
  Eigen::Index dof_ = 0;
};

/// Emits pose/twist/wrench channels. Online references and trajectories are
/// validated against a workspace box and a Cartesian speed cap.
class TaskReferenceGenerator : public ReferenceGenerator
{
public:
  explicit TaskReferenceGenerator(std::string name);

protected:
  void do_configure(const chain::ParamMap & params, const chain::PlantInfo & plant) override;
  ReferenceSample activation_hold(const plant::PlantObservation & observation) const override;
  ReferenceSample sample_trajectory(
    const Trajectory & trajectory, double elapsed, bool & finished) const override;
  void write_port(
    const ReferenceSample & sample, Eigen::Ref<Eigen::VectorXd> output) const override;
};

/// Pack helpers shared with the logger and tests.
void pack_task_reference(const TaskReference & ref, Eigen::Ref<Eigen::VectorXd> out);
TaskReference unpack_task_reference(Eigen::Ref<const Eigen::VectorXd> in);

}  // namespace refchain::refgen
