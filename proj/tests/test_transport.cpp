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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "refchain/core/error.hpp"
#include "refchain/transport/goal.hpp"
#include "refchain/transport/inbox.hpp"
#include "refchain/transport/latest_slot.hpp"

using refchain::ProtocolError;
namespace core = refchain::core;
namespace refgen = refchain::refgen;
namespace transport = refchain::transport;

namespace
{

Eigen::VectorXd vec3(double a, double b, double c)
{
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

refgen::JointReference joint_ref(const Eigen::VectorXd & q)
{
  refgen::JointReference ref;
  ref.positions = q;
  return ref;
}

refgen::Trajectory joint_traj(double end_pos)
{
  refgen::Trajectory traj;
  std::vector<refgen::JointWaypoint> wps(2);
  wps[0].time = 0.0;
  wps[0].reference.positions = vec3(0, 0, 0);
  wps[1].time = 1.0;
  wps[1].reference.positions = vec3(end_pos, 0, 0);
  traj.waypoints = std::move(wps);
  return traj;
}

// A payload whose fields must always agree; any torn read breaks the match.
struct Coherent
{
  std::array<std::uint64_t, 8> words{};
  static Coherent make(std::uint64_t seed)
  {
    Coherent c;
    for (size_t i = 0; i < c.words.size(); ++i) {
      c.words[i] = seed * 31 + i;
    }
    return c;
  }
  bool consistent() const
  {
    for (size_t i = 1; i < words.size(); ++i) {
      if (words[i] != words[0] + i) {
        return false;
      }
    }
    return true;
  }
  std::uint64_t seed() const { return (words[0]) / 31; }
};

}  // namespace

TEST_CASE("latest slot hands the reader the most recent publish")
{
  transport::LatestSlot<int> slot;
  int out = -1;
  CHECK_FALSE(slot.poll(out));
  CHECK_FALSE(slot.has_fresh());

  slot.publish(1);
  CHECK(slot.has_fresh());
  CHECK(slot.poll(out));
  CHECK(out == 1);
  // Freshness is consumed by the poll.
  CHECK_FALSE(slot.poll(out));
  CHECK_FALSE(slot.has_fresh());

  slot.publish(2);
  slot.publish(3);
  slot.publish(4);
  CHECK(slot.poll(out));
  CHECK(out == 4);
  CHECK_FALSE(slot.poll(out));
}

TEST_CASE("latest slot survives arbitrary publish and poll interleavings")
{
  transport::LatestSlot<int> slot;
  int out = -1;
  int last_published = -1;
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> coin(0, 1);
  int next = 0;
  for (int step = 0; step < 10000; ++step) {
    if (coin(rng) == 0) {
      slot.publish(next);
      last_published = next;
      ++next;
    } else {
      if (slot.poll(out)) {
        CHECK(out == last_published);
      }
    }
  }
}

TEST_CASE("latest slot never yields a torn payload under concurrent writes")
{
  transport::LatestSlot<Coherent> slot;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> published{0};

  std::thread writer([&] {
    std::uint64_t seed = 1;
    while (!stop.load(std::memory_order_relaxed)) {
      slot.publish(Coherent::make(seed));
      published.store(seed, std::memory_order_relaxed);
      ++seed;
      std::this_thread::yield();
    }
  });

  Coherent out;
  std::uint64_t reads = 0;
  std::uint64_t last_seed = 0;
  while (reads < 50000) {
    if (slot.poll(out)) {
      CHECK(out.consistent());
      // Monotone: a fresh read is never older than the previous one.
      CHECK(out.seed() >= last_seed);
      last_seed = out.seed();
      ++reads;
    } else {
      std::this_thread::yield();
    }
  }
  stop.store(true);
  writer.join();
  CHECK(reads == 50000);
}

TEST_CASE("goal records walk pending, executing, terminal exactly once")
{
  transport::GoalRecord goal(42);
  CHECK(goal.id() == 42);
  CHECK(goal.status() == transport::GoalStatus::pending);
  CHECK_FALSE(goal.result().has_value());

  goal.mark_executing();
  CHECK(goal.status() == transport::GoalStatus::executing);
  CHECK_FALSE(goal.result().has_value());

  goal.resolve(refgen::ResultCode::succeeded);
  CHECK(goal.status() == transport::GoalStatus::terminal);
  REQUIRE(goal.result().has_value());
  CHECK(*goal.result() == refgen::ResultCode::succeeded);

  // A second resolution is a protocol violation, whatever the code.
  CHECK_THROWS_AS(goal.resolve(refgen::ResultCode::succeeded), ProtocolError);
  CHECK_THROWS_AS(goal.resolve(refgen::ResultCode::aborted_by_deactivation), ProtocolError);
  CHECK(*goal.result() == refgen::ResultCode::succeeded);

  // Marking executing after the fact is a harmless no-op.
  goal.mark_executing();
  CHECK(goal.status() == transport::GoalStatus::terminal);
}

TEST_CASE("a pending goal can resolve without ever executing")
{
  transport::GoalRecord goal(1);
  goal.resolve(refgen::ResultCode::aborted_by_new_trajectory);
  CHECK(goal.status() == transport::GoalStatus::terminal);
  CHECK(*goal.result() == refgen::ResultCode::aborted_by_new_trajectory);
  goal.mark_executing();
  CHECK(goal.status() == transport::GoalStatus::terminal);
}

TEST_CASE("goal feedback flows through the record")
{
  transport::GoalRecord goal(9);
  transport::GoalFeedback fb;
  CHECK_FALSE(goal.poll_feedback(fb));

  transport::GoalFeedback sent;
  sent.fraction = 0.25;
  sent.last_sample = joint_ref(vec3(0.1, 0.2, 0.3));
  goal.publish_feedback(sent);
  sent.fraction = 0.5;
  goal.publish_feedback(sent);

  REQUIRE(goal.poll_feedback(fb));
  CHECK(fb.fraction == 0.5);
  CHECK(
    (std::get<refgen::JointReference>(fb.last_sample).positions - vec3(0.1, 0.2, 0.3)).norm() ==
    0.0);
  CHECK_FALSE(goal.poll_feedback(fb));
}

TEST_CASE("inbox delivers the latest accepted reference")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 3, false);

  CHECK_FALSE(inbox.take_topic().has_value());

  CHECK_FALSE(inbox.publish_reference(joint_ref(vec3(0.1, 0.2, 0.3))).has_value());
  CHECK_FALSE(inbox.publish_reference(joint_ref(vec3(0.4, 0.5, 0.6))).has_value());
  CHECK(inbox.published_count() == 2);

  const auto drained = inbox.take_topic();
  REQUIRE(drained.has_value());
  CHECK(
    (std::get<refgen::JointReference>(drained->reference).positions - vec3(0.4, 0.5, 0.6))
      .norm() == 0.0);
  CHECK(drained->sequence == 2);
  CHECK_FALSE(inbox.take_topic().has_value());
}

TEST_CASE("inbox rejection leaves the mailbox untouched")
{
  transport::Inbox inbox;
  refgen::Limits limits;
  limits.position_min = vec3(-1, -1, -1);
  limits.position_max = vec3(1, 1, 1);
  inbox.configure(limits, 3, false);

  CHECK_FALSE(inbox.publish_reference(joint_ref(vec3(0.5, 0.0, 0.0))).has_value());

  // Each rejected publish reports its code and must not overwrite the slot.
  CHECK(
    inbox.publish_reference(joint_ref(Eigen::VectorXd::Zero(4))) ==
    refgen::ResultCode::rejected_dimension);
  CHECK(
    inbox.publish_reference(joint_ref(vec3(std::nan(""), 0, 0))) ==
    refgen::ResultCode::rejected_nonfinite);
  CHECK(
    inbox.publish_reference(joint_ref(vec3(2.0, 0, 0))) ==
    refgen::ResultCode::rejected_limits);

  refgen::TaskReference task;
  CHECK(inbox.publish_reference(task) == refgen::ResultCode::rejected_dimension);

  CHECK(inbox.published_count() == 1);
  const auto drained = inbox.take_topic();
  REQUIRE(drained.has_value());
  CHECK(
    (std::get<refgen::JointReference>(drained->reference).positions - vec3(0.5, 0.0, 0.0))
      .norm() == 0.0);
}

TEST_CASE("a task-space inbox rejects joint payloads outright")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 6, true);
  CHECK(
    inbox.publish_reference(joint_ref(vec3(0, 0, 0))) ==
    refgen::ResultCode::rejected_dimension);
  const auto verdict = inbox.submit_trajectory(joint_traj(0.5));
  REQUIRE(std::holds_alternative<refgen::ResultCode>(verdict));
  CHECK(std::get<refgen::ResultCode>(verdict) == refgen::ResultCode::rejected_dimension);
}

TEST_CASE("submitted trajectories pick up unique ids and executing status")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 3, false);

  auto first = inbox.submit_trajectory(joint_traj(0.5));
  REQUIRE(std::holds_alternative<transport::GoalHandle>(first));
  const auto handle = std::get<transport::GoalHandle>(first);
  CHECK(handle->status() == transport::GoalStatus::pending);

  const auto drained = inbox.take_goal();
  REQUIRE(drained.has_value());
  CHECK(drained->handle.get() == handle.get());
  CHECK(handle->status() == transport::GoalStatus::executing);
  CHECK(drained->trajectory.id == handle->id());
  CHECK_FALSE(inbox.take_goal().has_value());

  auto second = inbox.submit_trajectory(joint_traj(0.7));
  const auto handle2 = std::get<transport::GoalHandle>(second);
  CHECK(handle2->id() > handle->id());
}

TEST_CASE("a newer submission preempts a pending one before pickup")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 3, false);

  const auto a = std::get<transport::GoalHandle>(inbox.submit_trajectory(joint_traj(0.1)));
  const auto b = std::get<transport::GoalHandle>(inbox.submit_trajectory(joint_traj(0.2)));

  // The replaced goal resolved without ever reaching the control loop.
  CHECK(a->status() == transport::GoalStatus::terminal);
  CHECK(*a->result() == refgen::ResultCode::aborted_by_new_trajectory);
  CHECK(b->status() == transport::GoalStatus::pending);

  const auto drained = inbox.take_goal();
  REQUIRE(drained.has_value());
  CHECK(drained->handle.get() == b.get());
}

TEST_CASE("abandoning a pending goal resolves it with the given code")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 3, false);

  CHECK_FALSE(inbox.abandon_pending(refgen::ResultCode::aborted_by_deactivation).has_value());

  const auto handle = std::get<transport::GoalHandle>(inbox.submit_trajectory(joint_traj(0.3)));
  const auto abandoned = inbox.abandon_pending(refgen::ResultCode::aborted_by_deactivation);
  REQUIRE(abandoned.has_value());
  CHECK((*abandoned).get() == handle.get());
  CHECK(*handle->result() == refgen::ResultCode::aborted_by_deactivation);
  CHECK_FALSE(inbox.take_goal().has_value());
}

TEST_CASE("invalid trajectories come back as result codes, not goals")
{
  transport::Inbox inbox;
  refgen::Limits limits;
  limits.position_min = vec3(-1, -1, -1);
  limits.position_max = vec3(1, 1, 1);
  inbox.configure(limits, 3, false);

  refgen::Trajectory empty;
  empty.waypoints = std::vector<refgen::JointWaypoint>{};
  auto verdict = inbox.submit_trajectory(empty);
  REQUIRE(std::holds_alternative<refgen::ResultCode>(verdict));
  CHECK(std::get<refgen::ResultCode>(verdict) == refgen::ResultCode::rejected_dimension);

  verdict = inbox.submit_trajectory(joint_traj(5.0));  // outside the position band
  REQUIRE(std::holds_alternative<refgen::ResultCode>(verdict));
  CHECK(std::get<refgen::ResultCode>(verdict) == refgen::ResultCode::rejected_limits);

  // Nothing pending after rejections.
  CHECK_FALSE(inbox.take_goal().has_value());
}

TEST_CASE("arrival sequence orders topics against goals")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 3, false);

  inbox.publish_reference(joint_ref(vec3(0.1, 0, 0)));
  const auto handle = std::get<transport::GoalHandle>(inbox.submit_trajectory(joint_traj(0.2)));
  inbox.publish_reference(joint_ref(vec3(0.3, 0, 0)));

  const auto goal = inbox.take_goal();
  const auto topic = inbox.take_topic();
  REQUIRE(goal.has_value());
  REQUIRE(topic.has_value());
  // The goal arrived between the two topic publishes; the drained topic is
  // the later one, so it outranks the goal.
  CHECK(goal->sequence == 2);
  CHECK(topic->sequence == 3);
  CHECK(topic->sequence > goal->sequence);
  handle->resolve(refgen::ResultCode::aborted_by_deactivation);
}

TEST_CASE("concurrent publishers never corrupt a drained sample")
{
  transport::Inbox inbox;
  inbox.configure(refgen::Limits::unbounded(), 3, false);
  constexpr int kPerThread = 10000;

  auto publisher = [&](double tag) {
    for (int i = 0; i < kPerThread; ++i) {
      // Tie the two entries together so a torn sample is detectable.
      const double x = tag + i;
      inbox.publish_reference(joint_ref(vec3(x, -x, tag)));
      std::this_thread::yield();
    }
  };

  std::thread t1(publisher, 1e6);
  std::thread t2(publisher, 2e6);

  std::uint64_t coherent_reads = 0;
  while (inbox.published_count() < 2 * kPerThread) {
    if (const auto drained = inbox.take_topic()) {
      const auto & q = std::get<refgen::JointReference>(drained->reference).positions;
      CHECK(q[0] == -q[1]);
      const double tag = q[2];
      CHECK((tag == 1e6 || tag == 2e6));
      CHECK(q[0] >= tag);
      CHECK(q[0] < tag + kPerThread);
      ++coherent_reads;
    } else {
      std::this_thread::yield();
    }
  }
  t1.join();
  t2.join();
  CHECK(inbox.published_count() == 2 * kPerThread);
  CHECK(coherent_reads > 0);
}

TEST_CASE("destroying an inbox with a pending goal does not leak or crash")
{
  auto handle = [] {
    transport::Inbox inbox;
    inbox.configure(refgen::Limits::unbounded(), 3, false);
    return std::get<transport::GoalHandle>(inbox.submit_trajectory(joint_traj(0.4)));
  }();
  // The inbox is gone; the handle survives and is still pending. The owner
  // of the pipeline is responsible for resolving leftovers at deactivation.
  CHECK(handle->status() == transport::GoalStatus::pending);
  handle->resolve(refgen::ResultCode::aborted_by_deactivation);
}
