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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace refchain
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-contract argument handed to a math primitive.
class InvalidInput : public Error
{
public:
  using Error::Error;
};

/// Attempt to invert a matrix that is singular to working precision.
class SingularMatrix : public Error
{
public:
  using Error::Error;
};

/// Bad or incomplete component / scenario parameters, detected at configure time.
class ConfigError : public Error
{
public:
  using Error::Error;
};

/// Chain layout mismatch detected while connecting components to each other
/// or to the plant.
class WiringError : public Error
{
public:
  using Error::Error;
};

/// pipeline_step called with a cycle time that is not the expected next tick.
class CycleOrderError : public Error
{
public:
  using Error::Error;
};

/// Unrecoverable runtime failure inside the control loop. The pipeline halts
/// with its cycle index frozen; the harness decides what to do next.
class FaultStop : public Error
{
public:
  FaultStop(const std::string & what, std::uint64_t cycle, std::string component)
  : Error(what), cycle_(cycle), component_(std::move(component))
  {
  }

  std::uint64_t cycle() const { return cycle_; }
  const std::string & component() const { return component_; }

private:
  std::uint64_t cycle_;
  std::string component_;
};

/// Misuse of the goal-handle lifecycle, e.g. resolving a goal twice.
class ProtocolError : public Error
{
public:
  using Error::Error;
};

/// Log post-processing failure (unknown channel, malformed row).
class ReportError : public Error
{
public:
  using Error::Error;
};

/// Filesystem-level failure: unreadable input, unwritable log.
class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace refchain
