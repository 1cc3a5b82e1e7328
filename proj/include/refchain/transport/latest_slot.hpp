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

#include <array>
#include <atomic>
#include <cassert>
#include <cstdint>

namespace refchain::transport
{

/// Single-producer single-consumer latest-value cell with torn-read-free,
/// wait-free handoff.
///
/// Mechanism: triple buffering. The three slots are always partitioned into
/// a writer-owned back slot, a reader-owned front slot, and a middle slot
/// traded through one atomic word that packs {slot index, fresh flag}.
///
///   publish: write the back slot, then atomically exchange it into the
///            middle (marked fresh); the previous middle becomes the new
///            back. One store cascade plus one atomic RMW — wait-free.
///   poll:    if the middle is fresh, atomically exchange the front slot
///            into the middle (marked stale); the previous middle becomes
///            the new front and is read without any concurrent writer —
///            the writer can only touch the back and middle slots. One
///            load plus at most one atomic RMW — wait-free.
///
/// Neither side ever spins, retries, or blocks, so a saturating publisher
/// cannot stall the control thread, and the reader always observes a
/// complete, coherent value. Concurrent *writers* must serialize among
/// themselves (the inbox wraps publishes in a writer-side mutex).
template <typename T>
class LatestSlot
{
public:
  LatestSlot() = default;

  /// Writer side. Callers serialize concurrent writers externally.
  void publish(const T & value)
  {
    slots_[back_] = value;
    const std::uint32_t prev =
      middle_.exchange(pack(back_, true), std::memory_order_acq_rel);
    back_ = index_of(prev);
  }

  /// Reader side (single consumer). Returns true and copies the newest value
  /// out if one was published since the last poll.
  bool poll(T & out)
  {
    const std::uint32_t observed = middle_.load(std::memory_order_acquire);
    if (!is_fresh(observed)) {
      return false;
    }
    const std::uint32_t prev =
      middle_.exchange(pack(front_, false), std::memory_order_acq_rel);
    // The middle can only lose freshness through this reader, so whatever
    // the exchange returned is a fresh slot (possibly newer than observed).
    assert(is_fresh(prev));
    front_ = index_of(prev);
    out = slots_[front_];
    return true;
  }

  bool has_fresh() const { return is_fresh(middle_.load(std::memory_order_acquire)); }

private:
  static constexpr std::uint32_t kFreshBit = 4;

  static std::uint32_t pack(std::uint32_t index, bool fresh)
  {
    return index | (fresh ? kFreshBit : 0);
  }
  static std::uint32_t index_of(std::uint32_t packed) { return packed & 3; }
  static bool is_fresh(std::uint32_t packed) { return (packed & kFreshBit) != 0; }

  std::array<T, 3> slots_{};
  std::atomic<std::uint32_t> middle_{pack(1, false)};
  std::uint32_t back_ = 0;   // touched by the writer only
  std::uint32_t front_ = 2;  // touched by the reader only
};

}  // namespace refchain::transport
