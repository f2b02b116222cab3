#pragma once

// Counter-based random streams (Philox4x32-10). A stream is identified by
// (seed, replication, purpose, sub-index); the n-th draw of a stream is a pure
// function of that identity and n, so results never depend on which thread
// produced them or in what order.

#include <array>
#include <cmath>
#include <cstdint>

namespace hetnet {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxBlock philox4x32_10(PhiloxBlock counter, PhiloxKey key) noexcept;

enum class StreamPurpose : std::uint8_t {
  kBsRadius = 1,
  kBsAngle = 2,
  kFading = 3,
  kUserCount = 4,
  kUserPosition = 5,
};

class RandomStream {
 public:
  /// `sub` must fit in 24 bits.
  RandomStream(std::uint64_t seed, std::uint32_t replication, StreamPurpose purpose,
               std::uint32_t sub) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unit-mean exponential.
  double exponential() noexcept { return -std::log(uniform()); }

 private:
  PhiloxKey key_;
  std::uint32_t replication_;
  std::uint32_t tag_;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  int used_ = 4;
};

}  // namespace hetnet
