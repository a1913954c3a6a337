#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>

namespace okse {

/// 256-bit seed, big-endian byte order when rendered as hex.
using Seed = std::array<std::uint8_t, 32>;

/// Parses up to 64 hex characters, left-padded with zeros ("01" == 0x00..01).
Seed seed_from_hex(std::string_view hex);
std::string seed_to_hex(const Seed& seed);

/// Derives an independent sub-seed from (base, label, index) via SHA-256.
Seed derive_seed(const Seed& base, std::string_view label, std::uint64_t index = 0);

/// Deterministic ChaCha20 keystream generator (RFC 8439 block function,
/// zero nonce, 32-bit block counter). The same seed always produces the
/// same stream on every platform.
class ChaChaRng {
 public:
  explicit ChaChaRng(const Seed& seed);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound);

  /// Standard normal variate (Box-Muller over the keystream).
  double next_gaussian();

 private:
  void refill();

  std::array<std::uint32_t, 16> state_{};
  std::array<std::uint32_t, 16> block_{};
  std::size_t pos_ = 16;  // consumed words in block_
  double spare_gaussian_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace okse
