#include "okse/rng.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <vector>

#include "okse/errors.hpp"
#include "okse/hash.hpp"

namespace okse {

Seed seed_from_hex(std::string_view hex) {
  if (hex.size() > 64) {
    throw InvalidParameterError("seed hex string longer than 64 characters");
  }
  if (hex.empty()) {
    throw InvalidParameterError("empty seed hex string");
  }
  Seed seed{};
  // Right-align the value: the last hex digit maps to the low nibble of
  // the last byte.
  std::size_t nibble = 0;  // counted from the end
  for (std::size_t i = hex.size(); i-- > 0;) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw InvalidParameterError(std::string("invalid hex character in seed: '") + c + "'");
    }
    std::size_t byte = 31 - nibble / 2;
    seed[byte] |= static_cast<std::uint8_t>(nibble % 2 == 0 ? v : v << 4);
    ++nibble;
  }
  return seed;
}

std::string seed_to_hex(const Seed& seed) {
  static const char* digits = "0123456789abcdef";
  std::string out(64, '0');
  for (std::size_t i = 0; i < 32; ++i) {
    out[2 * i] = digits[seed[i] >> 4];
    out[2 * i + 1] = digits[seed[i] & 0xf];
  }
  return out;
}

Seed derive_seed(const Seed& base, std::string_view label, std::uint64_t index) {
  std::vector<std::uint8_t> buf(base.begin(), base.end());
  buf.insert(buf.end(), label.begin(), label.end());
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<std::uint8_t>(index >> (8 * i)));
  }
  return sha256(buf.data(), buf.size());
}

namespace {

inline std::uint32_t rotl(std::uint32_t x, int n) {
  return (x << n) | (x >> (32 - n));
}

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) {
  a += b; d ^= a; d = rotl(d, 16);
  c += d; b ^= c; b = rotl(b, 12);
  a += b; d ^= a; d = rotl(d, 8);
  c += d; b ^= c; b = rotl(b, 7);
}

}  // namespace

ChaChaRng::ChaChaRng(const Seed& seed) {
  state_[0] = 0x61707865;
  state_[1] = 0x3320646e;
  state_[2] = 0x79622d32;
  state_[3] = 0x6b206574;
  for (int i = 0; i < 8; ++i) {
    state_[4 + i] = static_cast<std::uint32_t>(seed[4 * i]) |
                    static_cast<std::uint32_t>(seed[4 * i + 1]) << 8 |
                    static_cast<std::uint32_t>(seed[4 * i + 2]) << 16 |
                    static_cast<std::uint32_t>(seed[4 * i + 3]) << 24;
  }
  state_[12] = 0;  // block counter
  state_[13] = 0;  // nonce (always zero; streams separate via derive_seed)
  state_[14] = 0;
  state_[15] = 0;
}

void ChaChaRng::refill() {
  std::array<std::uint32_t, 16> x = state_;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  for (int i = 0; i < 16; ++i) {
    block_[i] = x[i] + state_[i];
  }
  state_[12] += 1;
  pos_ = 0;
}

std::uint32_t ChaChaRng::next_u32() {
  if (pos_ >= 16) {
    refill();
  }
  return block_[pos_++];
}

std::uint64_t ChaChaRng::next_u64() {
  std::uint64_t lo = next_u32();
  std::uint64_t hi = next_u32();
  return lo | (hi << 32);
}

double ChaChaRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t ChaChaRng::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw InvalidParameterError("next_below: zero bound");
  }
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) {
      return v % bound;
    }
  }
}

double ChaChaRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_gaussian_;
  }
  // u1 in (0, 1] keeps the log finite.
  double u1 = 1.0 - next_double();
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_gaussian_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace okse
