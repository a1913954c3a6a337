#pragma once

#include <filesystem>

#include "okse/framing.hpp"
#include "okse/keys.hpp"

namespace okse {

/// Block stream after orthogonal-key encryption. Carries the framing
/// descriptor of its source plus the fingerprint of the key set used
/// (audit only; never consulted for decryption).
struct EncryptedSignal {
  std::vector<std::vector<double>> blocks;
  FramingDescriptor descriptor;
  std::size_t n_keys_used = 0;
  Digest256 key_fingerprint{};

  std::size_t block_count() const { return blocks.size(); }
};

/// Block i becomes X_i * K_{i mod N}. Requires block size == key dimension.
EncryptedSignal encrypt(const FramedSignal& f, const SecretKeySet& keys);

/// Block i is multiplied by K_{i mod N}^T; the inverse of encrypt under
/// the same key set (round trip exact to ~1e-12).
FramedSignal decrypt(const EncryptedSignal& e, const SecretKeySet& keys);

/// Encrypted-audio container (binary, little-endian): magic "OKEA",
/// version u16 = 1, mode u8 (0 plain / 1 overlapping), M u32, S u32,
/// T u64, pad_count u32, n_keys u32, key_fingerprint 32 bytes,
/// block_count u64, then block_count*M float64 samples.
void save_encrypted(const EncryptedSignal& e, const std::filesystem::path& path);
EncryptedSignal load_encrypted(const std::filesystem::path& path);

}  // namespace okse
