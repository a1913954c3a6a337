#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "okse/hash.hpp"
#include "okse/linalg.hpp"
#include "okse/rng.hpp"

namespace okse {

/// A set of N random orthogonal M x M matrices cycled over waveform blocks.
/// Immutable after construction; safe to share across threads.
struct SecretKeySet {
  std::vector<Matrix> matrices;
  std::size_t n_keys = 0;
  std::size_t dim = 0;
  /// Seed is recorded for seeded generation, absent for explicit import.
  std::optional<Seed> seed;

  const Matrix& key_for_block(std::size_t block_index) const {
    return matrices[block_index % n_keys];
  }

  /// Key set of N identity matrices (encryption disabled).
  static SecretKeySet identity(std::size_t n_keys, std::size_t dim);

  /// Explicit-matrix import; validates shape and orthogonality at tol 1e-8.
  static SecretKeySet from_matrices(std::vector<Matrix> matrices);
};

/// Draws n_keys matrices Haar-uniformly from O(dim): each matrix is the
/// sign-corrected Q factor of the QR factorization of a standard-normal
/// matrix filled from a ChaCha20 stream. Deterministic in (n_keys, dim, seed).
SecretKeySet generate_keyset(std::size_t n_keys, std::size_t dim, const Seed& seed);

struct KeyValidation {
  struct PerMatrix {
    double orthogonality_defect;  // max |K K^T - I|
    double det_magnitude;         // |det K|
  };
  std::vector<PerMatrix> per_matrix;
  double tolerance = 0.0;
  bool pass = false;

  double worst_defect() const;
};

/// Report-only check: never throws on a bad key set.
KeyValidation validate_keyset(const SecretKeySet& keys, double tol);

/// Key file (binary, little-endian): magic "OKSK", version u16 = 1,
/// n_keys u32, dim u32, n_keys*dim*dim float64 row-major, CRC32 of the
/// payload (everything after the magic, before the CRC).
void save_keyset(const SecretKeySet& keys, const std::filesystem::path& path);

/// Loads and re-validates orthogonality at tol 1e-8. Malformed files throw
/// FormatError; parseable files with non-orthogonal matrices throw
/// IntegrityError.
SecretKeySet load_keyset(const std::filesystem::path& path);

/// SHA-256 of the key file payload. Stored alongside encrypted audio for
/// audit; does not reveal key material usable for decryption.
Digest256 keyset_fingerprint(const SecretKeySet& keys);

}  // namespace okse
