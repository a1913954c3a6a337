#include "okse/keys.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "okse/errors.hpp"

namespace okse {

namespace {

constexpr char kMagic[4] = {'O', 'K', 'S', 'K'};
constexpr std::uint16_t kVersion = 1;
constexpr double kLoadOrthTol = 1e-8;

void append_u16(std::vector<std::uint8_t>& buf, std::uint16_t v) {
  buf.push_back(static_cast<std::uint8_t>(v));
  buf.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void append_f64(std::vector<std::uint8_t>& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

/// version | n_keys | dim | matrix data, little-endian. This is the byte
/// range covered by both the file CRC and the fingerprint.
std::vector<std::uint8_t> serialize_payload(const SecretKeySet& keys) {
  std::vector<std::uint8_t> buf;
  buf.reserve(10 + keys.n_keys * keys.dim * keys.dim * 8);
  append_u16(buf, kVersion);
  append_u32(buf, static_cast<std::uint32_t>(keys.n_keys));
  append_u32(buf, static_cast<std::uint32_t>(keys.dim));
  for (const Matrix& m : keys.matrices) {
    for (double v : m.data) {
      append_f64(buf, v);
    }
  }
  return buf;
}

}  // namespace

SecretKeySet SecretKeySet::identity(std::size_t n_keys, std::size_t dim) {
  if (n_keys == 0 || dim == 0) {
    throw InvalidParameterError("identity keyset: n_keys and dim must be positive");
  }
  SecretKeySet keys;
  keys.n_keys = n_keys;
  keys.dim = dim;
  keys.matrices.assign(n_keys, Matrix::identity(dim));
  return keys;
}

SecretKeySet SecretKeySet::from_matrices(std::vector<Matrix> matrices) {
  if (matrices.empty()) {
    throw InvalidParameterError("explicit keyset: at least one matrix required");
  }
  const std::size_t dim = matrices.front().rows;
  for (const Matrix& m : matrices) {
    if (m.rows != dim || m.cols != dim || dim == 0) {
      throw InvalidParameterError("explicit keyset: all matrices must be square with equal dimension");
    }
  }
  SecretKeySet keys;
  keys.n_keys = matrices.size();
  keys.dim = dim;
  keys.matrices = std::move(matrices);
  KeyValidation report = validate_keyset(keys, kLoadOrthTol);
  if (!report.pass) {
    throw IntegrityError("explicit keyset: matrix is not orthogonal within 1e-8");
  }
  return keys;
}

SecretKeySet generate_keyset(std::size_t n_keys, std::size_t dim, const Seed& seed) {
  if (n_keys == 0 || dim == 0) {
    throw InvalidParameterError("generate_keyset: n_keys and dim must be positive");
  }
  ChaChaRng rng(seed);
  SecretKeySet keys;
  keys.n_keys = n_keys;
  keys.dim = dim;
  keys.seed = seed;
  keys.matrices.reserve(n_keys);
  for (std::size_t n = 0; n < n_keys; ++n) {
    Matrix g(dim, dim);
    for (double& v : g.data) {
      v = rng.next_gaussian();
    }
    keys.matrices.push_back(qr_orthonormal(std::move(g)));
  }
  return keys;
}

double KeyValidation::worst_defect() const {
  double worst = 0.0;
  for (const auto& m : per_matrix) {
    worst = std::max(worst, m.orthogonality_defect);
  }
  return worst;
}

KeyValidation validate_keyset(const SecretKeySet& keys, double tol) {
  KeyValidation report;
  report.tolerance = tol;
  report.pass = true;
  report.per_matrix.reserve(keys.matrices.size());
  for (const Matrix& m : keys.matrices) {
    KeyValidation::PerMatrix pm;
    pm.orthogonality_defect = orthogonality_defect(m);
    pm.det_magnitude = std::fabs(lu_determinant(m));
    if (pm.orthogonality_defect > tol || std::fabs(pm.det_magnitude - 1.0) > tol) {
      report.pass = false;
    }
    report.per_matrix.push_back(pm);
  }
  return report;
}

void save_keyset(const SecretKeySet& keys, const std::filesystem::path& path) {
  std::vector<std::uint8_t> payload = serialize_payload(keys);
  std::uint32_t crc = crc32(payload.data(), payload.size());

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open key file for writing: " + path.string());
  }
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  std::uint8_t crc_bytes[4];
  for (int i = 0; i < 4; ++i) {
    crc_bytes[i] = static_cast<std::uint8_t>(crc >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(crc_bytes), 4);
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

SecretKeySet load_keyset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open key file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 4 + 10 + 4) {
    throw FormatError("key file truncated: " + path.string());
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("bad key file magic");
  }
  const std::uint8_t* p = bytes.data() + 4;
  auto read_u16 = [&p]() {
    std::uint16_t v = std::uint16_t(p[0]) | std::uint16_t(p[1]) << 8;
    p += 2;
    return v;
  };
  auto read_u32 = [&p]() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= std::uint32_t(p[i]) << (8 * i);
    }
    p += 4;
    return v;
  };
  std::uint16_t version = read_u16();
  if (version != kVersion) {
    throw FormatError("unsupported key file version");
  }
  std::uint32_t n_keys = read_u32();
  std::uint32_t dim = read_u32();
  if (n_keys == 0 || dim == 0) {
    throw FormatError("key file declares zero n_keys or dim");
  }
  // Overflow-safe shape check: dim^2 fits in 64 bits for any u32 dim, but
  // n_keys * dim^2 * 8 may not.
  std::uint64_t per_matrix = std::uint64_t(dim) * dim;
  std::uint64_t available = (bytes.size() - 18) / 8;
  if (per_matrix > available || n_keys > available / per_matrix ||
      std::uint64_t(n_keys) * per_matrix != available || (bytes.size() - 18) % 8 != 0) {
    throw FormatError("key file size does not match declared shape");
  }
  std::uint32_t stored_crc = 0;
  for (int i = 0; i < 4; ++i) {
    stored_crc |= std::uint32_t(bytes[bytes.size() - 4 + i]) << (8 * i);
  }
  std::uint32_t actual_crc = crc32(bytes.data() + 4, bytes.size() - 8);
  if (stored_crc != actual_crc) {
    throw FormatError("key file CRC mismatch");
  }

  SecretKeySet keys;
  keys.n_keys = n_keys;
  keys.dim = dim;
  keys.matrices.reserve(n_keys);
  for (std::uint32_t n = 0; n < n_keys; ++n) {
    Matrix m(dim, dim);
    for (double& v : m.data) {
      std::uint64_t bits = 0;
      for (int i = 0; i < 8; ++i) {
        bits |= std::uint64_t(*p++) << (8 * i);
      }
      std::memcpy(&v, &bits, 8);
    }
    keys.matrices.push_back(std::move(m));
  }

  KeyValidation report = validate_keyset(keys, kLoadOrthTol);
  if (!report.pass) {
    throw IntegrityError("key file contains a non-orthogonal matrix");
  }
  return keys;
}

Digest256 keyset_fingerprint(const SecretKeySet& keys) {
  std::vector<std::uint8_t> payload = serialize_payload(keys);
  return sha256(payload.data(), payload.size());
}

}  // namespace okse
