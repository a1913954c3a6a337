#include "okse/cipher.hpp"

#include <cstring>
#include <fstream>

#include "okse/errors.hpp"

namespace okse {

EncryptedSignal encrypt(const FramedSignal& f, const SecretKeySet& keys) {
  if (f.descriptor.block_size != keys.dim) {
    throw KeyMismatchError("encrypt: block size does not match key dimension");
  }
  EncryptedSignal e;
  e.descriptor = f.descriptor;
  e.n_keys_used = keys.n_keys;
  e.key_fingerprint = keyset_fingerprint(keys);
  e.blocks.reserve(f.blocks.size());
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    e.blocks.push_back(row_times(f.blocks[i], keys.key_for_block(i)));
  }
  return e;
}

FramedSignal decrypt(const EncryptedSignal& e, const SecretKeySet& keys) {
  if (e.descriptor.block_size != keys.dim) {
    throw KeyMismatchError("decrypt: block size does not match key dimension");
  }
  FramedSignal f;
  f.descriptor = e.descriptor;
  f.blocks.reserve(e.blocks.size());
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    f.blocks.push_back(row_times_transpose(e.blocks[i], keys.key_for_block(i)));
  }
  return f;
}

namespace {

constexpr char kMagic[4] = {'O', 'K', 'E', 'A'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void write_le(std::ofstream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    char b = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(&b, 1);
  }
}

}  // namespace

void save_encrypted(const EncryptedSignal& e, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open encrypted-audio file for writing: " + path.string());
  }
  out.write(kMagic, 4);
  write_le<std::uint16_t>(out, kVersion);
  std::uint8_t mode = e.descriptor.mode == FramingMode::Overlapping ? 1 : 0;
  out.write(reinterpret_cast<const char*>(&mode), 1);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.descriptor.block_size));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.descriptor.stride));
  write_le<std::uint64_t>(out, e.descriptor.original_length);
  write_le<std::uint32_t>(out, e.descriptor.pad_count);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.n_keys_used));
  out.write(reinterpret_cast<const char*>(e.key_fingerprint.data()), 32);
  write_le<std::uint64_t>(out, e.blocks.size());
  for (const auto& block : e.blocks) {
    for (double v : block) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, 8);
      write_le<std::uint64_t>(out, bits);
    }
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

EncryptedSignal load_encrypted(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open encrypted-audio file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  constexpr std::size_t kHeaderSize = 4 + 2 + 1 + 4 + 4 + 8 + 4 + 4 + 32 + 8;
  if (bytes.size() < kHeaderSize) {
    throw FormatError("encrypted-audio file truncated: " + path.string());
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("bad encrypted-audio magic");
  }
  const std::uint8_t* p = bytes.data() + 4;
  auto read_u16 = [&p]() {
    std::uint16_t v = std::uint16_t(p[0]) | std::uint16_t(p[1]) << 8;
    p += 2;
    return v;
  };
  auto read_u32 = [&p]() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    p += 4;
    return v;
  };
  auto read_u64 = [&p]() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    p += 8;
    return v;
  };

  if (read_u16() != kVersion) {
    throw FormatError("unsupported encrypted-audio version");
  }
  std::uint8_t mode = *p++;
  if (mode > 1) {
    throw FormatError("bad framing mode byte");
  }
  EncryptedSignal e;
  e.descriptor.mode = mode == 1 ? FramingMode::Overlapping : FramingMode::Plain;
  e.descriptor.block_size = read_u32();
  e.descriptor.stride = read_u32();
  e.descriptor.original_length = read_u64();
  e.descriptor.pad_count = read_u32();
  e.n_keys_used = read_u32();
  std::memcpy(e.key_fingerprint.data(), p, 32);
  p += 32;
  std::uint64_t block_count = read_u64();

  const std::size_t m = e.descriptor.block_size;
  if (m == 0 || e.n_keys_used == 0) {
    throw FormatError("encrypted-audio file declares zero block size or key count");
  }
  if (e.descriptor.mode == FramingMode::Overlapping &&
      (e.descriptor.stride == 0 || e.descriptor.stride > m)) {
    throw FormatError("encrypted-audio file declares invalid stride");
  }
  if (e.descriptor.mode == FramingMode::Plain && e.descriptor.pad_count >= m) {
    throw FormatError("encrypted-audio file declares pad count >= block size");
  }
  // Overflow-safe size check before trusting block_count.
  std::uint64_t available = (bytes.size() - kHeaderSize) / 8;
  if ((bytes.size() - kHeaderSize) % 8 != 0 || block_count > available / m ||
      block_count * m != available) {
    throw FormatError("encrypted-audio file size does not match declared shape");
  }
  // Block count must match the framing arithmetic of the descriptor.
  const std::uint64_t t = e.descriptor.original_length;
  const std::uint64_t stored = block_count * m;
  if (e.descriptor.mode == FramingMode::Plain) {
    if (t > stored || stored - t != e.descriptor.pad_count) {
      throw FormatError("encrypted-audio block count inconsistent with length and padding");
    }
  } else {
    if (t < m || block_count != (t - m) / e.descriptor.stride + 1) {
      throw FormatError("encrypted-audio block count inconsistent with length and stride");
    }
  }

  e.blocks.resize(block_count);
  for (std::uint64_t i = 0; i < block_count; ++i) {
    auto& block = e.blocks[i];
    block.resize(m);
    for (double& v : block) {
      std::uint64_t bits = read_u64();
      std::memcpy(&v, &bits, 8);
    }
  }
  return e;
}

}  // namespace okse
