#include "okse/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "okse/errors.hpp"

namespace okse {

namespace {

std::uint16_t read_u16le(const std::uint8_t* p) {
  return std::uint16_t(p[0]) | std::uint16_t(p[1]) << 8;
}

std::uint32_t read_u32le(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
         std::uint32_t(p[3]) << 24;
}

void write_u16le(std::ofstream& out, std::uint16_t v) {
  char b[2] = {char(v & 0xFF), char(v >> 8)};
  out.write(b, 2);
}

void write_u32le(std::ofstream& out, std::uint32_t v) {
  char b[4] = {char(v & 0xFF), char((v >> 8) & 0xFF), char((v >> 16) & 0xFF), char(v >> 24)};
  out.write(b, 4);
}

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open WAV file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* hdr = bytes.data() + pos;
    std::uint32_t chunk_size = read_u32le(hdr + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) {
      throw FormatError("WAV chunk extends past end of file");
    }
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw FormatError("WAV fmt chunk too small");
      }
      format = read_u16le(bytes.data() + body);
      channels = read_u16le(bytes.data() + body + 2);
      sample_rate = read_u32le(bytes.data() + body + 4);
      bits = read_u16le(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw FormatError("WAV file missing fmt or data chunk");
  }
  if (format != 1 || channels != 1 || bits != 16) {
    throw FormatError("unsupported WAV format: need mono 16-bit PCM");
  }
  if (sample_rate == 0) {
    throw FormatError("WAV declares zero sample rate");
  }

  Waveform w;
  w.sample_rate = sample_rate;
  std::size_t n = data_size / 2;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int16_t s = static_cast<std::int16_t>(read_u16le(data + 2 * i));
    w.samples[i] = s / 32768.0;
  }
  return w;
}

void write_wav(const std::filesystem::path& path, const Waveform& w) {
  if (w.sample_rate == 0) {
    throw InvalidParameterError("write_wav: zero sample rate");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open WAV file for writing: " + path.string());
  }
  const std::uint32_t data_size = static_cast<std::uint32_t>(w.samples.size() * 2);

  out.write("RIFF", 4);
  write_u32le(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32le(out, 16);
  write_u16le(out, 1);  // PCM
  write_u16le(out, 1);  // mono
  write_u32le(out, w.sample_rate);
  write_u32le(out, w.sample_rate * 2);  // byte rate
  write_u16le(out, 2);                  // block align
  write_u16le(out, 16);                 // bits per sample
  out.write("data", 4);
  write_u32le(out, data_size);

  for (double v : w.samples) {
    double scaled = v * 32768.0;
    long q = std::lround(scaled);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    std::uint16_t u = static_cast<std::uint16_t>(static_cast<std::int16_t>(q));
    char b[2] = {char(u & 0xFF), char(u >> 8)};
    out.write(b, 2);
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace okse
