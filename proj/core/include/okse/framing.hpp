#pragma once

#include <cstdint>
#include <vector>

namespace okse {

/// Mono waveform. Samples are amplitudes, nominally in [-1, 1) when read
/// from 16-bit PCM.
struct Waveform {
  std::vector<double> samples;
  std::uint32_t sample_rate = 16000;

  std::size_t length() const { return samples.size(); }
};

enum class FramingMode : std::uint8_t {
  Plain = 0,        // consecutive non-overlapping blocks, zero-padded tail
  Overlapping = 1,  // conv-aligned sliding windows, hop S, tail dropped
};

struct FramingDescriptor {
  FramingMode mode = FramingMode::Plain;
  std::size_t block_size = 0;       // M
  std::size_t stride = 0;           // S; equals block_size in plain mode
  std::uint64_t original_length = 0;  // T
  std::uint32_t pad_count = 0;      // plain mode only, < block_size
};

struct FramedSignal {
  std::vector<std::vector<double>> blocks;
  FramingDescriptor descriptor;

  std::size_t block_count() const { return blocks.size(); }
};

/// Splits into ceil(T/M) consecutive blocks of length M; the final block
/// is zero-padded when T is not divisible by M.
FramedSignal frame_plain(const Waveform& w, std::size_t block_size);

/// Sliding windows block[i] = samples[S*i .. S*i+M-1] for
/// i = 0 .. floor((T-M)/S), so consecutive blocks share M-S samples.
/// Trailing samples not covered by a full window are dropped.
FramedSignal frame_overlapping(const Waveform& w, std::size_t block_size, std::size_t stride);

/// Blocks joined in order; length is block_count * M.
std::vector<double> concat_frames(const FramedSignal& f);

}  // namespace okse
