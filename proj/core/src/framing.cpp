#include "okse/framing.hpp"

#include "okse/errors.hpp"

namespace okse {

FramedSignal frame_plain(const Waveform& w, std::size_t block_size) {
  if (block_size == 0) {
    throw InvalidParameterError("frame_plain: block size must be positive");
  }
  if (w.samples.empty()) {
    throw InvalidParameterError("frame_plain: empty waveform");
  }
  const std::size_t t = w.samples.size();
  const std::size_t n_blocks = (t + block_size - 1) / block_size;

  FramedSignal f;
  f.descriptor.mode = FramingMode::Plain;
  f.descriptor.block_size = block_size;
  f.descriptor.stride = block_size;
  f.descriptor.original_length = t;
  f.descriptor.pad_count = static_cast<std::uint32_t>((block_size - t % block_size) % block_size);

  f.blocks.resize(n_blocks);
  for (std::size_t i = 0; i < n_blocks; ++i) {
    auto& block = f.blocks[i];
    block.assign(block_size, 0.0);
    const std::size_t begin = i * block_size;
    const std::size_t count = std::min(block_size, t - begin);
    for (std::size_t k = 0; k < count; ++k) {
      block[k] = w.samples[begin + k];
    }
  }
  return f;
}

FramedSignal frame_overlapping(const Waveform& w, std::size_t block_size, std::size_t stride) {
  if (block_size == 0 || stride == 0) {
    throw InvalidParameterError("frame_overlapping: block size and stride must be positive");
  }
  if (stride > block_size) {
    throw InvalidParameterError("frame_overlapping: stride larger than block size is unsupported");
  }
  if (w.samples.size() < block_size) {
    throw InvalidParameterError("frame_overlapping: waveform shorter than one block");
  }
  const std::size_t t = w.samples.size();
  const std::size_t n_blocks = (t - block_size) / stride + 1;

  FramedSignal f;
  f.descriptor.mode = FramingMode::Overlapping;
  f.descriptor.block_size = block_size;
  f.descriptor.stride = stride;
  f.descriptor.original_length = t;
  f.descriptor.pad_count = 0;

  f.blocks.resize(n_blocks);
  for (std::size_t i = 0; i < n_blocks; ++i) {
    const std::size_t begin = i * stride;
    f.blocks[i].assign(w.samples.begin() + begin, w.samples.begin() + begin + block_size);
  }
  return f;
}

std::vector<double> concat_frames(const FramedSignal& f) {
  std::vector<double> out;
  out.reserve(f.blocks.size() * f.descriptor.block_size);
  for (const auto& block : f.blocks) {
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

}  // namespace okse
