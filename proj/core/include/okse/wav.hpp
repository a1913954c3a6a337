#pragma once

#include <filesystem>

#include "okse/framing.hpp"

namespace okse {

/// Reads a mono 16-bit PCM WAV file; samples are normalized to [-1, 1)
/// by dividing by 32768. Anything other than mono 16-bit PCM throws
/// FormatError.
Waveform read_wav(const std::filesystem::path& path);

/// Writes mono 16-bit PCM; samples are clamped to [-1, 1) and re-quantized.
void write_wav(const std::filesystem::path& path, const Waveform& w);

}  // namespace okse
