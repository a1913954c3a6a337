#pragma once

#include "okse/cipher.hpp"
#include "okse/framing.hpp"

namespace okse {

struct LowPassSpec {
  double cutoff_hz = 4000.0;
  std::size_t taps = 101;  // odd, linear phase
  std::uint32_t sample_rate = 16000;
};

/// Removes the M-S duplicated samples between consecutive overlapping
/// blocks: output is block 0 followed by the last S samples of each later
/// block, length M + (L-1)*S. On unencrypted blocks this recovers the
/// window-covered prefix of the original signal exactly; on encrypted
/// blocks it restores the time scale only.
std::vector<double> trim_overlap(const std::vector<std::vector<double>>& blocks,
                                 const FramingDescriptor& descriptor);
std::vector<double> trim_overlap(const FramedSignal& f);
std::vector<double> trim_overlap(const EncryptedSignal& e);

/// Windowed-sinc (Hamming) low-pass taps, normalized to unity DC gain.
std::vector<double> design_lowpass(const LowPassSpec& spec);

/// Zero-phase FIR filtering: zero-padded convolution with center-tap delay
/// compensation. Output length equals input length; samples within half a
/// filter length of either edge see the zero padding. The waveform's own
/// sample rate governs the design, not spec.sample_rate.
Waveform lowpass(const Waveform& w, const LowPassSpec& spec);

}  // namespace okse
