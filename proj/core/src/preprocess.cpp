#include "okse/preprocess.hpp"

#include <cmath>

#include "okse/errors.hpp"

namespace okse {

std::vector<double> trim_overlap(const std::vector<std::vector<double>>& blocks,
                                 const FramingDescriptor& descriptor) {
  if (descriptor.mode != FramingMode::Overlapping) {
    throw InvalidParameterError("trim_overlap: requires overlapping-mode blocks");
  }
  const std::size_t m = descriptor.block_size;
  const std::size_t s = descriptor.stride;
  std::vector<double> out;
  if (blocks.empty()) {
    return out;
  }
  out.reserve(m + (blocks.size() - 1) * s);
  out.insert(out.end(), blocks[0].begin(), blocks[0].end());
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    out.insert(out.end(), blocks[i].begin() + (m - s), blocks[i].end());
  }
  return out;
}

std::vector<double> trim_overlap(const FramedSignal& f) {
  return trim_overlap(f.blocks, f.descriptor);
}

std::vector<double> trim_overlap(const EncryptedSignal& e) {
  return trim_overlap(e.blocks, e.descriptor);
}

namespace {

double sinc(double x) {
  if (x == 0.0) {
    return 1.0;
  }
  return std::sin(M_PI * x) / (M_PI * x);
}

}  // namespace

std::vector<double> design_lowpass(const LowPassSpec& spec) {
  if (spec.sample_rate == 0) {
    throw InvalidParameterError("design_lowpass: zero sample rate");
  }
  if (spec.cutoff_hz <= 0.0 || spec.cutoff_hz >= spec.sample_rate / 2.0) {
    throw InvalidParameterError("design_lowpass: cutoff must lie in (0, Nyquist)");
  }
  if (spec.taps < 3 || spec.taps % 2 == 0) {
    throw InvalidParameterError("design_lowpass: taps must be odd and >= 3");
  }
  const std::size_t n = spec.taps;
  const double center = (n - 1) / 2.0;
  const double fc = spec.cutoff_hz / (spec.sample_rate / 2.0);  // fraction of Nyquist

  std::vector<double> h(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double window = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
    h[i] = window * sinc(fc * (i - center));
    sum += h[i];
  }
  for (double& v : h) {
    v /= sum;
  }
  return h;
}

Waveform lowpass(const Waveform& w, const LowPassSpec& spec) {
  LowPassSpec effective = spec;
  effective.sample_rate = w.sample_rate;
  std::vector<double> h = design_lowpass(effective);
  const std::ptrdiff_t delay = static_cast<std::ptrdiff_t>((h.size() - 1) / 2);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.samples.size());

  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.assign(w.samples.size(), 0.0);
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(h.size()); ++j) {
      std::ptrdiff_t src = t + delay - j;
      if (src >= 0 && src < n) {
        acc += h[j] * w.samples[src];
      }
    }
    out.samples[t] = acc;
  }
  return out;
}

}  // namespace okse
