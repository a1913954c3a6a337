#pragma once

#include <filesystem>

#include "okse/cipher.hpp"
#include "okse/framing.hpp"
#include "okse/keys.hpp"

namespace okse {

/// Output of the convolution front-end: frames[i] holds one value per
/// output channel.
struct FeatureSequence {
  std::vector<std::vector<double>> frames;

  std::size_t length() const { return frames.size(); }
};

/// First-layer 1D convolution: C kernels of length M applied with hop S,
/// optional per-channel bias. An encrypted front-end stores N*C branched
/// kernels (branch n holds K_n^T applied to each channel kernel), consumes
/// an encrypted block stream with effective stride M, and remembers the
/// original stride as the framing recipe the sender must use.
struct ConvFrontend {
  std::size_t kernel_size = 0;  // M
  std::size_t stride = 0;       // S; for encrypted models this is the framing
                                // recipe — the effective stride is kernel_size
  std::size_t channels = 0;     // C
  std::vector<std::vector<double>> kernels;  // [c], plain state only
  std::vector<double> bias;                  // empty means no bias

  bool encrypted = false;
  std::size_t n_keys = 0;
  std::vector<std::vector<double>> branched_kernels;  // [n * channels + c]
  Digest256 key_fingerprint{};

  const std::vector<double>& branch_kernel(std::size_t branch, std::size_t channel) const {
    return branched_kernels[branch * channels + channel];
  }
};

/// z_i[c] = sum_k kernel[c][k] * y[S*i + k] + bias[c], for
/// i = 0 .. floor((T-M)/S). Requires a plain front-end and T >= M.
FeatureSequence conv_forward(const ConvFrontend& m, const Waveform& w);

/// Branches the front-end into N encrypted kernel sets, branch n channel c
/// holding K_n^T * E_c. Bias is unaffected. Derived purely from the plain
/// model and the key set; no retraining.
ConvFrontend encrypt_model(const ConvFrontend& m, const SecretKeySet& keys);

/// Forward pass over an encrypted block stream: frame i is routed to
/// branch i mod N. With the key set that also encrypted the signal, output
/// matches conv_forward of the plain model on the original waveform.
FeatureSequence encrypted_forward(const ConvFrontend& m, const EncryptedSignal& e);

/// Stride-M front-end plus the overlapping-framing recipe that reproduces
/// a stride-S (< M) convolution exactly.
struct StrideRewrite {
  ConvFrontend model;      // stride == kernel_size, identical kernels
  std::size_t block_size;  // framing recipe: M
  std::size_t stride;      // framing recipe: original S
};

/// Rewrites a stride-S (< M) front-end as a stride-M one over overlapping
/// frames. conv_forward(rewritten, concat(frame_overlapping(w, M, S)))
/// equals conv_forward(m, w) for every w with T >= M.
StrideRewrite rewrite_stride(const ConvFrontend& m);

/// Model file (text key-value): kernel_size, stride, channels, bias flag,
/// kernel values with 17 significant digits; encrypted models additionally
/// record n_keys and key_fingerprint. The stride field always records the
/// framing recipe (original S), never the effective stride.
void save_model(const ConvFrontend& m, const std::filesystem::path& path);
ConvFrontend load_model(const std::filesystem::path& path);

}  // namespace okse
