#include "okse/convfront.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "okse/errors.hpp"

namespace okse {

namespace {

void check_plain_shape(const ConvFrontend& m) {
  if (m.kernel_size == 0 || m.channels == 0 || m.stride == 0) {
    throw InvalidParameterError("front-end has zero kernel size, stride, or channels");
  }
  if (m.kernels.size() != m.channels) {
    throw InvalidParameterError("front-end kernel count does not match channels");
  }
  for (const auto& k : m.kernels) {
    if (k.size() != m.kernel_size) {
      throw InvalidParameterError("front-end kernel length does not match kernel_size");
    }
  }
  if (!m.bias.empty() && m.bias.size() != m.channels) {
    throw InvalidParameterError("front-end bias length does not match channels");
  }
  if (m.stride > m.kernel_size) {
    throw InvalidParameterError("front-end stride larger than kernel size is unsupported");
  }
}

}  // namespace

FeatureSequence conv_forward(const ConvFrontend& m, const Waveform& w) {
  if (m.encrypted) {
    throw InvalidParameterError("conv_forward: front-end is encrypted; use encrypted_forward");
  }
  check_plain_shape(m);
  if (w.samples.size() < m.kernel_size) {
    throw InvalidParameterError("conv_forward: input shorter than kernel");
  }
  const std::size_t out_len = (w.samples.size() - m.kernel_size) / m.stride + 1;

  FeatureSequence z;
  z.frames.resize(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    auto& frame = z.frames[i];
    frame.resize(m.channels);
    const std::size_t base = i * m.stride;
    for (std::size_t c = 0; c < m.channels; ++c) {
      const auto& kernel = m.kernels[c];
      double acc = 0.0;
      for (std::size_t k = 0; k < m.kernel_size; ++k) {
        acc += kernel[k] * w.samples[base + k];
      }
      frame[c] = m.bias.empty() ? acc : acc + m.bias[c];
    }
  }
  return z;
}

ConvFrontend encrypt_model(const ConvFrontend& m, const SecretKeySet& keys) {
  if (m.encrypted) {
    throw InvalidParameterError("encrypt_model: front-end is already encrypted");
  }
  check_plain_shape(m);
  if (keys.dim != m.kernel_size) {
    throw KeyMismatchError("encrypt_model: key dimension does not match kernel size");
  }
  ConvFrontend out;
  out.kernel_size = m.kernel_size;
  out.stride = m.stride;  // framing recipe; effective stride is kernel_size
  out.channels = m.channels;
  out.bias = m.bias;
  out.encrypted = true;
  out.n_keys = keys.n_keys;
  out.key_fingerprint = keyset_fingerprint(keys);
  out.branched_kernels.reserve(keys.n_keys * m.channels);
  for (std::size_t n = 0; n < keys.n_keys; ++n) {
    for (std::size_t c = 0; c < m.channels; ++c) {
      out.branched_kernels.push_back(transpose_times_col(keys.matrices[n], m.kernels[c]));
    }
  }
  return out;
}

FeatureSequence encrypted_forward(const ConvFrontend& m, const EncryptedSignal& e) {
  if (!m.encrypted) {
    throw InvalidParameterError("encrypted_forward: front-end is plain; use conv_forward");
  }
  if (e.descriptor.block_size != m.kernel_size) {
    throw KeyMismatchError("encrypted_forward: block size does not match kernel size");
  }
  if (e.n_keys_used != m.n_keys) {
    throw KeyMismatchError("encrypted_forward: signal and model branch counts differ");
  }
  FeatureSequence z;
  z.frames.resize(e.blocks.size());
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    const auto& block = e.blocks[i];
    const std::size_t branch = i % m.n_keys;
    auto& frame = z.frames[i];
    frame.resize(m.channels);
    for (std::size_t c = 0; c < m.channels; ++c) {
      const auto& kernel = m.branch_kernel(branch, c);
      double acc = 0.0;
      for (std::size_t k = 0; k < m.kernel_size; ++k) {
        acc += kernel[k] * block[k];
      }
      frame[c] = m.bias.empty() ? acc : acc + m.bias[c];
    }
  }
  return z;
}

StrideRewrite rewrite_stride(const ConvFrontend& m) {
  if (m.encrypted) {
    throw InvalidParameterError("rewrite_stride: applies to plain front-ends only");
  }
  check_plain_shape(m);
  if (m.stride >= m.kernel_size) {
    throw InvalidParameterError("rewrite_stride: stride already equals kernel size");
  }
  StrideRewrite r;
  r.model = m;
  r.model.stride = m.kernel_size;
  r.block_size = m.kernel_size;
  r.stride = m.stride;
  return r;
}

namespace {

std::string format_f64(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_f64(const std::string& tok) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw FormatError("model file: bad numeric value '" + tok + "'");
  }
  if (pos != tok.size()) {
    throw FormatError("model file: bad numeric value '" + tok + "'");
  }
  return v;
}

}  // namespace

void save_model(const ConvFrontend& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open model file for writing: " + path.string());
  }
  out << "okse-model 1\n";
  out << "kernel_size " << m.kernel_size << "\n";
  out << "stride " << m.stride << "\n";
  out << "channels " << m.channels << "\n";
  out << "bias " << (m.bias.empty() ? 0 : 1) << "\n";
  out << "state " << (m.encrypted ? "encrypted" : "plain") << "\n";
  if (m.encrypted) {
    out << "n_keys " << m.n_keys << "\n";
    out << "key_fingerprint " << digest_to_hex(m.key_fingerprint) << "\n";
    for (std::size_t n = 0; n < m.n_keys; ++n) {
      for (std::size_t c = 0; c < m.channels; ++c) {
        out << "kernel " << n << " " << c;
        for (double v : m.branch_kernel(n, c)) {
          out << " " << format_f64(v);
        }
        out << "\n";
      }
    }
  } else {
    for (std::size_t c = 0; c < m.channels; ++c) {
      out << "kernel " << c;
      for (double v : m.kernels[c]) {
        out << " " << format_f64(v);
      }
      out << "\n";
    }
  }
  if (!m.bias.empty()) {
    out << "bias_values";
    for (double v : m.bias) {
      out << " " << format_f64(v);
    }
    out << "\n";
  }
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

ConvFrontend load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open model file: " + path.string());
  }
  std::string header, version;
  if (!(in >> header >> version) || header != "okse-model" || version != "1") {
    throw FormatError("bad model file header");
  }

  ConvFrontend m;
  bool has_bias = false;
  std::string key;
  while (in >> key) {
    if (key == "kernel_size") {
      in >> m.kernel_size;
    } else if (key == "stride") {
      in >> m.stride;
    } else if (key == "channels") {
      in >> m.channels;
    } else if (key == "bias") {
      int flag;
      in >> flag;
      has_bias = flag != 0;
    } else if (key == "state") {
      std::string state;
      in >> state;
      if (state == "encrypted") {
        m.encrypted = true;
      } else if (state != "plain") {
        throw FormatError("model file: unknown state '" + state + "'");
      }
    } else if (key == "n_keys") {
      in >> m.n_keys;
    } else if (key == "key_fingerprint") {
      std::string hex;
      in >> hex;
      if (hex.size() != 64) {
        throw FormatError("model file: key fingerprint must be 64 hex characters");
      }
      auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw FormatError("model file: key fingerprint is not hex");
      };
      for (std::size_t i = 0; i < 32; ++i) {
        m.key_fingerprint[i] =
            static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
      }
    } else if (key == "kernel") {
      if (m.kernel_size == 0 || m.channels == 0) {
        throw FormatError("model file: kernel line before shape declaration");
      }
      std::vector<double> values(m.kernel_size);
      std::size_t branch = 0, channel = 0;
      if (m.encrypted) {
        in >> branch >> channel;
      } else {
        in >> channel;
      }
      std::string tok;
      for (double& v : values) {
        if (!(in >> tok)) {
          throw FormatError("model file: truncated kernel line");
        }
        v = parse_f64(tok);
      }
      if (m.encrypted) {
        if (m.n_keys == 0) {
          throw FormatError("model file: encrypted kernel before n_keys");
        }
        if (branch >= m.n_keys || channel >= m.channels) {
          throw FormatError("model file: kernel index out of range");
        }
        m.branched_kernels.resize(m.n_keys * m.channels);
        m.branched_kernels[branch * m.channels + channel] = std::move(values);
      } else {
        if (channel >= m.channels) {
          throw FormatError("model file: kernel index out of range");
        }
        m.kernels.resize(m.channels);
        m.kernels[channel] = std::move(values);
      }
    } else if (key == "bias_values") {
      m.bias.resize(m.channels);
      std::string tok;
      for (double& v : m.bias) {
        if (!(in >> tok)) {
          throw FormatError("model file: truncated bias line");
        }
        v = parse_f64(tok);
      }
    } else {
      throw FormatError("model file: unknown key '" + key + "'");
    }
    if (in.fail()) {
      throw FormatError("model file: malformed value after '" + key + "'");
    }
  }

  if (m.kernel_size == 0 || m.channels == 0 || m.stride == 0) {
    throw FormatError("model file: missing shape declaration");
  }
  if (has_bias != !m.bias.empty()) {
    throw FormatError("model file: bias flag does not match bias_values");
  }
  const auto expect_full = [](const std::vector<std::vector<double>>& ks, std::size_t want) {
    if (ks.size() != want) {
      return false;
    }
    for (const auto& k : ks) {
      if (k.empty()) {
        return false;
      }
    }
    return true;
  };
  if (m.encrypted) {
    if (m.n_keys == 0 || !expect_full(m.branched_kernels, m.n_keys * m.channels)) {
      throw FormatError("model file: missing encrypted kernels");
    }
  } else {
    if (!expect_full(m.kernels, m.channels)) {
      throw FormatError("model file: missing kernels");
    }
  }
  return m;
}

}  // namespace okse
