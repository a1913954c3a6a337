// Acceptance suite: every release gate runs here, one line per criterion.
// Each criterion prints [PASS]/[FAIL] with its runtime; the process exits
// nonzero if any gate fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "okse/attacksim.hpp"
#include "okse/cipher.hpp"
#include "okse/convfront.hpp"
#include "okse/errors.hpp"
#include "okse/keys.hpp"
#include "okse/metrics.hpp"
#include "okse/preprocess.hpp"
#include "../oracles.hpp"
#include "../test_util.hpp"

using namespace okse;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && pass) {
      pass = false;
      detail = message;
    }
  }
};

ConvFrontend random_frontend(ChaChaRng& rng, std::size_t m, std::size_t s, std::size_t c,
                             bool with_bias) {
  ConvFrontend front;
  front.kernel_size = m;
  front.stride = s;
  front.channels = c;
  for (std::size_t i = 0; i < c; ++i) {
    front.kernels.push_back(test::random_vector(rng, m));
  }
  if (with_bias) {
    front.bias = test::random_vector(rng, c);
  }
  return front;
}

double pipeline_max_abs_deviation(const ConvFrontend& model, const Waveform& w,
                                  const SecretKeySet& signal_keys,
                                  const SecretKeySet& model_keys) {
  FeatureSequence plain = conv_forward(model, w);
  EncryptedSignal enc =
      encrypt(frame_overlapping(w, model.kernel_size, model.stride), signal_keys);
  FeatureSequence out = encrypted_forward(encrypt_model(model, model_keys), enc);
  double worst = 0.0;
  for (std::size_t i = 0; i < plain.frames.size(); ++i) {
    for (std::size_t c = 0; c < plain.frames[i].size(); ++c) {
      worst = std::max(worst, std::fabs(plain.frames[i][c] - out.frames[i][c]));
    }
  }
  return worst;
}

// 1. Correct-key equivalence: encrypted pipeline vs plain forward pass.
Outcome criterion_correct_key() {
  Outcome out;
  ChaChaRng rng(seed_from_hex("ac01"));
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = 2 + rng.next_below(15);           // 2..16
    std::size_t s = 1 + rng.next_below(m);            // 1..M
    std::size_t n = 1 + rng.next_below(8);            // 1..8
    std::size_t c = 1 + rng.next_below(8);            // 1..8
    std::size_t t = m + rng.next_below(401 - m);      // M..400
    ConvFrontend model = random_frontend(rng, m, s, c, trial % 2 == 0);
    Waveform w = test::random_waveform(rng, t);
    SecretKeySet keys = generate_keyset(n, m, derive_seed(seed_from_hex("ac01"), "k", trial));
    double dev = pipeline_max_abs_deviation(model, w, keys, keys);
    out.require(dev <= 1e-9,
                "case " + std::to_string(trial) + ": deviation " + std::to_string(dev));
  }
  return out;
}

// 2. Wrong-key divergence: mismatched key sets must disagree.
Outcome criterion_wrong_key() {
  Outcome out;
  ChaChaRng rng(seed_from_hex("ac02"));
  int diverged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 4 + rng.next_below(13);
    std::size_t s = 1 + rng.next_below(m);
    std::size_t n = 1 + rng.next_below(8);
    std::size_t c = 1 + rng.next_below(8);
    std::size_t t = 4 * m + rng.next_below(300);
    ConvFrontend model = random_frontend(rng, m, s, c, false);
    Waveform w = test::random_waveform(rng, t);
    SecretKeySet signal_keys =
        generate_keyset(n, m, derive_seed(seed_from_hex("ac02"), "sig", trial));
    SecretKeySet model_keys =
        generate_keyset(n, m, derive_seed(seed_from_hex("ac02"), "mod", trial));

    FeatureSequence plain = conv_forward(model, w);
    EncryptedSignal enc = encrypt(frame_overlapping(w, m, s), signal_keys);
    FeatureSequence enc_out = encrypted_forward(encrypt_model(model, model_keys), enc);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < plain.frames.size(); ++i) {
      for (std::size_t ch = 0; ch < c; ++ch) {
        double d = enc_out.frames[i][ch] - plain.frames[i][ch];
        num += d * d;
        den += plain.frames[i][ch] * plain.frames[i][ch];
      }
    }
    if (den > 0.0 && std::sqrt(num / den) >= 0.1) {
      ++diverged;
    }
  }
  out.require(diverged >= 99,
              "only " + std::to_string(diverged) + "/100 cases diverged by >= 0.1");
  return out;
}

// 3. Stride rewrite: overlapping framing + stride-M model equals the
// stride-S model exactly.
Outcome criterion_stride_rewrite() {
  Outcome out;
  ChaChaRng rng(seed_from_hex("ac03"));
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m, s;
    if (trial < 20) {
      m = 10;  // the kernel-10 stride-5 front-end configuration
      s = 5;
    } else {
      m = 2 + rng.next_below(15);
      s = 1 + rng.next_below(m - 1);  // S < M
    }
    std::size_t c = 1 + rng.next_below(4);
    std::size_t t = m + rng.next_below(400 - m);
    ConvFrontend model = random_frontend(rng, m, s, c, trial % 3 == 0);
    Waveform w = test::random_waveform(rng, t);

    StrideRewrite rewrite = rewrite_stride(model);
    Waveform rearranged;
    rearranged.sample_rate = w.sample_rate;
    rearranged.samples = concat_frames(frame_overlapping(w, rewrite.block_size, rewrite.stride));

    FeatureSequence direct = conv_forward(model, w);
    FeatureSequence via_rewrite = conv_forward(rewrite.model, rearranged);
    out.require(direct.frames.size() == via_rewrite.frames.size(), "frame count mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < direct.frames.size(); ++i) {
      for (std::size_t ch = 0; ch < c; ++ch) {
        worst = std::max(worst, std::fabs(direct.frames[i][ch] - via_rewrite.frames[i][ch]));
      }
    }
    out.require(worst <= 1e-12,
                "case " + std::to_string(trial) + ": deviation " + std::to_string(worst));
  }
  return out;
}

// 4. Length identities for overlapping framing and trimming.
Outcome criterion_length_identities() {
  Outcome out;
  ChaChaRng rng(seed_from_hex("ac04"));
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t m = 1 + rng.next_below(32);
    std::size_t s = 1 + rng.next_below(m);
    std::size_t t = m + rng.next_below(500);
    Waveform w = test::random_waveform(rng, t);
    FramedSignal f = frame_overlapping(w, m, s);
    std::size_t l = (t - m) / s + 1;
    out.require(f.block_count() == l, "block count != floor((T-M)/S+1)");
    out.require(concat_frames(f).size() == l * m, "concatenated length != L*M");
    std::size_t trimmed = trim_overlap(f).size();
    out.require(trimmed == m + (l - 1) * s, "trimmed length != M+(L-1)S");
    if ((t - m) % s == 0) {
      out.require(trimmed == t, "window-covered input: trimmed length != T");
    }
  }
  return out;
}

// 5. Cipher round trip and norm preservation.
Outcome criterion_cipher_round_trip() {
  Outcome out;
  ChaChaRng rng(seed_from_hex("ac05"));
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = 1 + rng.next_below(32);
    std::size_t n = 1 + rng.next_below(16);
    std::size_t blocks = 1 + rng.next_below(24);
    Waveform w = test::random_waveform(rng, blocks * m);
    FramedSignal f = frame_plain(w, m);
    SecretKeySet keys = generate_keyset(n, m, derive_seed(seed_from_hex("ac05"), "k", trial));

    EncryptedSignal e = encrypt(f, keys);
    for (std::size_t i = 0; i < blocks; ++i) {
      double norm_in = 0.0, norm_out = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        norm_in += f.blocks[i][k] * f.blocks[i][k];
        norm_out += e.blocks[i][k] * e.blocks[i][k];
      }
      out.require(std::fabs(std::sqrt(norm_in) - std::sqrt(norm_out)) <= 1e-12,
                  "norm not preserved");
    }

    FramedSignal r = decrypt(e, keys);
    for (std::size_t i = 0; i < blocks; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        out.require(std::fabs(r.blocks[i][k] - f.blocks[i][k]) <= 1e-12,
                    "round trip exceeded 1e-12");
      }
    }
  }
  return out;
}

// 6. WER/EER against brute-force oracles; chance-level EER sanity.
Outcome criterion_metric_oracles() {
  Outcome out;

  // Exhaustive word-sequence sweep over a two-letter alphabet.
  std::vector<std::vector<std::string>> sequences = {{}};
  {
    std::vector<std::vector<std::string>> frontier = {{}};
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::vector<std::string>> next;
      for (const auto& base : frontier) {
        for (const char* wtok : {"a", "b"}) {
          auto seq = base;
          seq.push_back(wtok);
          next.push_back(seq);
          sequences.push_back(seq);
        }
      }
      frontier = std::move(next);
    }
  }
  for (const auto& ref : sequences) {
    if (ref.empty()) {
      continue;
    }
    for (const auto& hyp : sequences) {
      std::size_t got = word_edit_distance(ref, hyp);
      std::size_t want = test::edit_distance_recursive(ref, 0, hyp, 0);
      out.require(got == want, "edit distance mismatch in exhaustive sweep");
    }
  }
  // Randomized six-word cases over a three-letter alphabet.
  ChaChaRng rng(seed_from_hex("ac06"));
  const char* vocab[3] = {"x", "y", "z"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> ref(1 + rng.next_below(6)), hyp(rng.next_below(7));
    for (auto& wtok : ref) {
      wtok = vocab[rng.next_below(3)];
    }
    for (auto& wtok : hyp) {
      wtok = vocab[rng.next_below(3)];
    }
    out.require(word_edit_distance(ref, hyp) == test::edit_distance_recursive(ref, 0, hyp, 0),
                "edit distance mismatch on random case");
  }

  // Exhaustive EER sweep: every score assignment from a three-value grid
  // for class sizes up to 4+4, plus randomized instances up to 12 scores.
  const double grid[3] = {0.25, 0.5, 0.75};
  for (std::size_t nt = 1; nt <= 4; ++nt) {
    for (std::size_t nn = 1; nn <= 4; ++nn) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i < nt + nn; ++i) {
        combos *= 3;
      }
      for (std::size_t code = 0; code < combos; ++code) {
        std::vector<Trial> trials;
        std::size_t c = code;
        for (std::size_t i = 0; i < nt + nn; ++i) {
          trials.push_back({grid[c % 3], i < nt});
          c /= 3;
        }
        out.require(std::fabs(eer(trials) - test::eer_oracle(trials)) <= 1e-9,
                    "eer oracle mismatch in exhaustive grid");
      }
    }
  }
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t nt = 1 + rng.next_below(11);
    std::size_t nn = 1 + rng.next_below(12 - nt < 1 ? 1 : 12 - nt);
    std::vector<Trial> trials;
    for (std::size_t i = 0; i < nt + nn; ++i) {
      trials.push_back({static_cast<double>(rng.next_below(9)) / 8.0, i < nt});
    }
    out.require(std::fabs(eer(trials) - test::eer_oracle(trials)) <= 1e-9,
                "eer oracle mismatch on random instance");
  }

  // Shuffled labels over one distribution sit at chance level.
  std::vector<Trial> shuffled;
  for (int i = 0; i < 8000; ++i) {
    shuffled.push_back({rng.next_gaussian(), i % 2 == 0});
  }
  double chance = eer(shuffled);
  out.require(chance >= 48.0 && chance <= 52.0,
              "shuffled-label EER " + std::to_string(chance) + " outside 50 +/- 2");
  return out;
}

// 7. Attack-scenario trends over the five shipped benchmark seeds.
Outcome criterion_scenario_trends() {
  Outcome out;
  const std::size_t n_values[3] = {1, 3, 5};
  int s1_monotone = 0, ordering = 0;

  for (const Seed& seed : sim::default_benchmark_seeds()) {
    sim::SyntheticCorpus corpus =
        sim::generate_corpus(sim::CorpusConfig{}, derive_seed(seed, "corpus"));
    Seed run_seed = derive_seed(seed, "run");

    double s1_wer[3], s1_eer[3], s2_wer[3], s2_eer[3];
    for (int i = 0; i < 3; ++i) {
      sim::KeyConfig config;
      config.n_keys = n_values[i];
      sim::ScenarioReport r1 = sim::run_scenario1(corpus, config, false, run_seed);
      sim::ScenarioReport r2 = sim::run_scenario2(corpus, config, run_seed);
      s1_wer[i] = r1.wer_percent;
      s1_eer[i] = r1.eer_percent;
      s2_wer[i] = r2.wer_percent;
      s2_eer[i] = r2.eer_percent;
    }
    std::printf("    seed %02x: s1 wer %5.1f/%5.1f/%5.1f eer %5.2f/%5.2f/%5.2f | "
                "s2 wer %5.2f/%5.2f/%5.2f eer %5.2f/%5.2f/%5.2f\n",
                seed[31], s1_wer[0], s1_wer[1], s1_wer[2], s1_eer[0], s1_eer[1], s1_eer[2],
                s2_wer[0], s2_wer[1], s2_wer[2], s2_eer[0], s2_eer[1], s2_eer[2]);

    bool monotone = s1_wer[0] <= s1_wer[1] && s1_wer[1] <= s1_wer[2] &&
                    s1_eer[0] <= s1_eer[1] && s1_eer[1] <= s1_eer[2];
    if (monotone) {
      ++s1_monotone;
    }
    bool ordered = true;
    for (int i = 0; i < 3; ++i) {
      ordered = ordered && s2_wer[i] <= s1_wer[i] && s2_eer[i] <= s1_eer[i];
    }
    if (ordered) {
      ++ordering;
    }

    // (c) identity key set reproduces the unencrypted baseline exactly.
    sim::BaselineReport baseline = sim::run_baseline(corpus);
    sim::KeyConfig identity;
    identity.n_keys = 3;
    identity.identity = true;
    sim::ScenarioReport id1 = sim::run_scenario1(corpus, identity, false, run_seed);
    sim::ScenarioReport id2 = sim::run_scenario2(corpus, identity, run_seed);
    out.require(id1.wer_percent == baseline.wer_percent &&
                    id1.eer_percent == baseline.eer_percent,
                "identity scenario-1 run differs from the baseline");
    out.require(id2.wer_percent == baseline.wer_percent &&
                    id2.eer_percent == baseline.eer_percent,
                "identity scenario-2 run differs from the baseline");
  }

  out.require(s1_monotone >= 4, "scenario-1 monotone trend held on only " +
                                    std::to_string(s1_monotone) + "/5 seeds");
  out.require(ordering >= 4, "scenario-2 <= scenario-1 held on only " +
                                 std::to_string(ordering) + "/5 seeds");
  return out;
}

// 8. File formats: bit-exact round trips, corrupted files rejected with
// the right error class.
Outcome criterion_formats() {
  Outcome out;
  auto dir = std::filesystem::temp_directory_path() / "okse_acceptance";
  std::filesystem::create_directories(dir);

  SecretKeySet keys = generate_keyset(3, 10, seed_from_hex("ac08"));
  auto key_path = dir / "keys.oksk";
  save_keyset(keys, key_path);
  SecretKeySet loaded = load_keyset(key_path);
  for (std::size_t n = 0; n < keys.n_keys; ++n) {
    out.require(std::memcmp(loaded.matrices[n].data.data(), keys.matrices[n].data.data(),
                            keys.dim * keys.dim * 8) == 0,
                "key round trip not bit-exact");
  }

  ChaChaRng rng(seed_from_hex("ac09"));
  Waveform w = test::random_waveform(rng, 95);
  EncryptedSignal e = encrypt(frame_overlapping(w, 10, 5), keys);
  auto audio_path = dir / "audio.okea";
  save_encrypted(e, audio_path);
  EncryptedSignal re = load_encrypted(audio_path);
  out.require(re.block_count() == e.block_count(), "audio round trip lost blocks");
  for (std::size_t i = 0; i < e.block_count(); ++i) {
    out.require(std::memcmp(re.blocks[i].data(), e.blocks[i].data(), 10 * 8) == 0,
                "audio round trip not bit-exact");
  }
  out.require(re.key_fingerprint == e.key_fingerprint, "fingerprint changed in round trip");

  auto corrupt = [&](const std::filesystem::path& src, auto mutate) {
    std::ifstream in(src, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    mutate(bytes);
    auto dst = src;
    dst += ".bad";
    std::ofstream outf(dst, std::ios::binary);
    outf.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    return dst;
  };

  auto truncated_keys =
      corrupt(key_path, [](std::vector<char>& b) { b.resize(b.size() / 2); });
  try {
    load_keyset(truncated_keys);
    out.require(false, "truncated key file was accepted");
  } catch (const FormatError&) {
  } catch (const Error&) {
    out.require(false, "truncated key file raised the wrong error class");
  }

  auto perturbed_keys = corrupt(key_path, [](std::vector<char>& b) {
    double v;
    std::memcpy(&v, b.data() + 14, 8);
    v += 0.25;
    std::memcpy(b.data() + 14, &v, 8);
    std::uint32_t crc = crc32(b.data() + 4, b.size() - 8);
    for (int i = 0; i < 4; ++i) {
      b[b.size() - 4 + i] = static_cast<char>(crc >> (8 * i));
    }
  });
  try {
    load_keyset(perturbed_keys);
    out.require(false, "non-orthogonal key file was accepted");
  } catch (const IntegrityError&) {
  } catch (const Error&) {
    out.require(false, "non-orthogonal key file raised the wrong error class");
  }

  auto truncated_audio =
      corrupt(audio_path, [](std::vector<char>& b) { b.resize(b.size() - 5); });
  try {
    load_encrypted(truncated_audio);
    out.require(false, "truncated audio container was accepted");
  } catch (const FormatError&) {
  } catch (const Error&) {
    out.require(false, "truncated audio container raised the wrong error class");
  }

  auto bad_magic = corrupt(audio_path, [](std::vector<char>& b) { b[0] = 'x'; });
  try {
    load_encrypted(bad_magic);
    out.require(false, "bad-magic audio container was accepted");
  } catch (const FormatError&) {
  }
  return out;
}

struct Criterion {
  const char* name;
  double time_limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"correct-key equivalence <= 1e-9 (200 randomized cases)", 10.0, criterion_correct_key},
      {"wrong-key divergence >= 0.1 in >= 99/100 cases", 5.0, criterion_wrong_key},
      {"stride-rewrite exact <= 1e-12 (200 cases incl. kernel 10 / stride 5)", 5.0,
       criterion_stride_rewrite},
      {"framing length identities (1000 randomized cases)", 1.0, criterion_length_identities},
      {"cipher round trip and norm preservation <= 1e-12 (200 cases)", 2.0,
       criterion_cipher_round_trip},
      {"WER/EER brute-force oracle agreement; chance EER 50 +/- 2", 5.0,
       criterion_metric_oracles},
      {"attack-scenario trends on the 5 benchmark seeds", 60.0, criterion_scenario_trends},
      {"key/audio formats: bit-exact round trip, corruption rejected", 1.0, criterion_formats},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].time_limit_seconds) {
      outcome.pass = false;
      outcome.detail = "exceeded the " + std::to_string(criteria[i].time_limit_seconds) +
                       " s runtime budget";
    }
    std::printf("[%s] %zu. %s (%.2f s)%s%s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, seconds, outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
    if (!outcome.pass) {
      ++failures;
    }
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return 0;
}
