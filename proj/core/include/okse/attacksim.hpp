#pragma once

#include <array>

#include "okse/framing.hpp"
#include "okse/keys.hpp"
#include "okse/rng.hpp"

namespace okse::sim {

/// Synthetic stand-in for a speech corpus: each speaker gets a pitch and
/// formant signature, each vocabulary token a band-energy pattern, and an
/// utterance is a concatenation of token segments shaped by the speaker.
struct CorpusConfig {
  std::size_t n_speakers = 6;
  std::size_t utts_per_speaker = 16;
  std::size_t tokens_per_utt = 6;
  std::size_t vocab_size = 8;  // at most max_vocab_size()
  std::uint32_t sample_rate = 16000;
  std::size_t segment_length = 1000;  // samples per token
};

/// Largest vocabulary the token pattern table supports.
std::size_t max_vocab_size();

struct Utterance {
  Waveform audio;
  std::size_t speaker_id = 0;
  std::vector<std::size_t> tokens;
};

struct SyntheticCorpus {
  CorpusConfig config;
  Seed seed{};
  std::vector<Utterance> utterances;
};

/// Fully deterministic in (config, seed); regeneration is bit-identical.
SyntheticCorpus generate_corpus(const CorpusConfig& config, const Seed& seed);
SyntheticCorpus generate_corpus(std::size_t n_speakers, std::size_t utts_per_speaker,
                                std::size_t tokens_per_utt, const Seed& seed);

/// Victim-side encryption configuration for a simulated run.
struct KeyConfig {
  std::size_t n_keys = 1;
  std::size_t dim = 10;    // block size M
  std::size_t stride = 5;  // framing stride S
  bool identity = false;   // identity matrices: encryption disabled
};

/// log1p magnitude-spectrum feature of one token-length segment.
std::vector<double> spectral_feature(const std::vector<double>& segment);

/// Matched-filter token classifier over per-segment spectra.
struct SurrogateAsr {
  std::size_t vocab_size = 0;
  std::size_t segment_length = 0;
  std::vector<std::vector<double>> token_templates;
  bool adapted = false;
  std::size_t adapted_n_keys = 0;
};

SurrogateAsr train_asr(const std::vector<Utterance>& data, std::size_t vocab_size,
                       std::size_t segment_length);
std::vector<std::size_t> transcribe(const SurrogateAsr& asr, const Waveform& audio);

/// Speaker embedding: time-averaged log-magnitude spectrum.
std::vector<double> utterance_embedding(const Waveform& audio, std::size_t segment_length);

struct ScenarioReport {
  int scenario = 0;
  KeyConfig config;
  bool lowpass = false;
  double wer_percent = 0.0;
  double eer_percent = 0.0;
  Seed run_seed{};
};

/// Ignorant attacker: surrogates trained on the unencrypted corpus half
/// attack the victim-encrypted other half (always overlap-trimmed,
/// optionally low-pass filtered at 4 kHz). EER scores encrypted queries
/// against unencrypted enrollment.
ScenarioReport run_scenario1(const SyntheticCorpus& corpus, const KeyConfig& config,
                             bool use_lowpass, const Seed& run_seed);

/// Semi-informed attacker: retrains surrogates on self-encrypted data
/// (fresh random key set per utterance), then attacks the victim's
/// queries. EER scores encrypted queries against encrypted enrollment.
ScenarioReport run_scenario2(const SyntheticCorpus& corpus, const KeyConfig& config,
                             const Seed& run_seed);

struct BaselineReport {
  double wer_percent = 0.0;
  double eer_percent = 0.0;
};

/// Attack on the untouched queries: no encryption, no preprocessing.
/// Identity-keyset scenario runs reproduce these numbers exactly.
BaselineReport run_baseline(const SyntheticCorpus& corpus);

/// The five fixed seeds the shipped trend benchmark runs over.
const std::array<Seed, 5>& default_benchmark_seeds();

}  // namespace okse::sim
