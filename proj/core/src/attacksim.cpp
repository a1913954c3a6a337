#include "okse/attacksim.hpp"

#include <cmath>
#include <string>

#include "okse/cipher.hpp"
#include "okse/dsp.hpp"
#include "okse/errors.hpp"
#include "okse/metrics.hpp"
#include "okse/preprocess.hpp"

namespace okse::sim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::size_t kMaxVocab = 12;

// Speaker signature: fundamental with harmonic stack plus one formant,
// all below 1 kHz so the 4 kHz low-pass leaves speaker cues intact.
struct SpeakerSignature {
  double f0 = 0.0;
  double rolloff = 0.0;   // harmonic amplitude decay
  double formant_hz = 0.0;
  double formant_amp = 0.0;
};

constexpr int kSpeakerHarmonics = 5;
constexpr double kSpeakerAmp = 0.12;

// Every spectral line is emitted as a short comb with images spaced by
// sample_rate / 10, the aliasing grid of block-size-10 encryption at the
// canonical configuration: a block-periodic scrambler spreads a tone onto
// exactly this grid, and the grid subdivides by N as more keys cycle.
// Small key counts therefore leave the attacker's matched filters a
// structural foothold that fades as N grows.
constexpr double kImageWeights[6] = {0.22, 0.20, 0.17, 0.15, 0.14, 0.12};

// Token pattern table: two combs per token, base frequencies above every
// speaker line, with token-graded amplitude. Tokens differ both in
// placement and in energy; energy survives block-orthogonal encryption,
// since each block keeps its norm. Two combs of images give the matched
// filter ~10 lines per token to pool over.
constexpr double kTokenBase1Hz = 715.0;
constexpr double kTokenBase2Hz = 1177.0;
constexpr double kTokenStepHz = 45.0;
constexpr double kTokenAmpBase = 0.22;
constexpr double kTokenAmpGrowth = 1.15;
constexpr double kNoiseAmp = 0.01;

double token_amplitude(std::size_t token) {
  return kTokenAmpBase * std::pow(kTokenAmpGrowth, static_cast<double>(token));
}

std::vector<double> synthesize_segment(const SpeakerSignature& sig, std::size_t token,
                                       std::uint32_t sample_rate, std::size_t length,
                                       ChaChaRng& rng) {
  std::vector<double> seg(length, 0.0);
  const double dt = 1.0 / sample_rate;
  const double image_spacing = sample_rate / 10.0;
  const double nyquist = sample_rate / 2.0;

  auto add_tone = [&](double freq, double amp) {
    double phase = kTwoPi * rng.next_double();
    for (std::size_t i = 0; i < length; ++i) {
      seg[i] += amp * std::sin(kTwoPi * freq * i * dt + phase);
    }
  };
  auto add_comb = [&](double base, double amp) {
    for (int k = 0; k < 6; ++k) {
      double freq = base + k * image_spacing;
      if (freq < nyquist) {
        add_tone(freq, amp * kImageWeights[k]);
      }
    }
  };

  for (int h = 1; h <= kSpeakerHarmonics; ++h) {
    add_comb(sig.f0 * h, kSpeakerAmp * std::pow(sig.rolloff, h - 1));
  }
  add_comb(sig.formant_hz, sig.formant_amp);

  const double token_offset = kTokenStepHz * static_cast<double>(token);
  add_comb(kTokenBase1Hz + token_offset, token_amplitude(token) * 0.55);
  add_comb(kTokenBase2Hz + token_offset, token_amplitude(token) * 0.45);

  for (std::size_t i = 0; i < length; ++i) {
    seg[i] += kNoiseAmp * (2.0 * rng.next_double() - 1.0);
  }
  return seg;
}

double safe_cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) {
    return -2.0;
  }
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::vector<std::vector<double>> slice_segments(const Waveform& audio, std::size_t segment_length) {
  std::vector<std::vector<double>> slices;
  const std::size_t n = audio.samples.size();
  const std::size_t count = (n + segment_length - 1) / segment_length;
  slices.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> seg(segment_length, 0.0);
    const std::size_t begin = i * segment_length;
    const std::size_t take = std::min(segment_length, n - begin);
    for (std::size_t k = 0; k < take; ++k) {
      seg[k] = audio.samples[begin + k];
    }
    slices.push_back(std::move(seg));
  }
  return slices;
}

}  // namespace

std::size_t max_vocab_size() {
  return kMaxVocab;
}

SyntheticCorpus generate_corpus(const CorpusConfig& config, const Seed& seed) {
  if (config.n_speakers == 0 || config.utts_per_speaker == 0 || config.tokens_per_utt == 0 ||
      config.vocab_size == 0) {
    throw InvalidParameterError("generate_corpus: all counts must be positive");
  }
  if (config.vocab_size > kMaxVocab) {
    throw InvalidParameterError("generate_corpus: vocabulary exceeds the supported pattern space");
  }
  if (config.sample_rate == 0 || config.segment_length == 0) {
    throw InvalidParameterError("generate_corpus: sample rate and segment length must be positive");
  }

  SyntheticCorpus corpus;
  corpus.config = config;
  corpus.seed = seed;

  ChaChaRng speaker_rng(derive_seed(seed, "speakers"));
  std::vector<SpeakerSignature> signatures(config.n_speakers);
  for (std::size_t s = 0; s < config.n_speakers; ++s) {
    auto& sig = signatures[s];
    sig.f0 = 82.0 + 9.0 * static_cast<double>(s) + 2.0 * speaker_rng.next_double();
    sig.rolloff = 0.50 + 0.40 * speaker_rng.next_double();
    sig.formant_hz = 300.0 + 340.0 * speaker_rng.next_double();
    sig.formant_amp = 0.10 + 0.06 * speaker_rng.next_double();
  }

  ChaChaRng text_rng(derive_seed(seed, "text"));
  ChaChaRng wave_rng(derive_seed(seed, "wave"));
  corpus.utterances.reserve(config.n_speakers * config.utts_per_speaker);
  for (std::size_t s = 0; s < config.n_speakers; ++s) {
    for (std::size_t u = 0; u < config.utts_per_speaker; ++u) {
      Utterance utt;
      utt.speaker_id = s;
      utt.tokens.resize(config.tokens_per_utt);
      for (auto& tok : utt.tokens) {
        tok = text_rng.next_below(config.vocab_size);
      }
      utt.audio.sample_rate = config.sample_rate;
      utt.audio.samples.reserve(config.tokens_per_utt * config.segment_length);
      for (std::size_t tok : utt.tokens) {
        auto seg = synthesize_segment(signatures[s], tok, config.sample_rate,
                                      config.segment_length, wave_rng);
        utt.audio.samples.insert(utt.audio.samples.end(), seg.begin(), seg.end());
      }
      corpus.utterances.push_back(std::move(utt));
    }
  }
  return corpus;
}

SyntheticCorpus generate_corpus(std::size_t n_speakers, std::size_t utts_per_speaker,
                                std::size_t tokens_per_utt, const Seed& seed) {
  CorpusConfig config;
  config.n_speakers = n_speakers;
  config.utts_per_speaker = utts_per_speaker;
  config.tokens_per_utt = tokens_per_utt;
  return generate_corpus(config, seed);
}

std::vector<double> spectral_feature(const std::vector<double>& segment) {
  std::vector<double> mag = magnitude_spectrum(segment);
  std::vector<double> feature(mag.size() - 1);
  for (std::size_t i = 1; i < mag.size(); ++i) {
    feature[i - 1] = std::log1p(mag[i]);
  }
  return feature;
}

SurrogateAsr train_asr(const std::vector<Utterance>& data, std::size_t vocab_size,
                       std::size_t segment_length) {
  if (data.empty() || vocab_size == 0) {
    throw InvalidParameterError("train_asr: empty training data or vocabulary");
  }
  SurrogateAsr asr;
  asr.vocab_size = vocab_size;
  asr.segment_length = segment_length;

  std::vector<std::vector<double>> sums(vocab_size);
  std::vector<std::size_t> counts(vocab_size, 0);
  for (const Utterance& utt : data) {
    auto slices = slice_segments(utt.audio, segment_length);
    const std::size_t usable = std::min(slices.size(), utt.tokens.size());
    for (std::size_t i = 0; i < usable; ++i) {
      std::vector<double> feature = spectral_feature(slices[i]);
      auto& sum = sums[utt.tokens[i]];
      if (sum.empty()) {
        sum.assign(feature.size(), 0.0);
      }
      for (std::size_t k = 0; k < feature.size(); ++k) {
        sum[k] += feature[k];
      }
      ++counts[utt.tokens[i]];
    }
  }
  asr.token_templates.resize(vocab_size);
  for (std::size_t v = 0; v < vocab_size; ++v) {
    if (counts[v] == 0) {
      continue;  // unseen token: template stays empty, never matched
    }
    asr.token_templates[v] = std::move(sums[v]);
    for (double& x : asr.token_templates[v]) {
      x /= static_cast<double>(counts[v]);
    }
  }
  return asr;
}

std::vector<std::size_t> transcribe(const SurrogateAsr& asr, const Waveform& audio) {
  auto slices = slice_segments(audio, asr.segment_length);
  std::vector<std::size_t> out;
  out.reserve(slices.size());
  for (const auto& segment : slices) {
    std::vector<double> feature = spectral_feature(segment);
    std::size_t best = 0;
    double best_score = -3.0;
    for (std::size_t v = 0; v < asr.vocab_size; ++v) {
      if (asr.token_templates[v].empty()) {
        continue;
      }
      double score = safe_cosine(feature, asr.token_templates[v]);
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> utterance_embedding(const Waveform& audio, std::size_t segment_length) {
  auto slices = slice_segments(audio, segment_length);
  if (slices.empty()) {
    throw InvalidParameterError("utterance_embedding: empty audio");
  }
  std::vector<double> mean;
  for (const auto& segment : slices) {
    std::vector<double> feature = spectral_feature(segment);
    if (mean.empty()) {
      mean.assign(feature.size(), 0.0);
    }
    for (std::size_t k = 0; k < feature.size(); ++k) {
      mean[k] += feature[k];
    }
  }
  for (double& x : mean) {
    x /= static_cast<double>(slices.size());
  }
  return mean;
}

namespace {

void check_run_inputs(const SyntheticCorpus& corpus, const KeyConfig& config) {
  if (config.n_keys == 0 || config.dim == 0 || config.stride == 0 ||
      config.stride > config.dim) {
    throw InvalidParameterError("scenario run: invalid key configuration");
  }
  if (corpus.utterances.empty()) {
    throw InvalidParameterError("scenario run: empty corpus");
  }
  if (corpus.config.utts_per_speaker < 2) {
    throw InvalidParameterError("scenario run: corpus too small to split into halves");
  }
}

SecretKeySet make_keyset(const KeyConfig& config, const Seed& seed) {
  if (config.identity) {
    return SecretKeySet::identity(config.n_keys, config.dim);
  }
  return generate_keyset(config.n_keys, config.dim, seed);
}

Waveform encrypt_and_trim(const Waveform& w, const SecretKeySet& keys, const KeyConfig& config) {
  FramedSignal framed = frame_overlapping(w, config.dim, config.stride);
  EncryptedSignal enc = encrypt(framed, keys);
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples = trim_overlap(enc);
  return out;
}

// Per speaker: first half of the utterances is attacker/enrollment data,
// second half is the victim's queries.
void split_corpus(const SyntheticCorpus& corpus, std::vector<const Utterance*>& train,
                  std::vector<const Utterance*>& queries) {
  const std::size_t per = corpus.config.utts_per_speaker;
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    if (i % per < per / 2) {
      train.push_back(&corpus.utterances[i]);
    } else {
      queries.push_back(&corpus.utterances[i]);
    }
  }
}

std::vector<std::string> token_words(const std::vector<std::size_t>& tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (std::size_t t : tokens) {
    words.push_back("t" + std::to_string(t));
  }
  return words;
}

struct AttackResult {
  double wer_percent;
  double eer_percent;
};

// Shared evaluation: transcribe and embed the processed queries, score
// them against per-speaker enrollment embeddings.
AttackResult evaluate_attack(const SurrogateAsr& asr,
                             const std::vector<std::vector<double>>& enrollment,
                             const std::vector<const Utterance*>& queries,
                             const std::vector<Waveform>& processed_queries,
                             std::size_t segment_length) {
  std::vector<TranscriptPair> pairs;
  std::vector<Trial> trials;
  pairs.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    TranscriptPair pair;
    pair.reference = token_words(queries[i]->tokens);
    pair.hypothesis = token_words(transcribe(asr, processed_queries[i]));
    pairs.push_back(std::move(pair));

    std::vector<double> emb = utterance_embedding(processed_queries[i], segment_length);
    for (std::size_t s = 0; s < enrollment.size(); ++s) {
      trials.push_back({safe_cosine(emb, enrollment[s]), queries[i]->speaker_id == s});
    }
  }
  return {wer(pairs), eer(trials)};
}

std::vector<std::vector<double>> enrollment_embeddings(
    const std::vector<const Utterance*>& train, const std::vector<Waveform>& train_audio,
    std::size_t n_speakers, std::size_t segment_length) {
  std::vector<std::vector<double>> enrollment(n_speakers);
  std::vector<std::size_t> counts(n_speakers, 0);
  for (std::size_t i = 0; i < train.size(); ++i) {
    std::vector<double> emb = utterance_embedding(train_audio[i], segment_length);
    auto& sum = enrollment[train[i]->speaker_id];
    if (sum.empty()) {
      sum.assign(emb.size(), 0.0);
    }
    for (std::size_t k = 0; k < emb.size(); ++k) {
      sum[k] += emb[k];
    }
    ++counts[train[i]->speaker_id];
  }
  for (std::size_t s = 0; s < n_speakers; ++s) {
    if (counts[s] == 0) {
      throw InvalidParameterError("scenario run: speaker has no enrollment utterances");
    }
    for (double& x : enrollment[s]) {
      x /= static_cast<double>(counts[s]);
    }
  }
  return enrollment;
}

}  // namespace

ScenarioReport run_scenario1(const SyntheticCorpus& corpus, const KeyConfig& config,
                             bool use_lowpass, const Seed& run_seed) {
  check_run_inputs(corpus, config);
  const auto& cc = corpus.config;

  std::vector<const Utterance*> train, queries;
  split_corpus(corpus, train, queries);

  SecretKeySet victim_keys = make_keyset(config, derive_seed(run_seed, "victim-key"));

  // Ignorant attacker: models come from clean data only.
  std::vector<Utterance> train_clean;
  train_clean.reserve(train.size());
  for (const Utterance* u : train) {
    train_clean.push_back(*u);
  }
  SurrogateAsr asr = train_asr(train_clean, cc.vocab_size, cc.segment_length);

  std::vector<Waveform> train_audio;
  train_audio.reserve(train.size());
  for (const Utterance* u : train) {
    train_audio.push_back(u->audio);
  }
  auto enrollment = enrollment_embeddings(train, train_audio, cc.n_speakers, cc.segment_length);

  std::vector<Waveform> processed;
  processed.reserve(queries.size());
  for (const Utterance* q : queries) {
    Waveform audio = encrypt_and_trim(q->audio, victim_keys, config);
    if (use_lowpass) {
      audio = lowpass(audio, LowPassSpec{4000.0, 101, audio.sample_rate});
    }
    processed.push_back(std::move(audio));
  }

  AttackResult result = evaluate_attack(asr, enrollment, queries, processed, cc.segment_length);
  ScenarioReport report;
  report.scenario = 1;
  report.config = config;
  report.lowpass = use_lowpass;
  report.wer_percent = result.wer_percent;
  report.eer_percent = result.eer_percent;
  report.run_seed = run_seed;
  return report;
}

ScenarioReport run_scenario2(const SyntheticCorpus& corpus, const KeyConfig& config,
                             const Seed& run_seed) {
  check_run_inputs(corpus, config);
  const auto& cc = corpus.config;

  std::vector<const Utterance*> train, queries;
  split_corpus(corpus, train, queries);

  SecretKeySet victim_keys = make_keyset(config, derive_seed(run_seed, "victim-key"));

  // The attacker re-encrypts its own data with a fresh random key set per
  // utterance and retrains the surrogate templates on the trimmed result.
  std::vector<Utterance> adaptation;
  adaptation.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    SecretKeySet adapt_keys = make_keyset(config, derive_seed(run_seed, "adapt-key", i));
    Utterance utt;
    utt.speaker_id = train[i]->speaker_id;
    utt.tokens = train[i]->tokens;
    utt.audio = encrypt_and_trim(train[i]->audio, adapt_keys, config);
    adaptation.push_back(std::move(utt));
  }
  SurrogateAsr asr = train_asr(adaptation, cc.vocab_size, cc.segment_length);
  asr.adapted = true;
  asr.adapted_n_keys = config.n_keys;

  // Enrollment is the victim-side data the attacker observes: encrypted
  // with the victim's key, trimmed like the queries.
  std::vector<Waveform> enrollment_audio;
  enrollment_audio.reserve(train.size());
  for (const Utterance* u : train) {
    enrollment_audio.push_back(encrypt_and_trim(u->audio, victim_keys, config));
  }
  auto enrollment =
      enrollment_embeddings(train, enrollment_audio, cc.n_speakers, cc.segment_length);

  std::vector<Waveform> processed;
  processed.reserve(queries.size());
  for (const Utterance* q : queries) {
    processed.push_back(encrypt_and_trim(q->audio, victim_keys, config));
  }

  AttackResult result = evaluate_attack(asr, enrollment, queries, processed, cc.segment_length);
  ScenarioReport report;
  report.scenario = 2;
  report.config = config;
  report.lowpass = false;
  report.wer_percent = result.wer_percent;
  report.eer_percent = result.eer_percent;
  report.run_seed = run_seed;
  return report;
}

BaselineReport run_baseline(const SyntheticCorpus& corpus) {
  if (corpus.utterances.empty()) {
    throw InvalidParameterError("run_baseline: empty corpus");
  }
  if (corpus.config.utts_per_speaker < 2) {
    throw InvalidParameterError("run_baseline: corpus too small to split into halves");
  }
  const auto& cc = corpus.config;

  std::vector<const Utterance*> train, queries;
  split_corpus(corpus, train, queries);

  std::vector<Utterance> train_clean;
  train_clean.reserve(train.size());
  for (const Utterance* u : train) {
    train_clean.push_back(*u);
  }
  SurrogateAsr asr = train_asr(train_clean, cc.vocab_size, cc.segment_length);

  std::vector<Waveform> train_audio;
  train_audio.reserve(train.size());
  for (const Utterance* u : train) {
    train_audio.push_back(u->audio);
  }
  auto enrollment = enrollment_embeddings(train, train_audio, cc.n_speakers, cc.segment_length);

  std::vector<Waveform> processed;
  processed.reserve(queries.size());
  for (const Utterance* q : queries) {
    processed.push_back(q->audio);
  }

  AttackResult result = evaluate_attack(asr, enrollment, queries, processed, cc.segment_length);
  return {result.wer_percent, result.eer_percent};
}

const std::array<Seed, 5>& default_benchmark_seeds() {
  static const std::array<Seed, 5> seeds = {
      seed_from_hex("01"), seed_from_hex("02"), seed_from_hex("03"),
      seed_from_hex("04"), seed_from_hex("05"),
  };
  return seeds;
}

}  // namespace okse::sim
