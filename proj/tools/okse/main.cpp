// okse command-line tool: key generation, waveform encryption, model
// encryption, equivalence verification, adversary preprocessing, WER/EER
// metrics, and the attack-scenario simulator.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "okse/attacksim.hpp"
#include "okse/cipher.hpp"
#include "okse/convfront.hpp"
#include "okse/errors.hpp"
#include "okse/framing.hpp"
#include "okse/keys.hpp"
#include "okse/metrics.hpp"
#include "okse/preprocess.hpp"
#include "okse/wav.hpp"

namespace {

using nlohmann::json;

bool g_quiet = false;

void info(const std::string& message) {
  if (!g_quiet) {
    std::cerr << message << "\n";
  }
}

void emit_result(const json& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw okse::IoError("cannot open output file: " + out_path);
    }
    out << result.dump(2) << "\n";
  }
}

int cmd_keygen(std::size_t n_keys, std::size_t dim, const std::string& seed_hex,
               const std::string& out_path) {
  okse::Seed seed = okse::seed_from_hex(seed_hex);
  okse::SecretKeySet keys = okse::generate_keyset(n_keys, dim, seed);
  okse::save_keyset(keys, out_path);
  info("wrote " + std::to_string(n_keys) + " orthogonal " + std::to_string(dim) + "x" +
       std::to_string(dim) + " keys to " + out_path);
  return 0;
}

int cmd_encrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out_path, const std::string& mode,
                std::optional<std::size_t> stride) {
  okse::SecretKeySet keys = okse::load_keyset(key_path);
  okse::Waveform wav = okse::read_wav(in_path);
  okse::FramedSignal framed;
  if (mode == "plain") {
    if (stride.has_value()) {
      throw okse::InvalidParameterError("--stride applies to overlapping mode only");
    }
    framed = okse::frame_plain(wav, keys.dim);
  } else if (mode == "overlapping") {
    if (!stride.has_value()) {
      throw okse::InvalidParameterError("overlapping mode requires --stride");
    }
    framed = okse::frame_overlapping(wav, keys.dim, *stride);
  } else {
    throw okse::InvalidParameterError("unknown mode '" + mode + "'");
  }
  okse::EncryptedSignal enc = okse::encrypt(framed, keys);
  okse::save_encrypted(enc, out_path);
  info("encrypted " + std::to_string(wav.length()) + " samples into " +
       std::to_string(enc.block_count()) + " blocks");
  return 0;
}

int cmd_decrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out_path, std::uint32_t rate) {
  okse::SecretKeySet keys = okse::load_keyset(key_path);
  okse::EncryptedSignal enc = okse::load_encrypted(in_path);
  okse::FramedSignal framed = okse::decrypt(enc, keys);

  okse::Waveform wav;
  wav.sample_rate = rate;
  if (framed.descriptor.mode == okse::FramingMode::Plain) {
    wav.samples = okse::concat_frames(framed);
    wav.samples.resize(framed.descriptor.original_length);  // drop padding
  } else {
    wav.samples = okse::trim_overlap(framed);  // exact on decrypted blocks
  }
  okse::write_wav(out_path, wav);
  info("decrypted " + std::to_string(wav.length()) + " samples to " + out_path);
  return 0;
}

int cmd_encrypt_model(const std::string& key_path, const std::string& model_in,
                      const std::string& model_out) {
  okse::SecretKeySet keys = okse::load_keyset(key_path);
  okse::ConvFrontend model = okse::load_model(model_in);
  if (model.encrypted) {
    throw okse::InvalidParameterError("input model is already encrypted");
  }
  okse::ConvFrontend enc = okse::encrypt_model(model, keys);
  okse::save_model(enc, model_out);
  info("branched front-end into " + std::to_string(keys.n_keys) + " encrypted kernel sets");
  return 0;
}

int cmd_verify_equivalence(const std::string& key_path, const std::string& signal_key_path,
                           const std::string& model_path, const std::string& wav_path,
                           double tol, const std::string& out_path) {
  okse::SecretKeySet model_keys = okse::load_keyset(key_path);
  okse::SecretKeySet signal_keys =
      signal_key_path.empty() ? model_keys : okse::load_keyset(signal_key_path);
  okse::ConvFrontend model = okse::load_model(model_path);
  if (model.encrypted) {
    throw okse::InvalidParameterError("verify-equivalence expects a plain model file");
  }
  okse::Waveform wav = okse::read_wav(wav_path);

  okse::FeatureSequence plain = okse::conv_forward(model, wav);
  okse::FramedSignal framed = okse::frame_overlapping(wav, model.kernel_size, model.stride);
  okse::EncryptedSignal enc_signal = okse::encrypt(framed, signal_keys);
  okse::ConvFrontend enc_model = okse::encrypt_model(model, model_keys);
  okse::FeatureSequence enc_out = okse::encrypted_forward(enc_model, enc_signal);

  double max_dev = 0.0;
  for (std::size_t i = 0; i < plain.frames.size(); ++i) {
    for (std::size_t c = 0; c < plain.frames[i].size(); ++c) {
      max_dev = std::max(max_dev, std::fabs(plain.frames[i][c] - enc_out.frames[i][c]));
    }
  }
  bool pass = max_dev <= tol;
  json result = {
      {"max_abs_deviation", max_dev},
      {"tolerance", tol},
      {"frames", plain.frames.size()},
      {"channels", model.channels},
      {"pass", pass},
  };
  emit_result(result, out_path);
  return pass ? 0 : 1;
}

int cmd_preprocess(bool trim, bool lpf, const std::string& in_path, const std::string& out_path,
                   double cutoff, std::size_t taps, std::uint32_t rate) {
  if (trim == lpf) {
    throw okse::InvalidParameterError("preprocess needs exactly one of --trim / --lpf");
  }
  if (trim) {
    okse::EncryptedSignal enc = okse::load_encrypted(in_path);
    okse::Waveform wav;
    wav.sample_rate = rate;
    wav.samples = okse::trim_overlap(enc);
    okse::write_wav(out_path, wav);
    info("trimmed to " + std::to_string(wav.length()) + " samples");
  } else {
    okse::Waveform wav = okse::read_wav(in_path);
    okse::LowPassSpec spec;
    spec.cutoff_hz = cutoff;
    spec.taps = taps;
    spec.sample_rate = wav.sample_rate;
    okse::Waveform filtered = okse::lowpass(wav, spec);
    okse::write_wav(out_path, filtered);
    info("low-pass filtered at " + std::to_string(cutoff) + " Hz");
  }
  return 0;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw okse::IoError("cannot open file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

int cmd_metrics_wer(const std::string& ref_path, const std::string& hyp_path,
                    const std::string& out_path) {
  auto ref_lines = read_lines(ref_path);
  auto hyp_lines = read_lines(hyp_path);
  if (ref_lines.size() != hyp_lines.size()) {
    throw okse::InvalidParameterError("reference and hypothesis files have different line counts");
  }
  std::vector<okse::TranscriptPair> pairs;
  pairs.reserve(ref_lines.size());
  for (std::size_t i = 0; i < ref_lines.size(); ++i) {
    pairs.push_back({okse::tokenize(ref_lines[i]), okse::tokenize(hyp_lines[i])});
  }
  double value = okse::wer(pairs);
  emit_result(json{{"wer_percent", value}, {"utterances", pairs.size()}}, out_path);
  return 0;
}

int cmd_metrics_eer(const std::string& scores_path, const std::string& out_path) {
  std::vector<okse::Trial> trials;
  for (const std::string& line : read_lines(scores_path)) {
    if (line.empty()) {
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw okse::FormatError("scores file: expected 'score,label' per line");
    }
    okse::Trial trial;
    std::string score_text = line.substr(0, comma);
    try {
      std::size_t consumed = 0;
      trial.score = std::stod(score_text, &consumed);
      if (consumed != score_text.size()) {
        throw std::invalid_argument(score_text);
      }
    } catch (const std::exception&) {
      throw okse::FormatError("scores file: bad score '" + score_text + "'");
    }
    std::string label = line.substr(comma + 1);
    while (!label.empty() && (label.back() == '\r' || label.back() == ' ')) {
      label.pop_back();
    }
    if (label == "target") {
      trial.target = true;
    } else if (label == "nontarget") {
      trial.target = false;
    } else {
      throw okse::FormatError("scores file: label must be 'target' or 'nontarget'");
    }
    trials.push_back(trial);
  }
  double value = okse::eer(trials);
  emit_result(json{{"eer_percent", value}, {"trials", trials.size()}}, out_path);
  return 0;
}

int cmd_simulate(int scenario, std::size_t n_keys, std::size_t dim, std::size_t stride,
                 bool use_lpf, bool identity, const std::string& seed_hex,
                 std::size_t speakers, std::size_t utts, std::size_t tokens, std::size_t vocab,
                 const std::string& out_path) {
  if (scenario != 1 && scenario != 2) {
    throw okse::InvalidParameterError("--scenario must be 1 or 2");
  }
  if (scenario == 2 && use_lpf) {
    throw okse::InvalidParameterError("--lpf applies to scenario 1 only");
  }
  okse::Seed seed = okse::seed_from_hex(seed_hex);

  okse::sim::CorpusConfig corpus_config;
  corpus_config.n_speakers = speakers;
  corpus_config.utts_per_speaker = utts;
  corpus_config.tokens_per_utt = tokens;
  corpus_config.vocab_size = vocab;
  okse::sim::SyntheticCorpus corpus =
      okse::sim::generate_corpus(corpus_config, okse::derive_seed(seed, "corpus"));

  okse::sim::KeyConfig key_config;
  key_config.n_keys = n_keys;
  key_config.dim = dim;
  key_config.stride = stride;
  key_config.identity = identity;

  okse::Seed run_seed = okse::derive_seed(seed, "run");
  okse::sim::ScenarioReport report =
      scenario == 1 ? okse::sim::run_scenario1(corpus, key_config, use_lpf, run_seed)
                    : okse::sim::run_scenario2(corpus, key_config, run_seed);

  json result = {
      {"scenario", report.scenario},
      {"n_keys", report.config.n_keys},
      {"wer_percent", report.wer_percent},
      {"eer_percent", report.eer_percent},
      {"seed", okse::seed_to_hex(seed)},
      {"config",
       {{"dim", report.config.dim},
        {"stride", report.config.stride},
        {"identity", report.config.identity},
        {"lpf", report.lowpass},
        {"n_speakers", corpus_config.n_speakers},
        {"utts_per_speaker", corpus_config.utts_per_speaker},
        {"tokens_per_utt", corpus_config.tokens_per_utt},
        {"vocab_size", corpus_config.vocab_size},
        {"sample_rate", corpus_config.sample_rate}}},
  };
  emit_result(result, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"okse: block-orthogonal speech encryption and attack-resistance harness"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--quiet", g_quiet, "suppress progress messages");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a secret key set");
  std::size_t kg_n = 1, kg_dim = 10;
  std::string kg_seed, kg_out;
  keygen->add_option("--n-keys", kg_n, "number of orthogonal matrices")->required();
  keygen->add_option("--dim", kg_dim, "matrix dimension (block size M)")->required();
  keygen->add_option("--seed", kg_seed, "hex seed, up to 64 chars")->required();
  keygen->add_option("--out", kg_out, "output key file")->required();

  // encrypt
  auto* encrypt = app.add_subcommand("encrypt", "encrypt a WAV file");
  std::string en_key, en_in, en_out, en_mode = "plain";
  std::optional<std::size_t> en_stride;
  encrypt->add_option("--key", en_key)->required();
  encrypt->add_option("--in", en_in, "input WAV (mono 16-bit PCM)")->required();
  encrypt->add_option("--out", en_out, "output encrypted-audio file")->required();
  encrypt->add_option("--mode", en_mode, "plain | overlapping (default plain)");
  encrypt->add_option("--stride", en_stride, "hop S for overlapping mode");

  // decrypt
  auto* decrypt = app.add_subcommand("decrypt", "decrypt an encrypted-audio file");
  std::string de_key, de_in, de_out;
  std::uint32_t de_rate = 16000;
  decrypt->add_option("--key", de_key)->required();
  decrypt->add_option("--in", de_in)->required();
  decrypt->add_option("--out", de_out, "output WAV")->required();
  decrypt->add_option("--rate", de_rate, "output sample rate (containers carry none)");

  // encrypt-model
  auto* encmodel = app.add_subcommand("encrypt-model", "branch a plain front-end model");
  std::string em_key, em_in, em_out;
  encmodel->add_option("--key", em_key)->required();
  encmodel->add_option("--model-in", em_in)->required();
  encmodel->add_option("--model-out", em_out)->required();

  // verify-equivalence
  auto* verify = app.add_subcommand(
      "verify-equivalence", "check the encrypted pipeline against the plain forward pass");
  std::string ve_key, ve_signal_key, ve_model, ve_wav, ve_out;
  double ve_tol = 1e-9;
  verify->add_option("--key", ve_key, "key set used to encrypt the model")->required();
  verify->add_option("--signal-key", ve_signal_key,
                     "key set used to encrypt the waveform (default: --key)");
  verify->add_option("--model", ve_model, "plain model file")->required();
  verify->add_option("--wav", ve_wav)->required();
  verify->add_option("--tol", ve_tol, "max abs deviation tolerance");
  verify->add_option("--out", ve_out, "write the JSON report here");

  // preprocess
  auto* preprocess = app.add_subcommand("preprocess", "adversary-side preprocessing");
  bool pp_trim = false, pp_lpf = false;
  std::string pp_in, pp_out;
  double pp_cutoff = 4000.0;
  std::size_t pp_taps = 101;
  std::uint32_t pp_rate = 16000;
  preprocess->add_flag("--trim", pp_trim, "remove overlap from encrypted audio");
  preprocess->add_flag("--lpf", pp_lpf, "low-pass filter a WAV");
  preprocess->add_option("--in", pp_in)->required();
  preprocess->add_option("--out", pp_out)->required();
  preprocess->add_option("--cutoff", pp_cutoff, "low-pass cutoff in Hz");
  preprocess->add_option("--taps", pp_taps, "FIR length (odd)");
  preprocess->add_option("--rate", pp_rate, "sample rate for trimmed output");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "WER / EER computation");
  metrics->require_subcommand(1);
  auto* wer_cmd = metrics->add_subcommand("wer", "word error rate");
  std::string mw_ref, mw_hyp, mw_out;
  wer_cmd->add_option("--ref", mw_ref, "reference transcripts, one per line")->required();
  wer_cmd->add_option("--hyp", mw_hyp, "hypothesis transcripts, aligned by line")->required();
  wer_cmd->add_option("--out", mw_out);
  auto* eer_cmd = metrics->add_subcommand("eer", "equal error rate");
  std::string me_scores, me_out;
  eer_cmd->add_option("--scores", me_scores, "CSV: score,label")->required();
  eer_cmd->add_option("--out", me_out);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run an attack scenario");
  int sim_scenario = 1;
  std::size_t sim_n = 1, sim_dim = 10, sim_stride = 5;
  bool sim_lpf = false, sim_identity = false;
  std::string sim_seed, sim_out;
  std::size_t sim_speakers = 6, sim_utts = 16, sim_tokens = 6, sim_vocab = 8;
  simulate->add_option("--scenario", sim_scenario, "1 (ignorant) or 2 (semi-informed)")
      ->required();
  simulate->add_option("--n-keys", sim_n)->required();
  simulate->add_option("--dim", sim_dim, "block size M");
  simulate->add_option("--stride", sim_stride, "framing stride S");
  simulate->add_flag("--lpf", sim_lpf, "apply the 4 kHz low-pass (scenario 1)");
  simulate->add_flag("--identity", sim_identity, "identity key set (encryption disabled)");
  simulate->add_option("--seed", sim_seed, "hex seed")->required();
  simulate->add_option("--speakers", sim_speakers);
  simulate->add_option("--utts", sim_utts, "utterances per speaker");
  simulate->add_option("--tokens", sim_tokens, "tokens per utterance");
  simulate->add_option("--vocab", sim_vocab);
  simulate->add_option("--out", sim_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return 2;
  }

  try {
    if (keygen->parsed()) {
      return cmd_keygen(kg_n, kg_dim, kg_seed, kg_out);
    }
    if (encrypt->parsed()) {
      return cmd_encrypt(en_key, en_in, en_out, en_mode, en_stride);
    }
    if (decrypt->parsed()) {
      return cmd_decrypt(de_key, de_in, de_out, de_rate);
    }
    if (encmodel->parsed()) {
      return cmd_encrypt_model(em_key, em_in, em_out);
    }
    if (verify->parsed()) {
      return cmd_verify_equivalence(ve_key, ve_signal_key, ve_model, ve_wav, ve_tol, ve_out);
    }
    if (preprocess->parsed()) {
      return cmd_preprocess(pp_trim, pp_lpf, pp_in, pp_out, pp_cutoff, pp_taps, pp_rate);
    }
    if (metrics->parsed()) {
      if (wer_cmd->parsed()) {
        return cmd_metrics_wer(mw_ref, mw_hyp, mw_out);
      }
      return cmd_metrics_eer(me_scores, me_out);
    }
    if (simulate->parsed()) {
      return cmd_simulate(sim_scenario, sim_n, sim_dim, sim_stride, sim_lpf, sim_identity,
                          sim_seed, sim_speakers, sim_utts, sim_tokens, sim_vocab, sim_out);
    }
  } catch (const okse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
