#include <benchmark/benchmark.h>

#include "okse/cipher.hpp"
#include "okse/convfront.hpp"
#include "okse/keys.hpp"
#include "okse/metrics.hpp"
#include "okse/preprocess.hpp"

namespace {

using namespace okse;

Waveform bench_waveform(std::size_t t) {
  ChaChaRng rng(seed_from_hex("be"));
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(t);
  for (double& s : w.samples) {
    s = 2.0 * rng.next_double() - 1.0;
  }
  return w;
}

void BM_GenerateKeyset(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  Seed seed = seed_from_hex("01");
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_keyset(n, dim, seed));
  }
}
BENCHMARK(BM_GenerateKeyset)->Args({1, 10})->Args({5, 10})->Args({5, 64});

void BM_Encrypt(benchmark::State& state) {
  const auto seconds_of_audio = static_cast<std::size_t>(state.range(0));
  Waveform w = bench_waveform(16000 * seconds_of_audio);
  SecretKeySet keys = generate_keyset(5, 10, seed_from_hex("02"));
  FramedSignal f = frame_overlapping(w, 10, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encrypt(f, keys));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.block_count()));
}
BENCHMARK(BM_Encrypt)->Arg(1)->Arg(10);

void BM_EncryptedForward(benchmark::State& state) {
  Waveform w = bench_waveform(16000);
  SecretKeySet keys = generate_keyset(5, 10, seed_from_hex("03"));
  ConvFrontend model;
  model.kernel_size = 10;
  model.stride = 5;
  model.channels = static_cast<std::size_t>(state.range(0));
  ChaChaRng rng(seed_from_hex("04"));
  for (std::size_t c = 0; c < model.channels; ++c) {
    std::vector<double> kernel(10);
    for (double& v : kernel) {
      v = rng.next_gaussian();
    }
    model.kernels.push_back(std::move(kernel));
  }
  ConvFrontend enc_model = encrypt_model(model, keys);
  EncryptedSignal enc = encrypt(frame_overlapping(w, 10, 5), keys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encrypted_forward(enc_model, enc));
  }
}
BENCHMARK(BM_EncryptedForward)->Arg(1)->Arg(8)->Arg(64);

void BM_TrimOverlap(benchmark::State& state) {
  Waveform w = bench_waveform(160000);
  SecretKeySet keys = generate_keyset(5, 10, seed_from_hex("05"));
  EncryptedSignal enc = encrypt(frame_overlapping(w, 10, 5), keys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trim_overlap(enc));
  }
}
BENCHMARK(BM_TrimOverlap);

void BM_Lowpass(benchmark::State& state) {
  Waveform w = bench_waveform(16000);
  LowPassSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowpass(w, spec));
  }
}
BENCHMARK(BM_Lowpass);

void BM_Eer(benchmark::State& state) {
  ChaChaRng rng(seed_from_hex("06"));
  std::vector<Trial> trials;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) {
    trials.push_back({rng.next_gaussian() + (i % 2 == 0 ? 1.0 : 0.0), i % 2 == 0});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(eer(trials));
  }
}
BENCHMARK(BM_Eer)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
