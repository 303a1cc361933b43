// Serial reference vs OpenMP for each parallel kernel, plus whole-frame encode.

#include <benchmark/benchmark.h>

#include <random>

#include "hlc/bench/corpus.hpp"
#include "hlc/bench/harness.hpp"
#include "hlc/codec.hpp"
#include "hlc/kernels.hpp"

namespace {

using namespace hlc;

const Frame& hd_frame() {
  static const Frame f = bench::make_image(bench::ImageKind::kNatural, 1920, 1080, 7);
  return f;
}

const Frame& hd_other() {
  static const Frame f = bench::make_image(bench::ImageKind::kNatural, 1920, 1080, 8);
  return f;
}

const std::vector<bench::CorpusImage>& small_corpus() {
  static const auto c = bench::test_corpus(128, 64);
  return c;
}

void BM_Sse(benchmark::State& state) {
  const auto a = hd_frame().plane(0).samples();
  const auto b = hd_other().plane(0).samples();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sse(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_SseSerial(benchmark::State& state) {
  const auto a = hd_frame().plane(0).samples();
  const auto b = hd_other().plane(0).samples();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sse_serial(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_Sad(benchmark::State& state) {
  const auto a = hd_frame().plane(1).samples();
  const auto b = hd_other().plane(1).samples();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sad(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_SadSerial(benchmark::State& state) {
  const auto a = hd_frame().plane(1).samples();
  const auto b = hd_other().plane(1).samples();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sad_serial(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_RgbToYcbcr(benchmark::State& state) {
  for (auto _ : state) {
    Frame f = hd_frame();
    kernels::rgb_to_ycbcr(f);
    benchmark::DoNotOptimize(f);
  }
}

void BM_RgbToYcbcrSerial(benchmark::State& state) {
  for (auto _ : state) {
    Frame f = hd_frame();
    kernels::rgb_to_ycbcr_serial(f);
    benchmark::DoNotOptimize(f);
  }
}

void BM_QpSweep(benchmark::State& state) {
  const Frame f = pad_frame(hd_frame());
  EncoderConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_fixed_qp(f, c));
}

void BM_QpSweepSerial(benchmark::State& state) {
  const Frame f = pad_frame(hd_frame());
  EncoderConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_fixed_qp_serial(f, c));
}

void BM_RunCorpus(benchmark::State& state) {
  bench::BenchOptions opt;
  opt.targets = {1.25};
  for (auto _ : state) benchmark::DoNotOptimize(bench::run_corpus(small_corpus(), opt));
}

void BM_RunCorpusSerial(benchmark::State& state) {
  bench::BenchOptions opt;
  opt.targets = {1.25};
  for (auto _ : state) benchmark::DoNotOptimize(bench::run_corpus_serial(small_corpus(), opt));
}

void BM_Encode1080p(benchmark::State& state) {
  EncoderConfig c;
  c.target_bpp = 1.25;
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(encode_frame(hd_frame(), c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hd_frame().pixel_count()));
}

void BM_Decode1080p(benchmark::State& state) {
  EncoderConfig c;
  c.target_bpp = 1.25;
  const auto enc = encode_frame(hd_frame(), c);
  for (auto _ : state) benchmark::DoNotOptimize(decode_frame(enc.bytes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hd_frame().pixel_count()));
}

}  // namespace

BENCHMARK(BM_Sse);
BENCHMARK(BM_SseSerial);
BENCHMARK(BM_Sad);
BENCHMARK(BM_SadSerial);
BENCHMARK(BM_RgbToYcbcr);
BENCHMARK(BM_RgbToYcbcrSerial);
BENCHMARK(BM_QpSweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QpSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunCorpus)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunCorpusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Encode1080p)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decode1080p)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
