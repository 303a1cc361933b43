#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hlc/bench/bd.hpp"
#include "hlc/bench/corpus.hpp"
#include "hlc/core.hpp"
#include "hlc/rdo.hpp"

namespace hlc::bench {

inline constexpr std::array<double, 4> kTargetBpps{1.75, 1.50, 1.25, 1.00};

struct BenchConfig {
  std::string name;
  bool plt_enabled = true;
};

/// "full" (PLT on) and "no-plt".
[[nodiscard]] std::vector<BenchConfig> default_configs();

struct BenchOptions {
  std::vector<double> targets{kTargetBpps.begin(), kTargetBpps.end()};
  std::vector<BenchConfig> configs = default_configs();
  rdo::LambdaTable lambdas;
  std::optional<int> qp_base;
  int rc_gain = 256;
  int rc_max_step = 4;
  bool ycbcr = false;
  int threads = 0;  // images in flight; 0 lets OpenMP decide
};

struct BenchRow {
  std::string image;
  std::string config;
  double target_bpp = 0.0;
  double achieved_bpp = 0.0;
  std::array<double, 3> psnr{};
  double psnr_avg = 0.0;
  int qp_base = 0;
  std::array<std::int64_t, 4> mode_counts{};  // indexed by CuMode
  std::int64_t bytes = 0;
  std::array<std::uint64_t, 3> sse{};
  std::uint64_t pixels = 0;
  int bit_depth = 8;
  bool recon_match = false;  // decoder output == encoder reconstruction
  double encode_ms = 0.0;
  double decode_ms = 0.0;
};

/// One row per image x config x target, ordered by image, config, target.
[[nodiscard]] std::vector<BenchRow> run_corpus(std::span<const CorpusImage> images, const BenchOptions& options);
[[nodiscard]] std::vector<BenchRow> run_corpus_serial(std::span<const CorpusImage> images, const BenchOptions& options);

/// Columns: image,config,target_bpp,achieved_bpp,psnr_c0,psnr_c1,psnr_c2,
/// psnr_avg,qp_base,cu_plt,cu_dc,cu_vt,cu_ht,bytes,recon_match.
/// No wall times, so output is byte-identical across runs.
void write_csv(std::ostream& out, std::span<const BenchRow> rows);
/// Columns: image,config,target_bpp,encode_ms,decode_ms.
void write_timing_csv(std::ostream& out, std::span<const BenchRow> rows);

/// Corpus-level curve of `config`: one point per target, rate is the mean
/// achieved bpp and PSNR is taken from the SSE pooled over all images.
[[nodiscard]] RdCurve corpus_curve(std::span<const BenchRow> rows, const std::string& config);

/// BD-PSNR of `test` against `ref` on the corpus curves.
[[nodiscard]] double corpus_bd_psnr(std::span<const BenchRow> rows, const std::string& ref, const std::string& test);

struct Calibration {
  std::array<double, kNumQps> rate{};        // mean bpp per qp
  std::array<double, kNumQps> distortion{};  // mean 8-bit-scaled SAD per pixel per qp
  std::vector<rdo::RdPoint> fit_points;      // qps with distortion > 0
  rdo::RdModel model;
  rdo::LambdaTable table;
};

/// Encodes every image at each fixed qp (RC off, lambda 0, PLT on) and fits
/// the R-D model. Throws hlc::Error for fewer than 3 images or when fewer
/// than 3 qps produce distortion.
[[nodiscard]] Calibration calibrate(std::span<const CorpusImage> images, int threads = 0);

/// Fit and table from per-qp means. Rate anchors are made nonincreasing in
/// qp so the table stays monotone.
[[nodiscard]] Calibration calibrate_from_means(const std::array<double, kNumQps>& rate,
                                               const std::array<double, kNumQps>& distortion);

/// C, K, r_square and the per-qp means as text.
[[nodiscard]] std::string fit_report(const Calibration& cal);

}  // namespace hlc::bench
