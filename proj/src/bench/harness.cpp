#include "hlc/bench/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "hlc/codec.hpp"
#include "hlc/error.hpp"
#include "hlc/kernels.hpp"

namespace hlc::bench {

namespace {

struct Job {
  std::size_t image;
  std::size_t config;
  std::size_t target;
};

std::vector<Job> make_jobs(std::size_t images, const BenchOptions& o) {
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < images; ++i) {
    for (std::size_t c = 0; c < o.configs.size(); ++c) {
      for (std::size_t t = 0; t < o.targets.size(); ++t) {
        jobs.push_back({i, c, t});
      }
    }
  }
  return jobs;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

BenchRow run_job(const CorpusImage& img, const BenchConfig& cfg, double target, const BenchOptions& o) {
  EncoderConfig ec;
  ec.target_bpp = target;
  ec.qp_base = o.qp_base;
  ec.plt_enabled = cfg.plt_enabled;
  ec.lambdas = o.lambdas;
  ec.rc_gain = o.rc_gain;
  ec.rc_max_step = o.rc_max_step;
  ec.ycbcr = o.ycbcr;
  ec.threads = 1;

  BenchRow row;
  row.image = img.name;
  row.config = cfg.name;
  row.target_bpp = target;

  auto t0 = std::chrono::steady_clock::now();
  const EncodedFrame enc = encode_frame(img.frame, ec);
  row.encode_ms = elapsed_ms(t0);
  t0 = std::chrono::steady_clock::now();
  const DecodedFrame dec = decode_frame(enc.bytes);
  row.decode_ms = elapsed_ms(t0);

  row.achieved_bpp = enc.bpp();
  row.qp_base = enc.stats.qp_base;
  row.mode_counts = enc.stats.mode_counts;
  row.bytes = static_cast<std::int64_t>(enc.bytes.size());
  row.recon_match = dec.frame == enc.reconstruction;
  row.bit_depth = img.frame.bit_depth();
  row.pixels = img.frame.pixel_count();
  for (int c = 0; c < kNumComponents; ++c) {
    const auto ci = static_cast<std::size_t>(c);
    row.sse[ci] = plane_sse(img.frame.plane(c), dec.frame.plane(c));
    row.psnr[ci] = psnr(img.frame.plane(c), dec.frame.plane(c), row.bit_depth);
  }
  row.psnr_avg = psnr_frame(img.frame, dec.frame);
  return row;
}

void check_options(const BenchOptions& o) {
  if (o.configs.empty() || o.targets.empty()) {
    throw std::invalid_argument("bench needs at least one config and one target");
  }
  for (double t : o.targets) {
    if (!(t > 0.0)) {
      throw std::invalid_argument("target bpp must be positive");
    }
  }
}

std::string fmt(double v, int precision) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace

std::vector<BenchConfig> default_configs() {
  return {{"full", true}, {"no-plt", false}};
}

std::vector<BenchRow> run_corpus_serial(std::span<const CorpusImage> images, const BenchOptions& options) {
  check_options(options);
  const auto jobs = make_jobs(images.size(), options);
  std::vector<BenchRow> rows;
  rows.reserve(jobs.size());
  for (const Job& j : jobs) {
    rows.push_back(run_job(images[j.image], options.configs[j.config], options.targets[j.target], options));
  }
  return rows;
}

std::vector<BenchRow> run_corpus(std::span<const CorpusImage> images, const BenchOptions& options) {
  if (options.threads == 1) {
    return run_corpus_serial(images, options);
  }
  check_options(options);
  const auto jobs = make_jobs(images.size(), options);
  std::vector<BenchRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Job& j = jobs[static_cast<std::size_t>(i)];
    try {
      rows[static_cast<std::size_t>(i)] =
          run_job(images[j.image], options.configs[j.config], options.targets[j.target], options);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = images[j.image].name + ": " + e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) {
      throw Error(e);
    }
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "image,config,target_bpp,achieved_bpp,psnr_c0,psnr_c1,psnr_c2,psnr_avg,qp_base,cu_plt,cu_dc,cu_vt,cu_ht,"
         "bytes,recon_match\n";
  for (const BenchRow& r : rows) {
    out << r.image << ',' << r.config << ',' << fmt(r.target_bpp, 2) << ',' << fmt(r.achieved_bpp, 6) << ','
        << fmt(r.psnr[0], 4) << ',' << fmt(r.psnr[1], 4) << ',' << fmt(r.psnr[2], 4) << ',' << fmt(r.psnr_avg, 4)
        << ',' << r.qp_base << ',' << r.mode_counts[3] << ',' << r.mode_counts[0] << ',' << r.mode_counts[1] << ','
        << r.mode_counts[2] << ',' << r.bytes << ',' << (r.recon_match ? 1 : 0) << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "image,config,target_bpp,encode_ms,decode_ms\n";
  for (const BenchRow& r : rows) {
    out << r.image << ',' << r.config << ',' << fmt(r.target_bpp, 2) << ',' << fmt(r.encode_ms, 3) << ','
        << fmt(r.decode_ms, 3) << '\n';
  }
}

RdCurve corpus_curve(std::span<const BenchRow> rows, const std::string& config) {
  struct Acc {
    double bpp = 0.0;
    int images = 0;
    std::array<double, 3> nsse{};  // SSE over peak^2
    double samples = 0.0;
  };
  std::map<double, Acc> by_target;
  for (const BenchRow& r : rows) {
    if (r.config != config) continue;
    Acc& a = by_target[r.target_bpp];
    a.bpp += r.achieved_bpp;
    ++a.images;
    const double peak = static_cast<double>((1 << r.bit_depth) - 1);
    for (std::size_t c = 0; c < 3; ++c) {
      a.nsse[c] += static_cast<double>(r.sse[c]) / (peak * peak);
    }
    a.samples += static_cast<double>(r.pixels);
  }
  auto to_psnr = [](double nmse) {
    return nmse > 0.0 ? -10.0 * std::log10(nmse) : std::numeric_limits<double>::infinity();
  };
  RdCurve curve;
  for (const auto& [target, a] : by_target) {
    RatePoint p;
    p.bpp = a.bpp / a.images;
    double total = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      p.psnr[c] = to_psnr(a.nsse[c] / a.samples);
      total += a.nsse[c];
    }
    p.psnr_avg = to_psnr(total / (3.0 * a.samples));
    curve.push_back(p);
  }
  std::ranges::sort(curve, {}, &RatePoint::bpp);
  return curve;
}

double corpus_bd_psnr(std::span<const BenchRow> rows, const std::string& ref, const std::string& test) {
  return bd_psnr(corpus_curve(rows, ref), corpus_curve(rows, test));
}

Calibration calibrate_from_means(const std::array<double, kNumQps>& rate,
                                 const std::array<double, kNumQps>& distortion) {
  Calibration cal;
  cal.rate = rate;
  cal.distortion = distortion;
  for (int qp = 0; qp < kNumQps; ++qp) {
    const auto i = static_cast<std::size_t>(qp);
    if (!(rate[i] > 0.0) || !std::isfinite(rate[i])) {
      throw Error("calibration rate must be positive at every qp");
    }
    if (distortion[i] > 0.0) {
      cal.fit_points.push_back({rate[i], distortion[i]});
    }
  }
  if (cal.fit_points.size() < 3) {
    throw Error("degenerate calibration corpus: fewer than 3 qps with nonzero distortion");
  }
  cal.model = rdo::fit_rd_model(cal.fit_points);
  std::array<std::optional<double>, kNumQps> anchors;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kNumQps; ++i) {
    running = std::min(running, rate[i]);
    anchors[i] = running;
  }
  cal.table = rdo::derive_lambda_table(cal.model, anchors);
  return cal;
}

namespace {

Calibration measure_and_fit(std::span<const CorpusImage> images, const rdo::LambdaTable& lambdas, int threads) {
  if (threads <= 0) threads = omp_get_max_threads();
  const auto jobs = static_cast<std::ptrdiff_t>(images.size() * kNumQps);
  std::vector<double> rate(static_cast<std::size_t>(jobs));
  std::vector<double> dist(static_cast<std::size_t>(jobs));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t j = 0; j < jobs; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const CorpusImage& img = images[idx / kNumQps];
    EncoderConfig ec;
    ec.qp_base = static_cast<int>(idx % kNumQps);
    ec.rc_max_step = 0;
    ec.lambdas = lambdas;
    ec.threads = 1;
    const EncodedFrame enc = encode_frame(img.frame, ec);
    const auto pixels = static_cast<double>(img.frame.pixel_count());
    std::uint64_t sad = 0;
    for (int c = 0; c < kNumComponents; ++c) {
      sad += kernels::sad_serial(img.frame.plane(c).samples(), enc.reconstruction.plane(c).samples());
    }
    rate[idx] = static_cast<double>(enc.stats.payload_bits) / pixels;
    dist[idx] = static_cast<double>(sad) / pixels / static_cast<double>(1 << (img.frame.bit_depth() - 8));
  }
  std::array<double, kNumQps> mean_rate{};
  std::array<double, kNumQps> mean_dist{};
  for (std::size_t j = 0; j < rate.size(); ++j) {
    mean_rate[j % kNumQps] += rate[j] / static_cast<double>(images.size());
    mean_dist[j % kNumQps] += dist[j] / static_cast<double>(images.size());
  }
  return calibrate_from_means(mean_rate, mean_dist);
}

}  // namespace

Calibration calibrate(std::span<const CorpusImage> images, int threads) {
  if (images.size() < 3) {
    throw Error("calibration needs at least 3 images");
  }
  return measure_and_fit(images, rdo::LambdaTable(std::array<double, kNumQps>{}), threads);
}

std::string fit_report(const Calibration& cal) {
  std::ostringstream s;
  s << std::setprecision(10);
  s << "C " << cal.model.c << "\nK " << cal.model.k << "\nr_square " << cal.model.r_square << "\n";
  s << "qp rate_bpp sad_per_pixel lambda\n";
  for (int qp = 0; qp < kNumQps; ++qp) {
    const auto i = static_cast<std::size_t>(qp);
    s << qp << ' ' << cal.rate[i] << ' ' << cal.distortion[i] << ' ' << cal.table[Qp(qp)] << '\n';
  }
  return s.str();
}

}  // namespace hlc::bench
