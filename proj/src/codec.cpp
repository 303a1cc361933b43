#include "hlc/codec.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "hlc/bitstream.hpp"
#include "hlc/entropy.hpp"
#include "hlc/error.hpp"
#include "hlc/palette.hpp"
#include "hlc/predict.hpp"
#include "hlc/ratectl.hpp"

namespace hlc {

namespace {

constexpr int kTrialRows = 16;  // CU rows sampled by the qp_base sweep
constexpr int kRefinePasses = 2;
constexpr double kRefineTolerance = 0.02;  // |log(bpp / target)|

std::int64_t block_sad(const CodingUnit::Block& a, const CodingUnit::Block& b) {
  std::int64_t total = 0;
  for (std::size_t c = 0; c < kNumComponents; ++c) {
    for (std::size_t i = 0; i < kCuPixels; ++i) {
      total += std::abs(static_cast<int>(a[c][i]) - static_cast<int>(b[c][i]));
    }
  }
  return total;
}

struct DpCandidate {
  predict::Block levels;
  predict::DpRate rate;
  CodingUnit::Block recon;
};

struct PltCandidate {
  palette::PaletteResult palette;
  palette::RunList runs;
  CodingUnit::Block recon;
};

struct CuResult {
  CuMode mode;
  CodingUnit::Block recon;
  std::int64_t bits;
};

// S0/S1/S2 for one CU: candidates, mode decision, emission.
CuResult code_cu(const CodingUnit::Block& src, const predict::NeighborContext& ctx, Qp qp, double lambda,
                 bool plt_enabled, int bit_depth, BitSink& sink) {
  std::array<DpCandidate, 3> dp;
  std::array<rdo::ModeCost, 4> costs;
  std::size_t n_costs = 0;

  for (PredMode m : kPredModes) {
    auto& cand = dp[static_cast<std::size_t>(m)];
    const predict::Block residual = predict::predict_cu(src, ctx, m);
    cand.levels = predict::quantize(predict::forward_dwt(residual), qp, bit_depth);
    cand.rate = predict::estimate_rate_dp(cand.levels);
    cand.recon = predict::reconstruct_dp(ctx, m, cand.levels, qp);
    const CuMode mode = to_cu_mode(m);
    costs[n_costs++] = {mode, block_sad(cand.recon, src), cand.rate.bits + entropy::header_bits(mode)};
  }

  std::optional<PltCandidate> plt;
  if (plt_enabled) {
    if (auto pal = palette::cluster_cu(src, qp, bit_depth)) {
      plt.emplace();
      plt->palette = std::move(*pal);
      plt->runs = palette::map_indices(plt->palette.indices);
      plt->recon = palette::reconstruct_plt(plt->palette.table, plt->palette.indices, bit_depth);
      const std::int64_t rate = palette::estimate_rate_plt(plt->palette.table, plt->runs, bit_depth);
      costs[n_costs++] = {CuMode::kPlt, block_sad(plt->recon, src), rate + entropy::header_bits(CuMode::kPlt)};
    }
  }

  const rdo::ModeCost& best = rdo::choose_mode(std::span(costs).first(n_costs), lambda);
  const std::size_t start = sink.bit_count();
  entropy::encode_cu_header({qp, best.mode}, sink);
  CuResult out{best.mode, {}, 0};
  if (best.mode == CuMode::kPlt) {
    entropy::encode_cu_plt(plt->palette.table, plt->runs, bit_depth, sink);
    out.recon = plt->recon;
  } else {
    const auto& cand = dp[static_cast<std::size_t>(best.mode)];
    entropy::encode_cu_dp(cand.rate.bitplanes, cand.levels, sink);
    out.recon = cand.recon;
  }
  out.bits = static_cast<std::int64_t>(sink.bit_count() - start);
  assert(out.bits == best.rate);
  return out;
}

struct PassResult {
  BitSink sink;
  Frame recon;
  EncodeStats stats;
};

PassResult run_pass(const Frame& padded, const EncoderConfig& config, int qp_base, int max_step) {
  ratectl::RcState rc;
  rc.target_bpp_fixed = ratectl::to_fixed_bpp(config.target_bpp);
  rc.qp_base = qp_base;
  rc.gain = config.rc_gain;
  rc.max_step = max_step;
  ratectl::validate(rc);

  PassResult pass{BitSink{}, Frame(padded.width(), padded.height(), padded.bit_depth()), EncodeStats{}};
  pass.stats.qp_base = qp_base;
  const double lambda_scale = static_cast<double>(1 << (padded.bit_depth() - 8));
  for (int y0 = 0; y0 < padded.height(); y0 += kCuHeight) {
    for (int x0 = 0; x0 < padded.width(); x0 += kCuWidth) {
      const Qp qp = ratectl::qp_for_cu(rc);
      const CodingUnit cu = extract_cu(padded, x0, y0);
      const auto ctx = predict::make_context(pass.recon, x0, y0);
      const CuResult r = code_cu(cu.samples, ctx, qp, config.lambdas[qp] * lambda_scale, config.plt_enabled,
                                 padded.bit_depth(), pass.sink);
      store_cu(pass.recon, x0, y0, r.recon);
      rc = ratectl::update(rc, r.bits);
      ++pass.stats.mode_counts[static_cast<std::size_t>(r.mode)];
      pass.stats.payload_bits += r.bits;
    }
  }
  pass.stats.final_bit_error = rc.bit_error;
  return pass;
}

// Every step-th CU row of the padded frame, stacked.
Frame trial_subsample(const Frame& padded) {
  const int rows = padded.height() / kCuHeight;
  if (rows <= kTrialRows) {
    return padded;
  }
  const int step = rows / kTrialRows;
  const int picked = (rows + step - 1) / step;
  Frame out(padded.width(), picked * kCuHeight, padded.bit_depth());
  for (int c = 0; c < kNumComponents; ++c) {
    for (int r = 0; r < picked; ++r) {
      for (int y = 0; y < kCuHeight; ++y) {
        const auto src = padded.plane(c).row(r * step * kCuHeight + y);
        std::ranges::copy(src, out.plane(c).samples().begin() +
                                   static_cast<std::ptrdiff_t>(r * kCuHeight + y) * padded.width());
      }
    }
  }
  return out;
}

double fixed_qp_bpp(const Frame& sample, const EncoderConfig& config, int qp) {
  const PassResult pass = run_pass(sample, config, qp, 0);
  return static_cast<double>(pass.stats.payload_bits) / static_cast<double>(sample.pixel_count());
}

int pick_qp(const std::array<double, kNumQps>& bpp, double target) {
  int best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int qp = 0; qp < kNumQps; ++qp) {
    const double err = std::abs(std::log(bpp[static_cast<std::size_t>(qp)] / target));
    if (err < best_err) {
      best_err = err;
      best = qp;
    }
  }
  return best;
}

double rate_error(const PassResult& pass, const Frame& padded, double target) {
  const double bpp = static_cast<double>(pass.stats.payload_bits) / static_cast<double>(padded.pixel_count());
  return std::log(bpp / target);
}

// Full-frame RC passes stepping qp_base from the sweep's guess toward the
// target; stops once the error changes sign or is within kRefineTolerance.
PassResult refine_qp_base(const Frame& padded, const EncoderConfig& config, int guess) {
  PassResult best = run_pass(padded, config, guess, config.rc_max_step);
  double best_err = rate_error(best, padded, config.target_bpp);
  const int dir = best_err > 0 ? 1 : -1;
  int qp = guess;
  for (int i = 0; i < kRefinePasses && std::abs(best_err) > kRefineTolerance; ++i) {
    qp += dir;
    if (qp < kMinQp || qp > kMaxQp) break;
    PassResult next = run_pass(padded, config, qp, config.rc_max_step);
    const double err = rate_error(next, padded, config.target_bpp);
    const bool crossed = (err > 0) != (best_err > 0);
    if (std::abs(err) < std::abs(best_err)) {
      best = std::move(next);
      best_err = err;
    }
    if (crossed) break;
  }
  return best;
}

void put_u16(std::vector<std::uint8_t>& out, int v) {
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

int get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return (static_cast<int>(b[at]) << 8) | b[at + 1];
}

}  // namespace

void write_header(const BitstreamHeader& h, std::vector<std::uint8_t>& out) {
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  put_u16(out, h.width);
  put_u16(out, h.height);
  out.push_back(static_cast<std::uint8_t>(h.bit_depth));
  out.push_back(static_cast<std::uint8_t>(h.qp_base));
  put_u16(out, h.target_bpp_fixed);
  out.push_back(h.flags);
}

BitstreamHeader read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) {
    throw DecodeError("stream shorter than container header");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw DecodeError("bad magic");
  }
  BitstreamHeader h;
  h.width = get_u16(bytes, 4);
  h.height = get_u16(bytes, 6);
  h.bit_depth = bytes[8];
  h.qp_base = bytes[9];
  h.target_bpp_fixed = get_u16(bytes, 10);
  h.flags = bytes[12];
  if (h.width == 0 || h.height == 0) {
    throw DecodeError("zero frame dimension");
  }
  if (h.bit_depth != 8 && h.bit_depth != 10) {
    throw DecodeError("unsupported bit depth");
  }
  if (h.qp_base > kMaxQp) {
    throw DecodeError("qp_base out of range");
  }
  if ((h.flags & ~(kFlagPlt | kFlagYcbcr)) != 0) {
    throw DecodeError("unknown header flags");
  }
  return h;
}

std::array<double, kNumQps> sweep_fixed_qp_serial(const Frame& padded, const EncoderConfig& config) {
  const Frame sample = trial_subsample(padded);
  std::array<double, kNumQps> bpp{};
  for (int qp = 0; qp < kNumQps; ++qp) {
    bpp[static_cast<std::size_t>(qp)] = fixed_qp_bpp(sample, config, qp);
  }
  return bpp;
}

std::array<double, kNumQps> sweep_fixed_qp(const Frame& padded, const EncoderConfig& config) {
  if (config.threads == 1) {
    return sweep_fixed_qp_serial(padded, config);
  }
  const Frame sample = trial_subsample(padded);
  std::array<double, kNumQps> bpp{};
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int qp = 0; qp < kNumQps; ++qp) {
    bpp[static_cast<std::size_t>(qp)] = fixed_qp_bpp(sample, config, qp);
  }
  return bpp;
}

int choose_qp_base_serial(const Frame& padded, const EncoderConfig& config) {
  return pick_qp(sweep_fixed_qp_serial(padded, config), config.target_bpp);
}

int choose_qp_base(const Frame& padded, const EncoderConfig& config) {
  return pick_qp(sweep_fixed_qp(padded, config), config.target_bpp);
}

EncodedFrame encode_frame(const Frame& frame, const EncoderConfig& config) {
  frame.validate();
  if (frame.width() > 0xFFFF || frame.height() > 0xFFFF) {
    throw std::invalid_argument("frame dimensions exceed 65535");
  }
  if (config.qp_base && (*config.qp_base < kMinQp || *config.qp_base > kMaxQp)) {
    throw std::invalid_argument("qp_base out of range");
  }
  const Frame padded = pad_frame(frame);
  PassResult pass = config.qp_base ? run_pass(padded, config, *config.qp_base, config.rc_max_step)
                                   : refine_qp_base(padded, config, choose_qp_base(padded, config));
  const int qp_base = pass.stats.qp_base;

  BitstreamHeader h;
  h.width = frame.width();
  h.height = frame.height();
  h.bit_depth = frame.bit_depth();
  h.qp_base = qp_base;
  h.target_bpp_fixed = static_cast<int>(std::min<std::int64_t>(ratectl::to_fixed_bpp(config.target_bpp), 0xFFFF));
  h.flags = static_cast<std::uint8_t>((config.plt_enabled ? kFlagPlt : 0) | (config.ycbcr ? kFlagYcbcr : 0));

  EncodedFrame out;
  write_header(h, out.bytes);
  pass.sink.align();
  const auto& payload = pass.sink.bytes();
  out.bytes.insert(out.bytes.end(), payload.begin(), payload.end());
  out.reconstruction = crop_frame(pass.recon, frame.width(), frame.height());
  out.stats = pass.stats;
  return out;
}

DecodedFrame decode_frame(std::span<const std::uint8_t> bytes) {
  DecodedFrame out;
  out.header = read_header(bytes);
  const BitstreamHeader& h = out.header;
  const int w = (h.width + kCuWidth - 1) / kCuWidth * kCuWidth;
  const int ht = (h.height + kCuHeight - 1) / kCuHeight * kCuHeight;
  Frame recon(w, ht, h.bit_depth);

  BitSource src(bytes.subspan(kHeaderBytes));
  for (int y0 = 0; y0 < ht; y0 += kCuHeight) {
    for (int x0 = 0; x0 < w; x0 += kCuWidth) {
      const entropy::CuHeader cu = entropy::decode_cu_header(src);
      if (cu.mode == CuMode::kPlt) {
        const entropy::PaletteData pal = entropy::decode_cu_plt(src, h.bit_depth);
        store_cu(recon, x0, y0, palette::reconstruct_plt(pal.colors, pal.indices, h.bit_depth));
      } else {
        const auto ctx = predict::make_context(recon, x0, y0);
        const predict::Block levels = entropy::decode_cu_dp(src);
        store_cu(recon, x0, y0, predict::reconstruct_dp(ctx, to_pred_mode(cu.mode), levels, cu.qp));
      }
    }
  }
  src.align();
  out.bytes_consumed = kHeaderBytes + src.position() / 8;
  out.frame = crop_frame(recon, h.width, h.height);
  return out;
}

}  // namespace hlc
