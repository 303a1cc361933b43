// hlc: encode, decode, bench, calibrate, gen-text-corpus.
// Exit codes: 0 ok, 1 usage, 2 data error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "hlc/bench/corpus.hpp"
#include "hlc/bench/harness.hpp"
#include "hlc/bench/image_io.hpp"
#include "hlc/codec.hpp"
#include "hlc/error.hpp"
#include "hlc/rdo.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw hlc::Error("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw hlc::Error("cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

hlc::rdo::LambdaTable lambdas_from(const std::string& path) {
  return path.empty() ? hlc::rdo::LambdaTable{} : hlc::rdo::LambdaTable::load(path);
}

std::vector<hlc::bench::CorpusImage> corpus_from(const std::string& dir, bool ycbcr) {
  if (!dir.empty()) {
    auto images = hlc::bench::load_corpus(dir, ycbcr);
    if (images.empty()) throw hlc::Error("no readable images in " + dir);
    return images;
  }
  return hlc::bench::test_corpus();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HLC mezzanine image codec"};
  app.require_subcommand(1);

  std::string input, output, lambda_path, csv_path, timing_path, dir, table_out, report_out;
  double bpp = 1.5;
  std::optional<int> qp_base;
  bool no_plt = false, ycbcr = false;
  int rc_gain = 256, rc_step = 4, threads = 0;

  auto* enc = app.add_subcommand("encode", "Compress a PPM/PNG image");
  enc->add_option("input", input, "Input image")->required()->check(CLI::ExistingFile);
  enc->add_option("output", output, "Output .hlc file")->required();
  enc->add_option("--bpp", bpp, "Target bits per pixel")->check(CLI::Range(0.01, 255.0));
  enc->add_option("--qp-base", qp_base, "Rate-control QP centre (default: trial sweep)")->check(CLI::Range(0, 19));
  enc->add_flag("--no-plt", no_plt, "Disable palette mode");
  enc->add_option("--lambda-table", lambda_path, "Lambda table file")->check(CLI::ExistingFile);
  enc->add_flag("--ycbcr", ycbcr, "Convert RGB to YCbCr before coding");
  enc->add_option("--rc-gain", rc_gain, "Bits of accumulated error per QP step")->check(CLI::PositiveNumber);
  enc->add_option("--rc-max-step", rc_step, "Largest QP offset from qp_base")->check(CLI::Range(0, 19));

  auto* dec = app.add_subcommand("decode", "Decompress an .hlc file");
  dec->add_option("input", input, "Input .hlc file")->required()->check(CLI::ExistingFile);
  dec->add_option("output", output, "Output image (.png or PPM)")->required();

  auto* bench = app.add_subcommand("bench", "Encode a corpus at 1.75/1.50/1.25/1.00 bpp, with and without PLT");
  bench->add_option("dir", dir, "Image directory (default: built-in test corpus)");
  bench->add_option("--csv", csv_path, "Per-run CSV report (default: stdout)");
  bench->add_option("--timing-csv", timing_path, "Encode/decode wall times");
  std::vector<double> targets;
  bench->add_option("--bpp", targets, "Target rates (repeatable)");
  bench->add_option("--qp-base", qp_base, "Fixed rate-control QP centre")->check(CLI::Range(0, 19));
  bench->add_flag("--no-plt", no_plt, "Run only the no-plt configuration");
  bench->add_option("--lambda-table", lambda_path, "Lambda table file")->check(CLI::ExistingFile);
  bench->add_flag("--ycbcr", ycbcr, "Convert RGB to YCbCr before coding");
  bench->add_option("--rc-gain", rc_gain, "Bits of accumulated error per QP step")->check(CLI::PositiveNumber);
  bench->add_option("--threads", threads, "Worker threads, 0 = OpenMP default")->check(CLI::NonNegativeNumber);

  auto* cal = app.add_subcommand("calibrate", "Fit the R-D model and derive a lambda table");
  cal->add_option("dir", dir, "Image directory (default: built-in test corpus)");
  cal->add_option("--table", table_out, "Write the lambda table here");
  cal->add_option("--report", report_out, "Write the fit report here (default: stdout)");
  cal->add_flag("--ycbcr", ycbcr, "Convert RGB to YCbCr before coding");
  cal->add_option("--threads", threads, "Worker threads, 0 = OpenMP default")->check(CLI::NonNegativeNumber);

  int count = 16, width = 256, height = 256;
  unsigned seed = 1;
  auto* gen = app.add_subcommand("gen-text-corpus", "Write synthetic screen-text images as PPM");
  gen->add_option("dir", dir, "Output directory")->required();
  gen->add_option("--count", count, "Number of images")->check(CLI::Range(1, 10000));
  gen->add_option("--width", width, "Width")->check(CLI::Range(16, 8192));
  gen->add_option("--height", height, "Height")->check(CLI::Range(4, 8192));
  gen->add_option("--seed", seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enc) {
      hlc::EncoderConfig config;
      config.target_bpp = bpp;
      config.qp_base = qp_base;
      config.plt_enabled = !no_plt;
      config.lambdas = lambdas_from(lambda_path);
      config.rc_gain = rc_gain;
      config.rc_max_step = rc_step;
      config.ycbcr = ycbcr;
      const hlc::Frame frame = hlc::bench::load_image(input, ycbcr);
      const hlc::EncodedFrame out = hlc::encode_frame(frame, config);
      write_bytes(output, out.bytes);
      std::printf("%s: %dx%d qp_base %d, %.4f bpp, PSNR %.3f dB\n", output.c_str(), frame.width(), frame.height(),
                  out.stats.qp_base, out.bpp(), hlc::psnr_frame(frame, out.reconstruction));
    } else if (*dec) {
      const auto bytes = read_bytes(input);
      const hlc::DecodedFrame out = hlc::decode_frame(bytes);
      hlc::bench::store_image(out.frame, output, (out.header.flags & hlc::kFlagYcbcr) != 0);
    } else if (*bench) {
      hlc::bench::BenchOptions opt;
      if (!targets.empty()) opt.targets = targets;
      if (no_plt) opt.configs = {{"no-plt", false}};
      opt.lambdas = lambdas_from(lambda_path);
      opt.qp_base = qp_base;
      opt.rc_gain = rc_gain;
      opt.ycbcr = ycbcr;
      opt.threads = threads;
      const auto images = corpus_from(dir, ycbcr);
      const auto rows = hlc::bench::run_corpus(images, opt);
      if (csv_path.empty()) {
        hlc::bench::write_csv(std::cout, rows);
      } else {
        std::ofstream out(csv_path);
        if (!out) throw hlc::Error("cannot write " + csv_path);
        hlc::bench::write_csv(out, rows);
      }
      if (!timing_path.empty()) {
        std::ofstream out(timing_path);
        if (!out) throw hlc::Error("cannot write " + timing_path);
        hlc::bench::write_timing_csv(out, rows);
      }
      int mismatches = 0;
      for (const auto& r : rows) mismatches += r.recon_match ? 0 : 1;
      if (mismatches > 0) {
        std::fprintf(stderr, "error: %d runs decoded differently from the encoder reconstruction\n", mismatches);
        return kExitData;
      }
      if (!no_plt && opt.targets.size() >= 4) {
        std::fprintf(stderr, "BD-PSNR full vs no-plt: %+.4f dB\n",
                     hlc::bench::corpus_bd_psnr(rows, "no-plt", "full"));
      }
    } else if (*cal) {
      const auto images = corpus_from(dir, ycbcr);
      const auto result = hlc::bench::calibrate(images, threads);
      const std::string report = hlc::bench::fit_report(result);
      if (report_out.empty()) {
        std::cout << report;
      } else {
        std::ofstream out(report_out);
        if (!out) throw hlc::Error("cannot write " + report_out);
        out << report;
      }
      if (!table_out.empty()) result.table.save(table_out);
    } else if (*gen) {
      fs::create_directories(dir);
      const auto images = hlc::bench::text_corpus(count, width, height, seed);
      for (const auto& img : images) {
        hlc::bench::store_image(img.frame, fs::path(dir) / (img.name + ".ppm"), false);
      }
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return 0;
}
