#include "hlc/rdo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hlc/error.hpp"

namespace hlc::rdo {

namespace {

// Produced by `hlc calibrate` on the generated test corpus.
constexpr std::array<double, kNumQps> kDefaultLambdas{
    0.049628911558156658, 0.049628911558156658, 0.049628911558156658, 0.049628911558156658,
    0.28638151501994968, 0.52847406119374962, 0.56648634881910187, 1.1225912817474661,
    1.3092971733482561, 1.7331176869117288, 2.8404472104429934, 3.6837889183292982,
    5.2863067854468087, 7.8447850427237364, 10.445694603371079, 13.794071969396279,
    19.714990951844115, 23.617133819199651, 37.344040460643754, 48.82789983777068};

void check_table(const std::array<double, kNumQps>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw std::invalid_argument("lambda values must be finite and nonnegative");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw std::invalid_argument("lambda table must be nondecreasing in qp");
    }
  }
}

}  // namespace

const std::array<double, kNumQps>& default_lambdas() noexcept { return kDefaultLambdas; }

RdModel fit_rd_model(std::span<const RdPoint> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("R-D fit needs at least 3 points");
  }
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    if (!(p.rate_bpp > 0.0) || !(p.distortion > 0.0)) {
      throw std::invalid_argument("R-D points must be positive");
    }
    sx += std::log(p.rate_bpp);
    sy += std::log(p.distortion);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : points) {
    const double dx = std::log(p.rate_bpp) - mx;
    const double dy = std::log(p.distortion) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("R-D fit needs at least two distinct rates");
  }
  const double slope = sxy / sxx;
  RdModel m;
  m.k = -slope;
  m.c = std::exp(my - slope * mx);
  if (syy <= 0.0) {
    m.r_square = 1.0;
  } else {
    double ss_res = 0;
    for (const auto& p : points) {
      const double e = std::log(p.distortion) - (my + slope * (std::log(p.rate_bpp) - mx));
      ss_res += e * e;
    }
    m.r_square = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return m;
}

LambdaTable::LambdaTable() : values_(kDefaultLambdas) {}

LambdaTable::LambdaTable(const std::array<double, kNumQps>& values) : values_(values) {
  check_table(values_);
}

std::string LambdaTable::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (int qp = 0; qp < kNumQps; ++qp) {
    os << qp << ' ' << values_[static_cast<std::size_t>(qp)] << '\n';
  }
  return os.str();
}

LambdaTable LambdaTable::parse(const std::string& text) {
  std::array<double, kNumQps> values{};
  std::array<bool, kNumQps> seen{};
  std::istringstream is(text);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    int qp = -1;
    double value = 0;
    std::string extra;
    if (!(ls >> qp >> value) || (ls >> extra) || qp < 0 || qp > kMaxQp || seen[static_cast<std::size_t>(qp)]) {
      throw Error("malformed lambda table line: " + line);
    }
    seen[static_cast<std::size_t>(qp)] = true;
    values[static_cast<std::size_t>(qp)] = value;
    ++lines;
  }
  if (lines != kNumQps) {
    throw Error("lambda table must list all 20 QPs");
  }
  try {
    return LambdaTable(values);
  } catch (const std::invalid_argument& e) {
    throw Error(e.what());
  }
}

LambdaTable LambdaTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open lambda table: " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void LambdaTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write lambda table: " + path);
  }
  out << to_text();
}

LambdaTable derive_lambda_table(const RdModel& model, const std::array<std::optional<double>, kNumQps>& rate_anchor) {
  if (!(model.c > 0.0) || !(model.k > 0.0)) {
    throw std::invalid_argument("R-D model needs positive C and K");
  }
  std::array<double, kNumQps> values{};
  for (std::size_t qp = 0; qp < values.size(); ++qp) {
    if (!rate_anchor[qp] || !(*rate_anchor[qp] > 0.0)) {
      throw std::invalid_argument("missing or nonpositive rate anchor for qp " + std::to_string(qp));
    }
    values[qp] = model.c * model.k * std::pow(*rate_anchor[qp], -model.k - 1.0);
  }
  return LambdaTable(values);
}

const ModeCost& choose_mode(std::span<const ModeCost> costs, double lambda) {
  if (costs.empty()) {
    throw std::invalid_argument("choose_mode needs at least one candidate");
  }
  const ModeCost* best = &costs[0];
  double best_j = best->cost(lambda);
  for (const auto& c : costs.subspan(1)) {
    const double j = c.cost(lambda);
    if (j < best_j || (j == best_j && c.mode < best->mode)) {
      best = &c;
      best_j = j;
    }
  }
  return *best;
}

}  // namespace hlc::rdo
