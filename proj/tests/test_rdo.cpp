#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hlc/error.hpp"
#include "hlc/rdo.hpp"

namespace hlc::rdo {
namespace {

std::array<std::optional<double>, kNumQps> anchors_from(double r0, double ratio) {
  std::array<std::optional<double>, kNumQps> a{};
  double r = r0;
  for (auto& x : a) {
    x = r;
    r *= ratio;
  }
  return a;
}

TEST(FitRdModel, RecoversExactPowerLaw) {
  std::vector<RdPoint> pts;
  for (double r : {0.5, 1.0, 1.5, 2.5, 4.0, 7.0}) pts.push_back({r, 100.0 * std::pow(r, -1.5)});
  const RdModel m = fit_rd_model(pts);
  EXPECT_NEAR(m.c, 100.0, 1e-9);
  EXPECT_NEAR(m.k, 1.5, 1e-9);
  EXPECT_NEAR(m.r_square, 1.0, 1e-12);
}

TEST(FitRdModel, DuplicatedPointsDoNotChangeFit) {
  std::vector<RdPoint> pts{{1.0, 9.0}, {2.0, 4.1}, {4.0, 1.9}};
  const RdModel a = fit_rd_model(pts);
  auto twice = pts;
  twice.insert(twice.end(), pts.begin(), pts.end());
  const RdModel b = fit_rd_model(twice);
  EXPECT_NEAR(a.c, b.c, 1e-12);
  EXPECT_NEAR(a.k, b.k, 1e-12);
  EXPECT_NEAR(a.r_square, b.r_square, 1e-12);
}

TEST(FitRdModel, NoisyFitStaysClose) {
  std::mt19937 rng(41);
  std::normal_distribution<double> noise(0.0, 0.02);
  std::vector<RdPoint> pts;
  for (int i = 1; i <= 20; ++i) {
    const double r = 0.25 * i;
    pts.push_back({r, 40.0 * std::pow(r, -1.8) * std::exp(noise(rng))});
  }
  const RdModel m = fit_rd_model(pts);
  EXPECT_NEAR(m.k, 1.8, 0.05);
  EXPECT_NEAR(m.c, 40.0, 2.0);
  EXPECT_GT(m.r_square, 0.99);
}

TEST(FitRdModel, RejectsDegenerateInput) {
  std::vector<RdPoint> two{{1.0, 2.0}, {2.0, 1.0}};
  EXPECT_THROW((void)fit_rd_model(two), std::invalid_argument);
  std::vector<RdPoint> zero{{1.0, 2.0}, {2.0, 0.0}, {3.0, 1.0}};
  EXPECT_THROW((void)fit_rd_model(zero), std::invalid_argument);
  std::vector<RdPoint> same{{2.0, 3.0}, {2.0, 2.0}, {2.0, 1.0}};
  EXPECT_THROW((void)fit_rd_model(same), std::invalid_argument);
}

TEST(DeriveLambda, Examples) {
  std::array<std::optional<double>, kNumQps> a{};
  for (auto& x : a) x = 2.0;
  const LambdaTable t = derive_lambda_table({100.0, 1.5, 1.0}, a);
  EXPECT_NEAR(t[Qp(0)], 26.5165, 1e-4);
  for (auto& x : a) x = 1.0;
  EXPECT_DOUBLE_EQ(derive_lambda_table({1.0, 1.0, 1.0}, a)[Qp(7)], 1.0);
}

TEST(DeriveLambda, NondecreasingWhenRateFalls) {
  const LambdaTable t = derive_lambda_table({30.0, 1.7, 1.0}, anchors_from(6.0, 0.85));
  for (int qp = 1; qp <= kMaxQp; ++qp) EXPECT_GE(t[Qp(qp)], t[Qp(qp - 1)]);
}

TEST(DeriveLambda, RejectsMissingAnchor) {
  auto a = anchors_from(6.0, 0.85);
  a[5].reset();
  EXPECT_THROW((void)derive_lambda_table({30.0, 1.7, 1.0}, a), std::invalid_argument);
  EXPECT_THROW((void)derive_lambda_table({0.0, 1.7, 1.0}, anchors_from(6.0, 0.85)), std::invalid_argument);
}

TEST(DefaultLambdas, ValidTable) {
  const LambdaTable t;
  EXPECT_EQ(t.values(), default_lambdas());
  for (int qp = 1; qp <= kMaxQp; ++qp) EXPECT_GE(t[Qp(qp)], t[Qp(qp - 1)]);
  EXPECT_GT(t[Qp(0)], 0.0);
}

TEST(ChooseMode, Examples) {
  const std::vector<ModeCost> c{{CuMode::kDc, 100, 400}, {CuMode::kVt, 120, 300}, {CuMode::kHt, 500, 50},
                                {CuMode::kPlt, 90, 900}};
  EXPECT_EQ(choose_mode(c, 0.0).mode, CuMode::kPlt);
  EXPECT_EQ(choose_mode(c, 1e6).mode, CuMode::kHt);
  EXPECT_EQ(choose_mode(c, 0.1).mode, CuMode::kDc);  // 140, 150, 505, 180
  EXPECT_EQ(choose_mode(c, 0.3).mode, CuMode::kVt);  // 220, 210, 515, 360
}

TEST(ChooseMode, TiesPreferEarlierMode) {
  std::vector<ModeCost> c{{CuMode::kPlt, 10, 10}, {CuMode::kHt, 10, 10}, {CuMode::kVt, 10, 10},
                          {CuMode::kDc, 10, 10}};
  EXPECT_EQ(choose_mode(c, 1.0).mode, CuMode::kDc);
  c.pop_back();
  EXPECT_EQ(choose_mode(c, 1.0).mode, CuMode::kVt);
  EXPECT_THROW((void)choose_mode(std::span<const ModeCost>{}, 1.0), std::invalid_argument);
}

TEST(LambdaTableText, RoundTrip) {
  const LambdaTable t = derive_lambda_table({47.0, 1.83, 1.0}, anchors_from(5.0, 0.8));
  EXPECT_EQ(LambdaTable::parse(t.to_text()), t);
  EXPECT_EQ(LambdaTable::parse(LambdaTable{}.to_text()), LambdaTable{});
}

TEST(LambdaTableText, RejectsMalformed) {
  const std::string good = LambdaTable{}.to_text();
  EXPECT_THROW((void)LambdaTable::parse(""), Error);
  EXPECT_THROW((void)LambdaTable::parse(good + "3 1.0\n"), Error);             // duplicate
  EXPECT_THROW((void)LambdaTable::parse(good.substr(0, good.rfind("19"))), Error);  // missing qp 19
  EXPECT_THROW((void)LambdaTable::parse("0 1 extra\n"), Error);
  std::string bad;
  for (int qp = 0; qp < kNumQps; ++qp) bad += std::to_string(qp) + " " + std::to_string(20 - qp) + "\n";
  EXPECT_THROW((void)LambdaTable::parse(bad), Error);  // decreasing
  EXPECT_THROW((void)LambdaTable::load("/nonexistent/lambda.txt"), Error);
}

}  // namespace
}  // namespace hlc::rdo
