#include <gtest/gtest.h>

#include <random>

#include "hlc/kernels.hpp"
#include "test_util.hpp"

namespace hlc::kernels {
namespace {

TEST(Kernels, SseSadMatchSerial) {
  std::mt19937 rng(81);
  for (int bd : {8, 10}) {
    const Frame a = test::random_frame(rng, 517, 93, bd);
    const Frame b = test::random_frame(rng, 517, 93, bd);
    for (int c = 0; c < kNumComponents; ++c) {
      const auto x = a.plane(c).samples();
      const auto y = b.plane(c).samples();
      EXPECT_EQ(sse(x, y), sse_serial(x, y));
      EXPECT_EQ(sad(x, y), sad_serial(x, y));
      EXPECT_EQ(sse(x, y), plane_sse(a.plane(c), b.plane(c)));
    }
  }
}

TEST(Kernels, SmallExamples) {
  const std::vector<Sample> a{0, 5, 10}, b{3, 5, 6};
  EXPECT_EQ(sse(a, b), 25u);
  EXPECT_EQ(sad(a, b), 7u);
  EXPECT_EQ(sse(std::span<const Sample>{}, std::span<const Sample>{}), 0u);
  EXPECT_THROW((void)sse(a, std::span<const Sample>(b).first(2)), std::invalid_argument);
}

TEST(Kernels, ColorConversionMatchesSerial) {
  std::mt19937 rng(82);
  for (int bd : {8, 10}) {
    const Frame f = test::random_frame(rng, 301, 77, bd);
    Frame p = f, s = f;
    rgb_to_ycbcr(p);
    rgb_to_ycbcr_serial(s);
    ASSERT_EQ(p, s);
    ycbcr_to_rgb(p);
    ycbcr_to_rgb_serial(s);
    ASSERT_EQ(p, s);
  }
}

}  // namespace
}  // namespace hlc::kernels
