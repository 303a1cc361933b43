#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hlc/bitstream.hpp"
#include "hlc/core.hpp"
#include "hlc/error.hpp"
#include "test_util.hpp"

namespace hlc {
namespace {

TEST(Qp, RejectsOutOfRange) {
  EXPECT_NO_THROW(Qp(0));
  EXPECT_NO_THROW(Qp(19));
  EXPECT_THROW(Qp(-1), std::invalid_argument);
  EXPECT_THROW(Qp(20), std::invalid_argument);
}

TEST(Frame, ValidateRejectsOutOfRangeSample) {
  Frame f(4, 4, 8);
  f.plane(1).at(2, 2) = 256;
  EXPECT_THROW(f.validate(), std::invalid_argument);
  Frame g(4, 4, 10);
  g.plane(1).at(2, 2) = 1023;
  EXPECT_NO_THROW(g.validate());
  EXPECT_THROW(Frame(4, 4, 12), std::invalid_argument);
}

TEST(PadFrame, AlignedIsIdentity) {
  std::mt19937 rng(1);
  const Frame f = test::random_frame(rng, 32, 8, 8);
  EXPECT_EQ(pad_frame(f), f);
  const Frame zero(16, 4, 8);
  EXPECT_EQ(pad_frame(zero), zero);
  const Frame hd(1920, 1080, 8);
  const Frame p = pad_frame(hd);
  EXPECT_EQ(p.width(), 1920);
  EXPECT_EQ(p.height(), 1080);
}

TEST(PadFrame, ReplicatesLastColumnAndRow) {
  std::mt19937 rng(2);
  const Frame f = test::random_frame(rng, 17, 5, 8);
  const Frame p = pad_frame(f);
  ASSERT_EQ(p.width(), 32);
  ASSERT_EQ(p.height(), 8);
  for (int c = 0; c < kNumComponents; ++c) {
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 32; ++x) {
        EXPECT_EQ(p.plane(c).at(x, y), f.plane(c).at(std::min(x, 16), std::min(y, 4)));
      }
    }
  }
  EXPECT_EQ(pad_frame(p), p);
}

TEST(TileFrame, RasterOrder) {
  const auto cus = tile_frame(Frame(32, 8, 8));
  ASSERT_EQ(cus.size(), 4u);
  EXPECT_EQ(cus[0].x0, 0);
  EXPECT_EQ(cus[0].y0, 0);
  EXPECT_EQ(cus[1].x0, 16);
  EXPECT_EQ(cus[1].y0, 0);
  EXPECT_EQ(cus[2].x0, 0);
  EXPECT_EQ(cus[2].y0, 4);
  EXPECT_EQ(cus[3].x0, 16);
  EXPECT_EQ(cus[3].y0, 4);
  EXPECT_EQ(tile_frame(Frame(16, 4, 8)).size(), 1u);
  EXPECT_EQ(tile_frame(Frame(1920, 1080, 8)).size(), 32400u);
}

TEST(TileFrame, UnalignedThrows) {
  EXPECT_THROW((void)tile_frame(Frame(17, 4, 8)), std::invalid_argument);
  EXPECT_THROW((void)tile_frame(Frame(16, 5, 8)), std::invalid_argument);
}

TEST(TileFrame, UntileIsInverse) {
  std::mt19937 rng(3);
  const Frame f = test::random_frame(rng, 64, 16, 10);
  const auto cus = tile_frame(f);
  EXPECT_EQ(untile_frame(cus, 64, 16, 10), f);
}

TEST(Psnr, Examples) {
  Plane a(16, 16, 100);
  Plane b(16, 16, 101);
  EXPECT_TRUE(std::isinf(psnr(a, a, 8)));
  EXPECT_NEAR(psnr(a, b, 8), 48.1308036, 1e-6);
  EXPECT_DOUBLE_EQ(psnr(Plane(8, 8, 0), Plane(8, 8, 255), 8), 0.0);
  EXPECT_THROW((void)psnr(Plane(8, 8), Plane(8, 4), 8), std::invalid_argument);
}

TEST(Psnr, Symmetric) {
  std::mt19937 rng(4);
  const Frame f = test::random_frame(rng, 32, 8, 8);
  const Frame g = test::random_frame(rng, 32, 8, 8);
  for (int c = 0; c < kNumComponents; ++c) {
    EXPECT_EQ(psnr(f.plane(c), g.plane(c), 8), psnr(g.plane(c), f.plane(c), 8));
  }
  EXPECT_EQ(psnr_frame(f, g), psnr_frame(g, f));
}

TEST(Bitstream, KnownLayout) {
  BitSink s;
  s.write(0b101, 3);
  s.write_bit(true);
  s.write(0xF, 4);
  s.write(0x1, 2);
  EXPECT_EQ(s.to_string(), "1011111101");
  EXPECT_EQ(s.bit_count(), 10u);
  ASSERT_EQ(s.bytes().size(), 2u);
  EXPECT_EQ(s.bytes()[0], 0xBF);
  EXPECT_EQ(s.bytes()[1], 0x40);
}

TEST(Bitstream, RandomRoundTrip) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> width(0, 32);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<std::uint32_t, int>> fields;
    BitSink sink;
    std::size_t total = 0;
    for (int i = 0; i < 100; ++i) {
      const int n = width(rng);
      const std::uint32_t v = n == 0 ? 0 : static_cast<std::uint32_t>(rng()) >> (32 - n);
      fields.emplace_back(v, n);
      sink.write(v, n);
      total += static_cast<std::size_t>(n);
    }
    ASSERT_EQ(sink.bit_count(), total);
    BitSource src(sink.bytes(), sink.bit_count());
    for (const auto& [v, n] : fields) {
      ASSERT_EQ(src.read(n), v);
    }
    EXPECT_EQ(src.remaining(), 0u);
    EXPECT_THROW((void)src.read_bit(), DecodeError);
  }
}

TEST(Bitstream, AppendKeepsAlignment) {
  BitSink a, b;
  a.write(0b1, 1);
  b.write(0b0110, 4);
  b.write(0xABC, 12);
  a.append(b);
  EXPECT_EQ(a.to_string(), "1" + b.to_string());
}

TEST(Bitstream, AlignPadsWithZeros) {
  BitSink s;
  s.write(0b111, 3);
  s.align();
  EXPECT_EQ(s.bit_count(), 8u);
  EXPECT_EQ(s.bytes()[0], 0xE0);
  BitSource src(s.bytes());
  (void)src.read(3);
  src.align();
  EXPECT_EQ(src.position(), 8u);
}

}  // namespace
}  // namespace hlc
