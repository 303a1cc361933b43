#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hlc/bench/corpus.hpp"
#include "hlc/codec.hpp"
#include "hlc/error.hpp"
#include "test_util.hpp"

namespace hlc {
namespace {

EncoderConfig fixed_qp(int qp, bool plt) {
  EncoderConfig c;
  c.qp_base = qp;
  c.rc_max_step = 0;
  c.plt_enabled = plt;
  return c;
}

void expect_duality(const Frame& f, const EncoderConfig& config) {
  const EncodedFrame enc = encode_frame(f, config);
  const DecodedFrame dec = decode_frame(enc.bytes);
  ASSERT_EQ(dec.frame, enc.reconstruction);
  EXPECT_EQ(dec.bytes_consumed, enc.bytes.size());
  EXPECT_EQ(enc.stats.cu_count(),
            static_cast<std::int64_t>(((f.width() + 15) / 16) * ((f.height() + 3) / 4)));
  EXPECT_EQ(enc.bytes.size(), kHeaderBytes + static_cast<std::size_t>((enc.stats.payload_bits + 7) / 8));
}

TEST(Codec, UniformSingleCu) {
  Frame f(16, 4, 8);
  for (int c = 0; c < kNumComponents; ++c) {
    for (auto& s : f.plane(c).samples()) s = static_cast<Sample>(50 + 60 * c);
  }
  for (bool plt : {true, false}) {
    for (int qp : {0, 7, 19}) {
      const EncodedFrame enc = encode_frame(f, fixed_qp(qp, plt));
      EXPECT_EQ(decode_frame(enc.bytes).frame, enc.reconstruction);
      if (plt) {
        EXPECT_EQ(enc.reconstruction, f);
        EXPECT_EQ(enc.stats.mode_counts[static_cast<std::size_t>(CuMode::kPlt)], 1);
      }
    }
  }
}

TEST(Codec, DualityOnRandomShapes) {
  std::mt19937 rng(61);
  for (int i = 0; i < 12; ++i) {
    const int w = 1 + static_cast<int>(rng() % 70);
    const int h = 1 + static_cast<int>(rng() % 30);
    const int bd = i % 3 == 0 ? 10 : 8;
    const Frame f = test::random_frame(rng, w, h, bd);
    for (bool plt : {true, false}) {
      EncoderConfig c;
      c.plt_enabled = plt;
      c.target_bpp = 0.5 + 0.25 * (i % 8);
      expect_duality(f, c);
      expect_duality(f, fixed_qp(static_cast<int>(rng() % 20), plt));
    }
  }
}

TEST(Codec, DualityOnSyntheticContent) {
  using bench::ImageKind;
  for (ImageKind k : {ImageKind::kText, ImageKind::kGradient, ImageKind::kNoise, ImageKind::kNatural,
                      ImageKind::kMixed}) {
    const Frame f = bench::make_image(k, 96, 40, 7);
    for (double bpp : {1.0, 1.75}) {
      EncoderConfig c;
      c.target_bpp = bpp;
      expect_duality(f, c);
    }
  }
}

TEST(Codec, NoPltNeverCodesPalette) {
  const Frame f = bench::make_image(bench::ImageKind::kText, 128, 64, 3);
  EncoderConfig c;
  c.plt_enabled = false;
  const EncodedFrame enc = encode_frame(f, c);
  EXPECT_EQ(enc.stats.mode_counts[static_cast<std::size_t>(CuMode::kPlt)], 0);
  EXPECT_EQ(read_header(enc.bytes).flags & kFlagPlt, 0);
  EncoderConfig on;
  EXPECT_GT(encode_frame(f, on).stats.mode_counts[static_cast<std::size_t>(CuMode::kPlt)], 0);
}

TEST(Codec, LosslessPath) {
  std::mt19937 rng(62);
  for (int qp = 0; qp <= 3; ++qp) {
    for (int bd : {8, 10}) {
      const Frame f = test::random_frame(rng, 37, 11, bd);
      const EncodedFrame enc = encode_frame(f, fixed_qp(qp, false));
      EXPECT_EQ(enc.reconstruction, f);
      EXPECT_EQ(decode_frame(enc.bytes).frame, f);
    }
  }
}

TEST(Codec, FramesConcatenateIndependently) {
  std::mt19937 rng(63);
  const Frame a = bench::make_image(bench::ImageKind::kMixed, 64, 32, 1);
  const Frame b = test::random_frame(rng, 33, 9, 10);
  const EncodedFrame ea = encode_frame(a, EncoderConfig{});
  const EncodedFrame eb = encode_frame(b, fixed_qp(9, true));
  // Encoding b first must not change a's bytes.
  EXPECT_EQ(encode_frame(a, EncoderConfig{}).bytes, ea.bytes);

  std::vector<std::uint8_t> joined = ea.bytes;
  joined.insert(joined.end(), eb.bytes.begin(), eb.bytes.end());
  const DecodedFrame da = decode_frame(joined);
  ASSERT_EQ(da.bytes_consumed, ea.bytes.size());
  EXPECT_EQ(da.frame, ea.reconstruction);
  const DecodedFrame db = decode_frame(std::span(joined).subspan(da.bytes_consumed));
  EXPECT_EQ(db.frame, eb.reconstruction);
}

TEST(Codec, Deterministic) {
  const Frame f = bench::make_image(bench::ImageKind::kNatural, 80, 48, 5);
  EXPECT_EQ(encode_frame(f, EncoderConfig{}).bytes, encode_frame(f, EncoderConfig{}).bytes);
  EncoderConfig serial;
  serial.threads = 1;
  EXPECT_EQ(encode_frame(f, serial).bytes, encode_frame(f, EncoderConfig{}).bytes);
}

TEST(Codec, SweepParallelMatchesSerial) {
  const Frame f = pad_frame(bench::make_image(bench::ImageKind::kText, 256, 128, 9));
  EncoderConfig c;
  c.target_bpp = 1.25;
  EXPECT_EQ(sweep_fixed_qp(f, c), sweep_fixed_qp_serial(f, c));
  EXPECT_EQ(choose_qp_base(f, c), choose_qp_base_serial(f, c));
}

// Checked at the last qp of each quantizer shift. Single-qp steps can reverse
// slightly (3 -> 4 on smooth content, lambda changes within one shift).
TEST(Codec, RateFallsAcrossQuantizerSteps) {
  for (auto kind : {bench::ImageKind::kText, bench::ImageKind::kNatural, bench::ImageKind::kGradient,
                    bench::ImageKind::kMixed}) {
    const Frame f = bench::make_image(kind, 64, 32, 11);
    std::size_t prev = SIZE_MAX;
    for (int qp = 3; qp <= kMaxQp; qp += 2) {
      const std::size_t bytes = encode_frame(f, fixed_qp(qp, false)).bytes.size();
      EXPECT_LE(bytes, prev) << "qp " << qp;
      prev = bytes;
    }
  }
}

TEST(Codec, RejectsBadConfig) {
  const Frame f(16, 4, 8);
  EncoderConfig c;
  c.qp_base = 20;
  EXPECT_THROW((void)encode_frame(f, c), std::invalid_argument);
  c.qp_base = 5;
  c.rc_gain = 0;
  EXPECT_THROW((void)encode_frame(f, c), std::invalid_argument);
  Frame bad(16, 4, 8);
  bad.plane(0).at(0, 0) = 300;
  EXPECT_THROW((void)encode_frame(bad, EncoderConfig{}), std::invalid_argument);
}

TEST(Header, RoundTrip) {
  std::mt19937 rng(64);
  for (int i = 0; i < 1000; ++i) {
    BitstreamHeader h;
    h.width = 1 + static_cast<int>(rng() % 65535);
    h.height = 1 + static_cast<int>(rng() % 65535);
    h.bit_depth = rng() % 2 ? 8 : 10;
    h.qp_base = static_cast<int>(rng() % 20);
    h.target_bpp_fixed = static_cast<int>(rng() % 65536);
    h.flags = static_cast<std::uint8_t>(rng() % 4);
    std::vector<std::uint8_t> out;
    write_header(h, out);
    ASSERT_EQ(out.size(), kHeaderBytes);
    ASSERT_EQ(read_header(out), h);
  }
}

TEST(Header, Layout) {
  BitstreamHeader h{300, 2, 10, 7, 448, kFlagPlt};
  std::vector<std::uint8_t> out;
  write_header(h, out);
  const std::vector<std::uint8_t> want{'H', 'L', 'C', '1', 0x01, 0x2C, 0x00, 0x02, 10, 7, 0x01, 0xC0, 0x01};
  EXPECT_EQ(out, want);
}

TEST(Decode, RejectsCorruptInput) {
  const Frame f = bench::make_image(bench::ImageKind::kMixed, 48, 16, 2);
  const EncodedFrame enc = encode_frame(f, EncoderConfig{});

  auto bad = enc.bytes;
  bad[0] = 'X';
  EXPECT_THROW((void)decode_frame(bad), DecodeError);
  bad = enc.bytes;
  bad[8] = 12;  // bit depth
  EXPECT_THROW((void)decode_frame(bad), DecodeError);
  bad = enc.bytes;
  bad[9] = 20;  // qp_base
  EXPECT_THROW((void)decode_frame(bad), DecodeError);
  bad = enc.bytes;
  bad[12] = 0x80;  // unknown flag
  EXPECT_THROW((void)decode_frame(bad), DecodeError);
  bad = enc.bytes;
  bad[4] = bad[5] = 0;  // zero width
  EXPECT_THROW((void)decode_frame(bad), DecodeError);

  for (std::size_t n : {std::size_t{0}, std::size_t{5}, kHeaderBytes, kHeaderBytes + 3, enc.bytes.size() / 2,
                        enc.bytes.size() - 2}) {
    const std::vector<std::uint8_t> cut(enc.bytes.begin(), enc.bytes.begin() + static_cast<std::ptrdiff_t>(n));
    EXPECT_THROW((void)decode_frame(cut), DecodeError) << n;
  }
}

}  // namespace
}  // namespace hlc
