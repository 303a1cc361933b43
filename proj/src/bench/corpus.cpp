#include "hlc/bench/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <random>

#include "hlc/bench/image_io.hpp"
#include "hlc/error.hpp"

namespace hlc::bench {

namespace {

using Rgb = std::array<int, 3>;

class Canvas {
 public:
  Canvas(int w, int h) : w_(w), h_(h), px_(static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {}

  [[nodiscard]] int width() const { return w_; }
  [[nodiscard]] int height() const { return h_; }
  Rgb& at(int x, int y) { return px_[static_cast<std::size_t>(y) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(x)]; }

  void fill_rect(int x0, int y0, int w, int h, const Rgb& c) {
    for (int y = std::max(0, y0); y < std::min(h_, y0 + h); ++y) {
      for (int x = std::max(0, x0); x < std::min(w_, x0 + w); ++x) {
        at(x, y) = c;
      }
    }
  }

  [[nodiscard]] Frame to_frame(int bit_depth) const {
    Frame f(w_, h_, bit_depth);
    const int max = (1 << bit_depth) - 1;
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        const Rgb& p = px_[static_cast<std::size_t>(y) * static_cast<std::size_t>(w_) + static_cast<std::size_t>(x)];
        for (int c = 0; c < kNumComponents; ++c) {
          const int v = std::clamp(p[static_cast<std::size_t>(c)], 0, 255);
          f.plane(c).at(x, y) = static_cast<Sample>(bit_depth == 8 ? v : (v * max + 127) / 255);
        }
      }
    }
    return f;
  }

 private:
  int w_;
  int h_;
  std::vector<Rgb> px_;
};

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double unit(std::mt19937& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

Rgb blend(const Rgb& a, const Rgb& b, double t) {
  Rgb out;
  for (std::size_t k = 0; k < 3; ++k) {
    out[k] = static_cast<int>(std::lround(a[k] * (1.0 - t) + b[k] * t));
  }
  return out;
}

// Multi-octave value noise in [0,1].
class ValueNoise {
 public:
  ValueNoise(std::mt19937& rng, int cell) : cell_(cell) {
    for (auto& v : lattice_) v = unit(rng);
  }

  [[nodiscard]] double sample(double x, double y) const {
    const double fx = x / cell_;
    const double fy = y / cell_;
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const double tx = smooth(fx - ix);
    const double ty = smooth(fy - iy);
    const double a = lerp(node(ix, iy), node(ix + 1, iy), tx);
    const double b = lerp(node(ix, iy + 1), node(ix + 1, iy + 1), tx);
    return lerp(a, b, ty);
  }

 private:
  static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
  static double lerp(double a, double b, double t) { return a + (b - a) * t; }
  [[nodiscard]] double node(int x, int y) const {
    return lattice_[static_cast<std::size_t>(((x & 63) * 64 + (y & 63)))];
  }

  int cell_;
  std::array<double, 64 * 64> lattice_{};
};

void draw_natural(Canvas& cv, std::mt19937& rng, int x0, int y0, int w, int h) {
  std::vector<ValueNoise> octaves;
  for (int cell = 64; cell >= 2; cell /= 2) {
    octaves.emplace_back(rng, cell);
  }
  std::array<ValueNoise, 3> tint{ValueNoise(rng, 48), ValueNoise(rng, 48), ValueNoise(rng, 48)};
  std::normal_distribution<double> grain(0.0, 1.5);
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) {
      double lum = 0.0;
      double amp = 1.0;
      double norm = 0.0;
      for (const auto& o : octaves) {
        lum += amp * o.sample(x, y);
        norm += amp;
        amp *= 0.55;
      }
      lum /= norm;
      Rgb& p = cv.at(x, y);
      for (std::size_t c = 0; c < 3; ++c) {
        const double t = 0.6 + 0.8 * tint[c].sample(x + 1000.0 * c, y);
        p[c] = static_cast<int>(std::lround(std::clamp(255.0 * lum * t + grain(rng), 0.0, 255.0)));
      }
    }
  }
}

using Glyph = std::array<std::uint8_t, 7>;  // 5 columns per row, bit 4 = leftmost

std::vector<Glyph> make_font(std::mt19937& rng) {
  std::vector<Glyph> font(40);
  for (auto& g : font) {
    g.fill(0);
    // A few strokes: verticals, horizontals and a diagonal.
    const int strokes = uniform(rng, 2, 4);
    for (int s = 0; s < strokes; ++s) {
      switch (uniform(rng, 0, 2)) {
        case 0: {
          const int col = uniform(rng, 0, 4);
          const int top = uniform(rng, 0, 3);
          for (int r = top; r < 7; ++r) g[static_cast<std::size_t>(r)] |= static_cast<std::uint8_t>(1 << (4 - col));
          break;
        }
        case 1: {
          const int row = uniform(rng, 0, 6);
          g[static_cast<std::size_t>(row)] = 0x1F;
          break;
        }
        default: {
          for (int r = 0; r < 5; ++r) {
            g[static_cast<std::size_t>(r + 1)] |= static_cast<std::uint8_t>(1 << (4 - r));
          }
          break;
        }
      }
    }
  }
  return font;
}

void draw_text_block(Canvas& cv, std::mt19937& rng, const std::vector<Glyph>& font, int x0, int y0, int w, int h,
                     const Rgb& ink, const Rgb& bg, int scale, bool antialias) {
  const int gw = 5 * scale;
  const int gh = 7 * scale;
  const int advance = gw + scale;
  const int line = gh + 2 * scale + uniform(rng, 0, 2);
  for (int ly = y0; ly + gh <= y0 + h; ly += line) {
    int x = x0;
    while (x + gw <= x0 + w) {
      const int word = uniform(rng, 2, 8);
      for (int i = 0; i < word && x + gw <= x0 + w; ++i, x += advance) {
        const Glyph& g = font[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(font.size()) - 1))];
        for (int r = 0; r < 7; ++r) {
          for (int col = 0; col < 5; ++col) {
            if ((g[static_cast<std::size_t>(r)] >> (4 - col)) & 1) {
              cv.fill_rect(x + col * scale, ly + r * scale, scale, scale, ink);
            }
          }
        }
        if (antialias) {
          // One blended step on the right edge of each stroke.
          for (int yy = ly; yy < ly + gh && yy < cv.height(); ++yy) {
            for (int xx = x + 1; xx < x + gw + 1 && xx < cv.width(); ++xx) {
              if (cv.at(xx - 1, yy) == ink && cv.at(xx, yy) == bg) {
                cv.at(xx, yy) = blend(bg, ink, 0.5);
              }
            }
          }
        }
      }
      x += advance;  // space
    }
  }
}

Frame make_text(int w, int h, std::mt19937& rng, int bit_depth) {
  const bool dark = unit(rng) < 0.25;
  const Rgb bg = dark ? Rgb{uniform(rng, 20, 45), uniform(rng, 20, 45), uniform(rng, 25, 50)}
                         : Rgb{uniform(rng, 235, 255), uniform(rng, 235, 255), uniform(rng, 235, 255)};
  const Rgb ink = dark ? Rgb{uniform(rng, 200, 240), uniform(rng, 200, 240), uniform(rng, 200, 240)}
                       : Rgb{uniform(rng, 0, 40), uniform(rng, 0, 40), uniform(rng, 0, 60)};
  const Rgb accent{uniform(rng, 0, 255), uniform(rng, 60, 200), uniform(rng, 100, 255)};
  const Rgb panel = blend(bg, accent, 0.15);
  const bool antialias = unit(rng) < 0.5;
  const int scale = unit(rng) < 0.6 ? 1 : 2;

  Canvas cv(w, h);
  cv.fill_rect(0, 0, w, h, bg);
  const auto font = make_font(rng);

  // Title bar, a side panel, then body text.
  const int bar = 12 * scale + 4;
  cv.fill_rect(0, 0, w, bar, accent);
  draw_text_block(cv, rng, font, 6, 3, w / 2, bar - 3, bg, accent, scale, false);
  const int panel_w = w / 4;
  cv.fill_rect(0, bar, panel_w, h - bar, panel);
  draw_text_block(cv, rng, font, 4, bar + 6, panel_w - 8, h - bar - 12, accent, panel, scale, antialias);
  draw_text_block(cv, rng, font, panel_w + 8, bar + 8, w - panel_w - 16, h - bar - 16, ink, bg, scale, antialias);
  return cv.to_frame(bit_depth);
}

Frame make_gradient(int w, int h, std::mt19937& rng, int bit_depth) {
  Canvas cv(w, h);
  const bool radial = unit(rng) < 0.3;
  std::array<double, 3> ax{}, ay{}, base{};
  for (std::size_t c = 0; c < 3; ++c) {
    ax[c] = (unit(rng) - 0.5) * 2.0;
    ay[c] = (unit(rng) - 0.5) * 2.0;
    base[c] = 40.0 + 170.0 * unit(rng);
  }
  const double cx = w * unit(rng);
  const double cy = h * unit(rng);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        double v;
        if (radial) {
          v = base[c] + 0.6 * ax[c] * std::hypot(x - cx, y - cy);
        } else {
          v = base[c] + 0.5 * (ax[c] * (x - w / 2.0) + ay[c] * (y - h / 2.0));
        }
        cv.at(x, y)[c] = static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return cv.to_frame(bit_depth);
}

Frame make_noise(int w, int h, std::mt19937& rng, int bit_depth) {
  Canvas cv(w, h);
  const bool gaussian = unit(rng) < 0.5;
  std::normal_distribution<double> n(128.0, 24.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        cv.at(x, y)[c] = gaussian ? static_cast<int>(std::lround(std::clamp(n(rng), 0.0, 255.0))) : uniform(rng, 0, 255);
      }
    }
  }
  return cv.to_frame(bit_depth);
}

Frame make_natural(int w, int h, std::mt19937& rng, int bit_depth) {
  Canvas cv(w, h);
  draw_natural(cv, rng, 0, 0, w, h);
  return cv.to_frame(bit_depth);
}

// Game/UI-like composite: textured backdrop, flat shapes, a HUD with text.
Frame make_mixed(int w, int h, std::mt19937& rng, int bit_depth) {
  Canvas cv(w, h);
  draw_natural(cv, rng, 0, 0, w, h);
  const int shapes = uniform(rng, 4, 9);
  for (int s = 0; s < shapes; ++s) {
    const Rgb color{uniform(rng, 0, 255), uniform(rng, 0, 255), uniform(rng, 0, 255)};
    const int sw = uniform(rng, w / 10, w / 3);
    const int sh = uniform(rng, h / 10, h / 3);
    const int sx = uniform(rng, 0, w - sw);
    const int sy = uniform(rng, 0, h - sh);
    if (unit(rng) < 0.5) {
      cv.fill_rect(sx, sy, sw, sh, color);
    } else {
      const double r = std::min(sw, sh) / 2.0;
      for (int y = sy; y < sy + sh; ++y) {
        for (int x = sx; x < sx + sw; ++x) {
          if (std::hypot(x - sx - r, y - sy - r) <= r) cv.at(x, y) = color;
        }
      }
    }
  }
  const Rgb hud{20, 20, 28};
  const int hud_h = std::max(16, h / 6);
  cv.fill_rect(0, h - hud_h, w, hud_h, hud);
  const auto font = make_font(rng);
  draw_text_block(cv, rng, font, 4, h - hud_h + 3, w - 8, hud_h - 4, Rgb{240, 220, 90}, hud, 1, false);
  return cv.to_frame(bit_depth);
}

}  // namespace

Frame make_image(ImageKind kind, int width, int height, std::uint32_t seed, int bit_depth) {
  std::mt19937 rng(seed);
  switch (kind) {
    case ImageKind::kText: return make_text(width, height, rng, bit_depth);
    case ImageKind::kGradient: return make_gradient(width, height, rng, bit_depth);
    case ImageKind::kNoise: return make_noise(width, height, rng, bit_depth);
    case ImageKind::kNatural: return make_natural(width, height, rng, bit_depth);
    case ImageKind::kMixed: return make_mixed(width, height, rng, bit_depth);
  }
  throw std::invalid_argument("unknown image kind");
}

std::vector<CorpusImage> test_corpus(int width, int height) {
  struct Entry {
    const char* name;
    ImageKind kind;
    std::uint32_t seed;
    int bit_depth;
  };
  static constexpr std::array<Entry, 24> kEntries{{
      {"text_00", ImageKind::kText, 101, 8},     {"text_01", ImageKind::kText, 102, 8},
      {"text_02", ImageKind::kText, 103, 8},     {"text_03", ImageKind::kText, 104, 8},
      {"text_04", ImageKind::kText, 105, 8},     {"text_05", ImageKind::kText, 106, 8},
      {"text_06", ImageKind::kText, 107, 8},     {"text_07", ImageKind::kText, 108, 10},
      {"gradient_00", ImageKind::kGradient, 201, 8}, {"gradient_01", ImageKind::kGradient, 202, 8},
      {"gradient_02", ImageKind::kGradient, 203, 8}, {"gradient_03", ImageKind::kGradient, 204, 10},
      {"noise_00", ImageKind::kNoise, 301, 8},   {"noise_01", ImageKind::kNoise, 302, 8},
      {"noise_02", ImageKind::kNoise, 303, 8},   {"natural_00", ImageKind::kNatural, 401, 8},
      {"natural_01", ImageKind::kNatural, 402, 8}, {"natural_02", ImageKind::kNatural, 403, 8},
      {"natural_03", ImageKind::kNatural, 404, 8}, {"natural_04", ImageKind::kNatural, 405, 10},
      {"mixed_00", ImageKind::kMixed, 501, 8},   {"mixed_01", ImageKind::kMixed, 502, 8},
      {"mixed_02", ImageKind::kMixed, 503, 8},   {"mixed_03", ImageKind::kMixed, 504, 8},
  }};
  std::vector<CorpusImage> out;
  out.reserve(kEntries.size());
  for (const auto& e : kEntries) {
    out.push_back({e.name, make_image(e.kind, width, height, e.seed, e.bit_depth)});
  }
  return out;
}

std::vector<CorpusImage> text_corpus(int count, int width, int height, std::uint32_t seed) {
  std::vector<CorpusImage> out;
  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "text_%03d", i);
    out.push_back({name, make_image(ImageKind::kText, width, height, seed + static_cast<std::uint32_t>(i) * 7919U)});
  }
  return out;
}

std::vector<CorpusImage> load_corpus(const std::filesystem::path& dir, bool to_ycbcr) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ext == ".ppm" || ext == ".png") paths.push_back(entry.path());
  }
  std::ranges::sort(paths);
  std::vector<CorpusImage> out;
  for (const auto& p : paths) {
    try {
      out.push_back({p.filename().string(), load_image(p, to_ycbcr)});
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << p.string() << ": " << e.what() << '\n';
    }
  }
  return out;
}

}  // namespace hlc::bench
