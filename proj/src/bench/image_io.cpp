#include "hlc/bench/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "hlc/error.hpp"
#include "hlc/kernels.hpp"

namespace hlc::bench {

namespace {

constexpr int kMaxDimension = 1 << 15;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

class PpmTokenizer {
 public:
  explicit PpmTokenizer(std::span<const std::uint8_t> b) : b_(b) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(b_[pos_])) {
      throw Error("malformed PPM header");
    }
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_++] - '0');
      if (v > kMaxDimension * 2L) {
        throw Error("PPM header value too large");
      }
    }
    return static_cast<int>(v);
  }

  std::size_t raster_start() {
    if (pos_ >= b_.size() || !std::isspace(b_[pos_])) {
      throw Error("malformed PPM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(b_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 2;
};

struct PngReadHandle {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadHandle() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct PngWriteHandle {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteHandle() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

struct MemoryReader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t n) {
  auto* r = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (r->pos + n > r->bytes.size()) {
    png_error(png, "truncated PNG");
  }
  std::copy_n(r->bytes.begin() + static_cast<std::ptrdiff_t>(r->pos), n, out);
  r->pos += n;
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t n) {
  auto* v = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  v->insert(v->end(), data, data + n);
}

void png_flush_noop(png_structp) {}

Frame decode_png(std::span<const std::uint8_t> bytes) {
  PngReadHandle h;
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) throw Error("png_create_read_struct failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) throw Error("png_create_info_struct failed");

  MemoryReader reader{bytes};
  std::vector<std::uint8_t> raster;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int depth = 0;
  if (setjmp(png_jmpbuf(h.png))) {
    throw Error("invalid PNG data");
  }
  png_set_read_fn(h.png, &reader, png_read_from_memory);
  png_read_info(h.png, h.info);
  width = png_get_image_width(h.png, h.info);
  height = png_get_image_height(h.png, h.info);
  depth = png_get_bit_depth(h.png, h.info);
  const int color = png_get_color_type(h.png, h.info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(h.png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(h.png);
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(h.png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(h.png);
  if (png_get_valid(h.png, h.info, PNG_INFO_tRNS)) png_set_strip_alpha(h.png);
  png_read_update_info(h.png, h.info);
  depth = png_get_bit_depth(h.png, h.info);
  if (width == 0 || height == 0 || width > kMaxDimension || height > kMaxDimension) {
    throw Error("PNG dimensions unsupported");
  }
  const std::size_t stride = png_get_rowbytes(h.png, h.info);
  raster.resize(stride * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = raster.data() + y * stride;
  png_read_image(h.png, rows.data());
  png_read_end(h.png, nullptr);

  const bool wide = depth == 16;
  Frame f(static_cast<int>(width), static_cast<int>(height), wide ? 10 : 8);
  for (png_uint_32 y = 0; y < height; ++y) {
    const std::uint8_t* row = rows[y];
    for (png_uint_32 x = 0; x < width; ++x) {
      for (int c = 0; c < kNumComponents; ++c) {
        Sample s;
        if (wide) {
          const std::size_t at = (x * 3 + static_cast<std::size_t>(c)) * 2;
          s = static_cast<Sample>(((row[at] << 8) | row[at + 1]) >> 6);
        } else {
          s = row[x * 3 + static_cast<std::size_t>(c)];
        }
        f.plane(c).at(static_cast<int>(x), static_cast<int>(y)) = s;
      }
    }
  }
  return f;
}

std::vector<std::uint8_t> encode_png(const Frame& frame) {
  PngWriteHandle h;
  h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) throw Error("png_create_write_struct failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) throw Error("png_create_info_struct failed");

  const bool wide = frame.bit_depth() > 8;
  const std::size_t bytes_per_sample = wide ? 2 : 1;
  const std::size_t stride = static_cast<std::size_t>(frame.width()) * 3 * bytes_per_sample;
  std::vector<std::uint8_t> raster(stride * static_cast<std::size_t>(frame.height()));
  for (int y = 0; y < frame.height(); ++y) {
    std::uint8_t* row = raster.data() + static_cast<std::size_t>(y) * stride;
    for (int x = 0; x < frame.width(); ++x) {
      for (int c = 0; c < kNumComponents; ++c) {
        const Sample s = frame.plane(c).at(x, y);
        const std::size_t at = (static_cast<std::size_t>(x) * 3 + static_cast<std::size_t>(c)) * bytes_per_sample;
        if (wide) {
          const int v = s << 6;
          row[at] = static_cast<std::uint8_t>(v >> 8);
          row[at + 1] = static_cast<std::uint8_t>(v & 0xFF);
        } else {
          row[at] = static_cast<std::uint8_t>(s);
        }
      }
    }
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(frame.height()));
  for (std::size_t y = 0; y < rows.size(); ++y) rows[y] = raster.data() + y * stride;

  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(h.png))) {
    throw Error("PNG encoding failed");
  }
  png_set_write_fn(h.png, &out, png_write_to_vector, png_flush_noop);
  png_set_IHDR(h.png, h.info, static_cast<png_uint_32>(frame.width()), static_cast<png_uint_32>(frame.height()),
               wide ? 16 : 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(h.png, h.info);
  png_write_image(h.png, rows.data());
  png_write_end(h.png, nullptr);
  return out;
}

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

}  // namespace

Frame decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw Error("not a binary PPM (P6)");
  }
  PpmTokenizer tok(bytes);
  const int width = tok.next_int();
  const int height = tok.next_int();
  const int maxval = tok.next_int();
  if (width <= 0 || height <= 0 || width > kMaxDimension || height > kMaxDimension) {
    throw Error("PPM dimensions unsupported");
  }
  if (maxval != 255 && maxval != 1023) {
    throw Error("PPM maxval must be 255 or 1023");
  }
  const std::size_t start = tok.raster_start();
  const std::size_t bps = maxval > 255 ? 2 : 1;
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3 * bps;
  if (bytes.size() - start < need) {
    throw Error("PPM raster truncated");
  }
  Frame f(width, height, maxval > 255 ? 10 : 8);
  const std::uint8_t* p = bytes.data() + start;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < kNumComponents; ++c) {
        Sample s = bps == 2 ? static_cast<Sample>((p[0] << 8) | p[1]) : p[0];
        p += bps;
        if (s > maxval) {
          throw Error("PPM sample exceeds maxval");
        }
        f.plane(c).at(x, y) = s;
      }
    }
  }
  return f;
}

std::vector<std::uint8_t> encode_ppm(const Frame& frame) {
  const int maxval = frame.max_sample();
  const std::string header =
      "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n" + std::to_string(maxval) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const bool wide = maxval > 255;
  out.reserve(out.size() + frame.pixel_count() * 3 * (wide ? 2 : 1));
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      for (int c = 0; c < kNumComponents; ++c) {
        const Sample s = frame.plane(c).at(x, y);
        if (wide) {
          out.push_back(static_cast<std::uint8_t>(s >> 8));
        }
        out.push_back(static_cast<std::uint8_t>(s & 0xFF));
      }
    }
  }
  return out;
}

Frame load_image(const std::filesystem::path& path, bool to_ycbcr) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  Frame f = is_png(bytes) ? decode_png(bytes) : decode_ppm(bytes);
  if (to_ycbcr) {
    kernels::rgb_to_ycbcr(f);
  }
  return f;
}

void store_image(const Frame& frame, const std::filesystem::path& path, bool from_ycbcr) {
  const Frame* out = &frame;
  Frame converted;
  if (from_ycbcr) {
    converted = frame;
    kernels::ycbcr_to_rgb(converted);
    out = &converted;
  }
  std::string ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  write_file(path, ext == ".png" ? encode_png(*out) : encode_ppm(*out));
}

}  // namespace hlc::bench
