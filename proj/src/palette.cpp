#include "hlc/palette.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "hlc/entropy.hpp"
#include "hlc/error.hpp"

namespace hlc::palette {

int ClusterTable::found(const Color& pixel) {
  ClusterEntry& e = entries_[static_cast<std::size_t>(size_)];
  e = ClusterEntry{};
  e.initial_cc = pixel;
  e.virtual_cc = pixel;
  return size_++;
}

void ClusterTable::finalize() {
  for (auto& e : entries()) {
    if (e.count == 0) {
      continue;
    }
    for (std::size_t k = 0; k < kNumComponents; ++k) {
      e.virtual_cc[k] = static_cast<std::int32_t>((e.sum[k] + e.count / 2) / e.count);
    }
  }
}

std::int32_t sad(const Color& a, const Color& b) noexcept {
  return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) + std::abs(a[2] - b[2]);
}

Color pixel_color(const CodingUnit::Block& block, int pixel) noexcept {
  const auto i = static_cast<std::size_t>(pixel);
  return {block[0][i], block[1][i], block[2][i]};
}

std::optional<PaletteResult> cluster_cu(const CodingUnit::Block& block, Qp qp, int bit_depth,
                                      const ClusterOptions& options) {
  const std::int32_t threshold = threshold_for_qp(qp, bit_depth);
  PaletteResult result;
  ClusterTable& table = result.table;

  for (int p = 0; p < kCuPixels; ++p) {
    const Color px = pixel_color(block, p);

    // Decisions read initial_cc only; the virtual registers are write-only here.
    int best = -1;
    std::int32_t best_sad = std::numeric_limits<std::int32_t>::max();
    for (int i = 0; i < table.size(); ++i) {
      const std::int32_t d = sad(px, table[i].initial_cc);
      if (d < best_sad) {
        best_sad = d;
        best = i;
      }
    }
    if (best < 0 || best_sad > threshold) {
      if (table.full()) {
        return std::nullopt;
      }
      best = table.found(px);
    }

    result.indices[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(best);
    if (options.update_virtual) {
      ClusterEntry& e = table[best];
      ++e.count;
      for (std::size_t k = 0; k < kNumComponents; ++k) {
        e.sum[k] += px[k];
      }
    }
    if (options.observer) {
      options.observer(table, p);
    }
  }

  if (options.update_virtual) {
    table.finalize();
  }
  return result;
}

RunList map_indices(const IndexMap& map) {
  RunList out;
  for (int p = 0; p < kCuPixels; ++p) {
    const int x = p % kCuWidth;
    const int y = p / kCuWidth;
    const std::uint8_t idx = map[static_cast<std::size_t>(p)];
    RunSymbol sym;
    if (x > 0 && map[static_cast<std::size_t>(p - 1)] == idx) {
      sym = RunSymbol::kLeft;
    } else if (y > 0 && map[static_cast<std::size_t>(p - kCuWidth)] == idx) {
      sym = RunSymbol::kTop;
    } else {
      sym = RunSymbol::kNew;
      out.explicit_indices.push_back(idx);
    }
    if (!out.runs.empty() && out.runs.back().symbol == sym) {
      ++out.runs.back().length;
    } else {
      out.runs.push_back({sym, 1});
    }
  }
  return out;
}

IndexMap inverse_map(const RunList& runs) {
  IndexMap map{};
  int p = 0;
  std::size_t next_explicit = 0;
  for (const Run& run : runs.runs) {
    if (run.length < 1 || run.length > kCuPixels - p) {
      throw DecodeError("run lengths do not sum to 64");
    }
    for (int k = 0; k < run.length; ++k, ++p) {
      const int x = p % kCuWidth;
      const int y = p / kCuWidth;
      auto& dst = map[static_cast<std::size_t>(p)];
      switch (run.symbol) {
        case RunSymbol::kLeft:
          if (x == 0) {
            throw DecodeError("L symbol in first column");
          }
          dst = map[static_cast<std::size_t>(p - 1)];
          break;
        case RunSymbol::kTop:
          if (y == 0) {
            throw DecodeError("T symbol in first row");
          }
          dst = map[static_cast<std::size_t>(p - kCuWidth)];
          break;
        case RunSymbol::kNew:
          if (next_explicit >= runs.explicit_indices.size()) {
            throw DecodeError("N symbol without explicit index");
          }
          dst = runs.explicit_indices[next_explicit++];
          break;
        default:
          throw DecodeError("invalid run symbol");
      }
    }
  }
  if (p != kCuPixels) {
    throw DecodeError("run lengths do not sum to 64");
  }
  if (next_explicit != runs.explicit_indices.size()) {
    throw DecodeError("unused explicit indices");
  }
  return map;
}

CodingUnit::Block reconstruct_plt(std::span<const Color> colors, const IndexMap& map, int bit_depth) {
  const std::int32_t max = (1 << bit_depth) - 1;
  CodingUnit::Block out{};
  for (std::size_t p = 0; p < kCuPixels; ++p) {
    const Color& c = colors[map[p]];
    for (std::size_t k = 0; k < kNumComponents; ++k) {
      out[k][p] = static_cast<Sample>(std::clamp(c[k], 0, max));
    }
  }
  return out;
}

CodingUnit::Block reconstruct_plt(const ClusterTable& table, const IndexMap& map, int bit_depth) {
  std::array<Color, kMaxClusters> colors{};
  for (int i = 0; i < table.size(); ++i) {
    colors[static_cast<std::size_t>(i)] = table[i].virtual_cc;
  }
  return reconstruct_plt(std::span<const Color>(colors).first(static_cast<std::size_t>(table.size())), map, bit_depth);
}

int index_bits(int cluster_count) noexcept {
  int bits = 0;
  while ((1 << bits) < cluster_count) {
    ++bits;
  }
  return bits;
}

std::int64_t estimate_rate_plt(int cluster_count, const RunList& runs, int bit_depth) {
  std::int64_t bits = entropy::kClusterCountBits;
  bits += static_cast<std::int64_t>(cluster_count) * kNumComponents * bit_depth;
  for (const Run& run : runs.runs) {
    bits += entropy::kRunSymbolBits + entropy::egc_bits(static_cast<std::uint32_t>(run.length - 1));
  }
  bits += static_cast<std::int64_t>(runs.explicit_indices.size()) * index_bits(cluster_count);
  return bits;
}

}  // namespace hlc::palette
