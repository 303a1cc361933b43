#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hlc/core.hpp"

namespace hlc::palette {

inline constexpr int kMaxClusters = 8;

using Color = std::array<std::int32_t, kNumComponents>;

struct ClusterEntry {
  Color initial_cc{};  // founding pixel; never rewritten
  Color virtual_cc{};  // rounded mean, valid after finalize
  std::int32_t count = 0;
  std::array<std::int64_t, kNumComponents> sum{};

  friend bool operator==(const ClusterEntry&, const ClusterEntry&) = default;
};

/// Clusters of one CU in creation order.
class ClusterTable {
 public:
  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] bool full() const noexcept { return size_ == kMaxClusters; }
  [[nodiscard]] std::span<const ClusterEntry> entries() const noexcept {
    return std::span(entries_).first(static_cast<std::size_t>(size_));
  }
  [[nodiscard]] std::span<ClusterEntry> entries() noexcept {
    return std::span(entries_).first(static_cast<std::size_t>(size_));
  }
  [[nodiscard]] const ClusterEntry& operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  ClusterEntry& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }

  /// Appends an entry founded by `pixel` (count 0). Returns its index.
  int found(const Color& pixel);

  /// Sets every entry's virtual_cc to round_half_up(sum / count).
  void finalize();

  friend bool operator==(const ClusterTable&, const ClusterTable&) = default;

 private:
  std::array<ClusterEntry, kMaxClusters> entries_{};
  int size_ = 0;
};

using IndexMap = std::array<std::uint8_t, kCuPixels>;

struct PaletteResult {
  ClusterTable table;
  IndexMap indices{};
};

/// Called after each pixel is assigned. Lets tests scribble on the virtual
/// registers mid-CU to show clustering never reads them.
using AssignObserver = std::function<void(ClusterTable&, int pixel)>;

struct ClusterOptions {
  bool update_virtual = true;
  AssignObserver observer;
};

/// SAD threshold for a QP: 1 << (qp >> 1) at 8 bits, scaled by 2^(bit_depth - 8).
[[nodiscard]] constexpr int threshold_for_qp(int qp, int bit_depth) noexcept {
  return 1 << ((qp >> 1) + bit_depth - 8);
}
[[nodiscard]] inline int threshold_for_qp(Qp qp, int bit_depth) noexcept {
  return threshold_for_qp(qp.value(), bit_depth);
}

[[nodiscard]] std::int32_t sad(const Color& a, const Color& b) noexcept;
[[nodiscard]] Color pixel_color(const CodingUnit::Block& block, int pixel) noexcept;

/// Raster-order clustering against frozen initial CCs. Returns nullopt when a
/// ninth cluster would be required.
[[nodiscard]] std::optional<PaletteResult> cluster_cu(const CodingUnit::Block& block, Qp qp, int bit_depth,
                                                      const ClusterOptions& options = {});

enum class RunSymbol : std::uint8_t { kLeft = 0, kTop = 1, kNew = 2 };

struct Run {
  RunSymbol symbol;
  int length;

  friend bool operator==(const Run&, const Run&) = default;
};

struct RunList {
  std::vector<Run> runs;
  std::vector<std::uint8_t> explicit_indices;  // one per N pixel, scan order

  friend bool operator==(const RunList&, const RunList&) = default;
};

[[nodiscard]] RunList map_indices(const IndexMap& map);

/// Throws DecodeError on any structural violation.
[[nodiscard]] IndexMap inverse_map(const RunList& runs);

[[nodiscard]] CodingUnit::Block reconstruct_plt(std::span<const Color> colors, const IndexMap& map, int bit_depth);
[[nodiscard]] CodingUnit::Block reconstruct_plt(const ClusterTable& table, const IndexMap& map, int bit_depth);

/// Bits needed for an explicit index: ceil(log2(cluster_count)).
[[nodiscard]] int index_bits(int cluster_count) noexcept;

/// Exact payload size produced by entropy::encode_cu_plt for these inputs.
[[nodiscard]] std::int64_t estimate_rate_plt(int cluster_count, const RunList& runs, int bit_depth);
[[nodiscard]] inline std::int64_t estimate_rate_plt(const ClusterTable& table, const RunList& runs, int bit_depth) {
  return estimate_rate_plt(table.size(), runs, bit_depth);
}

}  // namespace hlc::palette
