#pragma once

#include <cstdint>
#include <span>

#include "hlc/core.hpp"

// Data-parallel frame kernels. Each OpenMP kernel has a *_serial twin that
// is the reference the tests compare against; benchmarks/ times both.
namespace hlc::kernels {

[[nodiscard]] std::uint64_t sse(std::span<const Sample> a, std::span<const Sample> b);
[[nodiscard]] std::uint64_t sse_serial(std::span<const Sample> a, std::span<const Sample> b);

[[nodiscard]] std::uint64_t sad(std::span<const Sample> a, std::span<const Sample> b);
[[nodiscard]] std::uint64_t sad_serial(std::span<const Sample> a, std::span<const Sample> b);

/// BT.709 full-range RGB <-> YCbCr, rounded to integers and clamped to the
/// frame's sample range. Component order is (R,G,B) <-> (Y,Cb,Cr).
void rgb_to_ycbcr(Frame& frame);
void rgb_to_ycbcr_serial(Frame& frame);
void ycbcr_to_rgb(Frame& frame);
void ycbcr_to_rgb_serial(Frame& frame);

}  // namespace hlc::kernels
