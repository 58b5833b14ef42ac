#pragma once

#include <cstdint>
#include <string>

#include "stirap2d/grid.hpp"

namespace stirap2d {

/// Binary grid format "F64G": magic bytes, version u16, nx u32, ny u32,
/// x0 f64, y0 f64, dx f64, dy f64, then nx*ny little-endian f64 row-major.
/// Round trips are bit-exact.
inline constexpr std::uint16_t kGridFormatVersion = 1;
inline constexpr std::size_t kGridHeaderBytes = 46;

void write_grid(const ScalarField2D& field, const std::string& path);
ScalarField2D read_grid(const std::string& path);

enum class HeatmapScale { Linear, Log };

/// 8-bit grayscale PGM (P5): 0 maps to black, the field maximum to white; row 0
/// of the image is the row of largest y. A field with no value range (constant,
/// including all-zero) renders as uniform 255 by convention. Log scale maps
/// log10(max(value, 1e-12 * max)) linearly; NaN values render as 0.
void render_heatmap(const ScalarField2D& field, const std::string& path, HeatmapScale scale);

/// Comma-separated values, '.' decimal, one header row, %.17g numbers.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// FNV-1a 64-bit hash, used for output checksums and run ids.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace stirap2d
