#pragma once

namespace stirap2d {

inline constexpr double kHbar = 1.054571817e-34;  // J s
inline constexpr double kPi = 3.14159265358979323846;

} // namespace stirap2d
