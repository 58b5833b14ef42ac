#pragma once

#include "stirap2d/grid.hpp"

namespace stirap2d {

enum class Axis { X, Y };

/// log10(max(value, floor)) per point. floor <= 0 selects 1e-12 * field max.
ScalarField2D log_density(const ScalarField2D& field, double floor);

/// Nearest-row (axis = X, fixed y = offset) or nearest-column (axis = Y,
/// fixed x = offset) extraction; the coordinate actually used is recorded.
Profile1D slice(const ScalarField2D& field, Axis axis, double offset);

struct MapComparison {
    double max_abs_diff = 0.0;
    double l2_diff = 0.0;   ///< sqrt(sum (a-b)^2 dx dy)
    double fwhm_ratio = 0.0;  ///< FWHM(a)/FWHM(b) of x-slices through each maximum
    bool fwhm_defined = false;
};

/// Scalar comparison of two fields on the same grid.
MapComparison compare_maps(const ScalarField2D& a, const ScalarField2D& b);

} // namespace stirap2d
