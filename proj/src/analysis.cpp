#include "stirap2d/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "stirap2d/localization.hpp"

namespace stirap2d {

ScalarField2D log_density(const ScalarField2D& field, double floor) {
    if (floor <= 0.0) {
        const double mx = *std::max_element(field.values.begin(), field.values.end());
        floor = 1e-12 * mx;
        if (floor <= 0.0) floor = 1e-300;
    }
    ScalarField2D out(field.grid);
    for (std::size_t i = 0; i < field.values.size(); ++i)
        out.values[i] = std::log10(std::max(field.values[i], floor));
    return out;
}

Profile1D slice(const ScalarField2D& field, Axis axis, double offset) {
    const auto& g = field.grid;
    Profile1D out;
    if (axis == Axis::X) {
        const double fj = (offset - g.y0) / g.dy;
        const auto j = static_cast<std::int32_t>(std::lround(fj));
        if (j < 0 || j >= g.ny) throw SimError("slice: offset outside the grid");
        out.actual_offset = g.y0 + j * g.dy;
        out.coords.resize(g.nx);
        out.values.resize(g.nx);
        for (std::int32_t i = 0; i < g.nx; ++i) {
            out.coords[i] = g.x0 + i * g.dx;
            out.values[i] = field.at(i, j);
        }
    } else {
        const double fi = (offset - g.x0) / g.dx;
        const auto i = static_cast<std::int32_t>(std::lround(fi));
        if (i < 0 || i >= g.nx) throw SimError("slice: offset outside the grid");
        out.actual_offset = g.x0 + i * g.dx;
        out.coords.resize(g.ny);
        out.values.resize(g.ny);
        for (std::int32_t j = 0; j < g.ny; ++j) {
            out.coords[j] = g.y0 + j * g.dy;
            out.values[j] = field.at(i, j);
        }
    }
    return out;
}

MapComparison compare_maps(const ScalarField2D& a, const ScalarField2D& b) {
    if (!(a.grid == b.grid)) throw GridMismatchError("compare_maps: grids differ");
    MapComparison cmp;
    double sq = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        cmp.max_abs_diff = std::max(cmp.max_abs_diff, std::abs(d));
        sq += d * d;
    }
    cmp.l2_diff = std::sqrt(sq * a.grid.dx * a.grid.dy);

    auto width_of = [](const ScalarField2D& f) -> double {
        const auto it = std::max_element(f.values.begin(), f.values.end());
        const std::size_t idx = static_cast<std::size_t>(it - f.values.begin());
        const auto j = static_cast<std::int32_t>(idx / static_cast<std::size_t>(f.grid.nx));
        return fwhm(slice(f, Axis::X, f.grid.y0 + j * f.grid.dy)).width;
    };
    try {
        const double wa = width_of(a);
        const double wb = width_of(b);
        cmp.fwhm_ratio = wa / wb;
        cmp.fwhm_defined = true;
    } catch (const NotLocalizedError&) {
        cmp.fwhm_ratio = std::numeric_limits<double>::quiet_NaN();
        cmp.fwhm_defined = false;
    }
    return cmp;
}

} // namespace stirap2d
