#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "stirap2d/errors.hpp"

namespace stirap2d {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Uniform 2D grid. point(i, j) = (x0 + i*dx, y0 + j*dy); values are stored
/// row-major with i (the x index) fastest.
struct GridSpec2D {
    std::int32_t nx = 0;
    std::int32_t ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(std::int32_t i, std::int32_t j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    }
    Vec2 point(std::int32_t i, std::int32_t j) const { return {x0 + i * dx, y0 + j * dy}; }

    bool operator==(const GridSpec2D&) const = default;

    void validate() const {
        if (nx < 2 || ny < 2) throw SimError("grid: nx and ny must be >= 2");
        if (!(dx > 0.0) || !(dy > 0.0)) throw SimError("grid: dx and dy must be > 0");
    }

    /// Grid of nx*ny points covering [x0, x0+extent) in both directions with
    /// periodic convention (spacing extent/n, right edge excluded).
    static GridSpec2D periodic(std::int32_t nx, std::int32_t ny, double x0, double y0,
                               double extent_x, double extent_y) {
        return {nx, ny, x0, y0, extent_x / nx, extent_y / ny};
    }
    /// Grid including both endpoints of [xmin, xmax] (spacing (xmax-xmin)/(n-1)).
    static GridSpec2D closed(std::int32_t nx, std::int32_t ny, double xmin, double ymin,
                             double xmax, double ymax) {
        return {nx, ny, xmin, ymin, (xmax - xmin) / (nx - 1), (ymax - ymin) / (ny - 1)};
    }
};

struct ScalarField2D {
    GridSpec2D grid;
    std::vector<double> values;

    ScalarField2D() = default;
    explicit ScalarField2D(const GridSpec2D& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

    double& at(std::int32_t i, std::int32_t j) { return values[grid.index(i, j)]; }
    double at(std::int32_t i, std::int32_t j) const { return values[grid.index(i, j)]; }
};

struct ComplexField2D {
    GridSpec2D grid;
    std::vector<std::complex<double>> values;

    ComplexField2D() = default;
    explicit ComplexField2D(const GridSpec2D& g, std::complex<double> fill = {})
        : grid(g), values(g.size(), fill) {}
    ComplexField2D(const GridSpec2D& g, std::vector<std::complex<double>> v)
        : grid(g), values(std::move(v)) {}

    std::complex<double>& at(std::int32_t i, std::int32_t j) { return values[grid.index(i, j)]; }
    std::complex<double> at(std::int32_t i, std::int32_t j) const { return values[grid.index(i, j)]; }
};

/// 1D sampled profile with coordinates, as produced by slices and radial scans.
struct Profile1D {
    std::vector<double> coords;
    std::vector<double> values;
    /// Coordinate actually used when the profile was extracted by a nearest-row
    /// or nearest-column slice (may differ from the requested offset).
    double actual_offset = 0.0;
};

} // namespace stirap2d
