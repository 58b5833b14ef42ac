#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stirap2d/analysis.hpp"
#include "stirap2d/localization.hpp"

using namespace stirap2d;

namespace {

ScalarField2D filled(std::int32_t nx, std::int32_t ny, double v) {
    return ScalarField2D(GridSpec2D{nx, ny, -1.0, -1.0, 2.0 / (nx - 1), 2.0 / (ny - 1)}, v);
}

} // namespace

TEST_CASE("log density of a uniform unit field is zero") {
    const ScalarField2D f = filled(8, 8, 1.0);
    const ScalarField2D out = log_density(f, 1e-12);
    for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("log density clamps at the floor") {
    ScalarField2D f = filled(4, 4, 1.0);
    f.values[5] = 0.0;
    const ScalarField2D out = log_density(f, 1e-6);
    CHECK(out.values[5] == doctest::Approx(-6.0));
}

TEST_CASE("log density preserves ordering across decades") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> expo(-6.0, 0.0);
    ScalarField2D f = filled(16, 16, 0.0);
    for (auto& v : f.values) v = std::pow(10.0, expo(rng));
    const ScalarField2D out = log_density(f, 1e-12);

    std::vector<std::size_t> order_in(f.values.size()), order_out(f.values.size());
    for (std::size_t i = 0; i < order_in.size(); ++i) order_in[i] = order_out[i] = i;
    auto by = [](const std::vector<double>& vals) {
        return [&vals](std::size_t a, std::size_t b) { return vals[a] < vals[b]; };
    };
    std::sort(order_in.begin(), order_in.end(), by(f.values));
    std::sort(order_out.begin(), order_out.end(), by(out.values));
    CHECK(order_in == order_out);
}

TEST_CASE("slice of a linear ramp reproduces the ramp") {
    ScalarField2D f = filled(11, 5, 0.0);
    for (std::int32_t j = 0; j < 5; ++j)
        for (std::int32_t i = 0; i < 11; ++i) f.at(i, j) = f.grid.point(i, j).x;
    const Profile1D p = slice(f, Axis::X, 0.0);
    CHECK(p.actual_offset == doctest::Approx(0.0));
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        CHECK(p.values[i] == doctest::Approx(p.coords[i]));
}

TEST_CASE("slices of a separable field match direct evaluation") {
    ScalarField2D f = filled(9, 9, 0.0);
    auto fx = [](double x) { return std::cos(2.0 * x); };
    auto fy = [](double y) { return 1.0 + y * y; };
    for (std::int32_t j = 0; j < 9; ++j)
        for (std::int32_t i = 0; i < 9; ++i) {
            const Vec2 p = f.grid.point(i, j);
            f.at(i, j) = fx(p.x) * fy(p.y);
        }
    const Profile1D px = slice(f, Axis::X, 0.5);
    for (std::size_t i = 0; i < px.coords.size(); ++i)
        CHECK(px.values[i] == doctest::Approx(fx(px.coords[i]) * fy(px.actual_offset)));
    const Profile1D py = slice(f, Axis::Y, -0.25);
    for (std::size_t j = 0; j < py.coords.size(); ++j)
        CHECK(py.values[j] == doctest::Approx(fx(py.actual_offset) * fy(py.coords[j])));
}

TEST_CASE("x and y slices agree for an axisymmetric map") {
    ScalarField2D f = filled(21, 21, 0.0);
    for (std::int32_t j = 0; j < 21; ++j)
        for (std::int32_t i = 0; i < 21; ++i) {
            const Vec2 p = f.grid.point(i, j);
            f.at(i, j) = std::exp(-(p.x * p.x + p.y * p.y));
        }
    const Profile1D px = slice(f, Axis::X, 0.0);
    const Profile1D py = slice(f, Axis::Y, 0.0);
    for (std::size_t k = 0; k < px.values.size(); ++k)
        CHECK(std::abs(px.values[k] - py.values[k]) <= 1e-6);
}

TEST_CASE("slice rejects offsets outside the grid") {
    const ScalarField2D f = filled(8, 8, 1.0);
    CHECK_THROWS_AS(slice(f, Axis::X, 3.0), SimError);
    CHECK_THROWS_AS(slice(f, Axis::Y, -2.5), SimError);
}

TEST_CASE("comparing a map with itself gives zero differences and unit ratio") {
    ScalarField2D f = filled(31, 31, 0.0);
    for (std::int32_t j = 0; j < 31; ++j)
        for (std::int32_t i = 0; i < 31; ++i) {
            const Vec2 p = f.grid.point(i, j);
            f.at(i, j) = std::exp(-8.0 * (p.x * p.x + p.y * p.y));
        }
    const MapComparison cmp = compare_maps(f, f);
    CHECK(cmp.max_abs_diff == 0.0);
    CHECK(cmp.l2_diff == 0.0);
    CHECK(cmp.fwhm_defined);
    CHECK(cmp.fwhm_ratio == doctest::Approx(1.0));
}

TEST_CASE("comparing against a doubled field reports max(a)") {
    ScalarField2D a = filled(16, 16, 0.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto& v : a.values) v = uni(rng);
    ScalarField2D b = a;
    for (auto& v : b.values) v *= 2.0;
    const MapComparison cmp = compare_maps(a, b);
    const double amax = *std::max_element(a.values.begin(), a.values.end());
    CHECK(cmp.max_abs_diff == doctest::Approx(amax));
}

TEST_CASE("grid mismatch is an error") {
    CHECK_THROWS_AS(compare_maps(filled(8, 8, 1.0), filled(9, 8, 1.0)), GridMismatchError);
}
