#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stirap2d/localization.hpp"

using namespace stirap2d;

namespace {

// reference single-vortex setup in units of the bare linewidth and waist
MapSetup reference_setup(int l = 1, double alpha = 100.0, double tau = 10.0) {
    MapSetup s;
    VortexBeamSpec beam;
    beam.amplitude = 4.0 * std::sqrt(alpha);
    beam.waist = 1.0;
    beam.charge = l;
    s.beams.components = {beam};
    s.stokes.amplitude = 4.0;
    s.schedule = PulseSchedule::from_delay(5.0, tau);
    s.params.gamma = 2.0;  // population decay; the map convention carries the factor 2
    return s;
}

Profile1D gaussian_profile(double sigma, int n, double span) {
    Profile1D p;
    p.coords.resize(n);
    p.values.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = -span + 2.0 * span * i / (n - 1);
        p.coords[i] = x;
        p.values[i] = std::exp(-x * x / (sigma * sigma));
    }
    return p;
}

} // namespace

TEST_CASE("radial scan: full retention at the core, full transfer at the ring") {
    MapOptions opt;
    opt.threads = 2;
    const Profile1D prof = radial_scan(reference_setup(), 1.0, 160, opt);
    CHECK(prof.values.front() >= 0.99);
    CHECK(prof.values.back() <= 0.01);
    // monotone non-increasing out to the waist
    for (std::size_t i = 1; i < prof.values.size(); ++i)
        CHECK(prof.values[i] <= prof.values[i - 1] + 1e-9);
}

TEST_CASE("radial scan agrees with the 2D map along y = 0") {
    const MapSetup setup = reference_setup();
    GridSpec2D grid{6, 2, 0.0, 0.0, 0.1, 0.1};
    MapOptions opt;
    const ScalarField2D map = stirap_population_map(grid, setup, opt);
    const Profile1D scan = radial_scan(setup, 0.5, 6, opt);
    for (int i = 0; i < 6; ++i) {
        CHECK(scan.coords[i] == doctest::Approx(0.1 * i).epsilon(1e-15));
        CHECK(std::abs(scan.values[i] - map.at(i, 0)) <= 1e-8);
    }
}

TEST_CASE("maps are independent of the worker count") {
    const MapSetup setup = reference_setup();
    const GridSpec2D grid{7, 5, -0.6, -0.4, 0.2, 0.2};
    MapOptions o1, o4;
    o1.threads = 1;
    o4.threads = 4;
    const ScalarField2D a = stirap_population_map(grid, setup, o1);
    const ScalarField2D b = stirap_population_map(grid, setup, o4);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("map is axisymmetric for an on-axis vortex") {
    const MapSetup setup = reference_setup();
    const GridSpec2D grid = GridSpec2D::closed(9, 9, -0.4, -0.4, 0.4, 0.4);
    const ScalarField2D map = stirap_population_map(grid, setup, {});
    // the four points at radius 0.3 on the axes
    const double v[] = {map.at(7, 4), map.at(1, 4), map.at(4, 7), map.at(4, 1)};
    for (double x : v) CHECK(std::abs(x - v[0]) <= 1e-6);
    // single central peak
    const auto mx = std::max_element(map.values.begin(), map.values.end());
    CHECK(static_cast<std::size_t>(mx - map.values.begin()) == map.grid.index(4, 4));
}

TEST_CASE("cpt map demands overlapping pulses") {
    const MapSetup setup = reference_setup();
    const GridSpec2D grid{4, 4, 0.0, 0.0, 0.1, 0.1};
    CHECK_THROWS_AS(cpt_population_map(grid, setup, {}), SimError);
}

TEST_CASE("cpt end state matches the steady-state populations") {
    MapSetup setup = reference_setup(1, 100.0, 0.0);  // tau = 0
    MapOptions opt;
    const Profile1D prof = radial_scan(setup, 0.3, 4, opt);
    for (int i = 1; i < 4; ++i) {
        const double r = prof.coords[i];
        const Complex pump = lg_amplitude(setup.beams.components[0], {r, 0.0});
        const DensityMatrix3 ss = cpt_steady_state(pump, setup.stokes.amplitude, setup.params);
        CHECK(prof.values[i] == doctest::Approx(ss(0, 0).real()).epsilon(5e-3));
    }
}

TEST_CASE("adiabaticity map: reference parameters satisfy the criterion everywhere") {
    const MapSetup setup = reference_setup();
    const GridSpec2D grid = GridSpec2D::closed(41, 41, -2.0, -2.0, 2.0, 2.0);
    const AdiabaticityMap amap =
        adiabaticity_map(grid, setup.beams, setup.stokes, 10.0, 10.0, 2);
    CHECK(amap.satisfied_everywhere);
    CHECK(amap.rhs == 1.0);  // (beta/tau)^2 = (10/10)^2
    CHECK(amap.min_lhs == doctest::Approx(16.0).epsilon(1e-12));  // Omega_s0^2
    const double mn = *std::min_element(amap.margin.values.begin(), amap.margin.values.end());
    CHECK(mn == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("fwhm of a sampled gaussian is 2 sigma sqrt(ln 2)") {
    const double sigma = 0.37;
    const Profile1D p = gaussian_profile(sigma, 600, 4.0 * sigma);
    const FwhmResult res = fwhm(p);
    CHECK_FALSE(res.under_resolved);
    CHECK(res.width == doctest::Approx(2.0 * sigma * std::sqrt(std::log(2.0))).epsilon(5e-3));
}

TEST_CASE("fwhm of a one-sample spike is one spacing, flagged") {
    Profile1D p;
    for (int i = 0; i < 51; ++i) {
        p.coords.push_back(0.1 * i);
        p.values.push_back(i == 25 ? 1.0 : 0.0);
    }
    const FwhmResult res = fwhm(p);
    CHECK(res.width == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(res.under_resolved);
}

TEST_CASE("fwhm rejects structureless profiles") {
    Profile1D flat;
    for (int i = 0; i < 40; ++i) {
        flat.coords.push_back(i);
        flat.values.push_back(0.5);
    }
    CHECK_THROWS_AS(fwhm(flat), NotLocalizedError);

    Profile1D edge;  // maximum on the boundary
    for (int i = 0; i < 40; ++i) {
        edge.coords.push_back(i);
        edge.values.push_back(i);
    }
    CHECK_THROWS_AS(fwhm(edge), NotLocalizedError);
}

TEST_CASE("mirrored radial profiles are symmetric with a single center point") {
    Profile1D radial;
    radial.coords = {0.0, 1.0, 2.0};
    radial.values = {9.0, 4.0, 1.0};
    const Profile1D m = mirror_radial_profile(radial);
    CHECK(m.coords == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
    CHECK(m.values == std::vector<double>{1.0, 4.0, 9.0, 4.0, 1.0});
}

TEST_CASE("peripheral spot angles") {
    const double pi = 3.14159265358979323846;
    const auto a13 = peripheral_spot_angles(1, 3);
    REQUIRE(a13.size() == 2);
    CHECK(a13[0] == doctest::Approx(pi / 2));
    CHECK(a13[1] == doctest::Approx(3 * pi / 2));

    const auto a12 = peripheral_spot_angles(1, 2);
    REQUIRE(a12.size() == 1);
    CHECK(a12[0] == doctest::Approx(pi));

    CHECK(peripheral_spot_angles(2, 2).empty());
    CHECK(peripheral_spot_angles(3, 1).size() == 2);
}

TEST_CASE("find_spots separates two gaussian peaks and sorts by peak value") {
    const GridSpec2D grid = GridSpec2D::closed(81, 81, -2.0, -2.0, 2.0, 2.0);
    ScalarField2D f(grid);
    for (std::int32_t j = 0; j < 81; ++j)
        for (std::int32_t i = 0; i < 81; ++i) {
            const Vec2 p = grid.point(i, j);
            const double d1 = (p.x - 1.0) * (p.x - 1.0) + p.y * p.y;
            const double d2 = (p.x + 1.0) * (p.x + 1.0) + p.y * p.y;
            f.at(i, j) = std::exp(-d1 / 0.02) + 0.8 * std::exp(-d2 / 0.02);
        }
    const auto spots = find_spots(f, 0.3);
    REQUIRE(spots.size() == 2);
    CHECK(spots[0].peak_value > spots[1].peak_value);
    CHECK(spots[0].center.x == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(spots[1].center.x == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(spots[1].angle_from_origin == doctest::Approx(3.14159265).epsilon(1e-6));
    const double expected = 2.0 * std::sqrt(0.02 * std::log(2.0));
    CHECK(spots[0].fwhm_x == doctest::Approx(expected).epsilon(0.05));
    CHECK(spots[0].fwhm_y == doctest::Approx(expected).epsilon(0.05));
    CHECK_FALSE(spots[0].grid_spanning);
}

TEST_CASE("find_spots flags a uniform field as one grid-spanning component") {
    ScalarField2D f(GridSpec2D{16, 16, 0.0, 0.0, 1.0, 1.0}, 0.4);
    const auto spots = find_spots(f, 0.5);
    REQUIRE(spots.size() == 1);
    CHECK(spots[0].grid_spanning);
}

TEST_CASE("find_spots returns nothing when the threshold is never reached") {
    ScalarField2D f(GridSpec2D{8, 8, 0.0, 0.0, 1.0, 1.0}, 0.0);
    CHECK(find_spots(f, 0.5).empty());
    CHECK_THROWS_AS(find_spots(f, 1.5), SimError);
}

TEST_CASE("radial scan rejects off-axis and composite beams") {
    MapSetup s = reference_setup();
    s.beams.components[0].center = {0.3, 0.0};
    CHECK_THROWS_AS(radial_scan(s, 1.0, 8, {}), SimError);

    MapSetup s2 = reference_setup();
    s2.beams.components.push_back(s2.beams.components[0]);
    s2.beams.components[1].charge = 2;
    CHECK_THROWS_AS(radial_scan(s2, 1.0, 8, {}), SimError);
}
