#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stirap2d/fields.hpp"

using namespace stirap2d;

namespace {
const double kTau = 2.0 * 3.14159265358979323846;

VortexBeamSpec unit_beam(int charge, double waist = 1.0, double amplitude = 1.0) {
    VortexBeamSpec b;
    b.amplitude = amplitude;
    b.waist = waist;
    b.charge = charge;
    return b;
}
} // namespace

TEST_CASE("vortex core is an exact zero for any nonzero charge") {
    for (int l : {1, -1, 2, 3, 5}) {
        const Complex v = lg_amplitude(unit_beam(l), {0.0, 0.0});
        CHECK(v.real() == 0.0);
        CHECK(v.imag() == 0.0);
    }
    // l = 0 degenerates to a plain Gaussian with value amplitude at the center
    const Complex v0 = lg_amplitude(unit_beam(0, 1.0, 2.5), {0.0, 0.0});
    CHECK(v0.real() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("transverse profile value at r = w on the x axis") {
    const Complex v = lg_amplitude(unit_beam(1), {1.0, 0.0});
    CHECK(v.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("profile maximum sits at w*sqrt(l/2)") {
    for (int l : {1, 2, 3}) {
        const double expected = std::sqrt(l / 2.0);
        // dense radial scan as the independent check of the stationary point
        double best_r = 0.0, best_v = -1.0;
        for (int k = 1; k < 4000; ++k) {
            const double r = 3.0 * k / 4000.0;
            const double v = std::abs(lg_amplitude(unit_beam(l), {r, 0.0}));
            if (v > best_v) {
                best_v = v;
                best_r = r;
            }
        }
        CHECK(best_r == doctest::Approx(expected).epsilon(2e-3));
    }
}

TEST_CASE("rotation invariance of the magnitude; phase advances by l*dphi") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(0.1, 2.0);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int l = 1 + trial % 3;
        const auto beam = unit_beam(l, uni(rng));
        const double r = uni(rng);
        const double phi = ang(rng), dphi = ang(rng);
        const Complex v1 = lg_amplitude(beam, {r * std::cos(phi), r * std::sin(phi)});
        const Complex v2 =
            lg_amplitude(beam, {r * std::cos(phi + dphi), r * std::sin(phi + dphi)});
        CHECK(std::abs(v2) == doctest::Approx(std::abs(v1)).epsilon(1e-12));
        const double shift = std::arg(v2 / v1);
        double expected = std::remainder(l * dphi, kTau);
        CHECK(std::remainder(shift - expected, kTau) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("numerically integrated phase winding equals 2*pi*l") {
    for (int l : {1, 2, -3}) {
        const auto beam = unit_beam(l);
        const int n = 20000;
        double sum = 0.0;
        Complex prev = lg_amplitude(beam, {0.5, 0.0});
        for (int k = 1; k <= n; ++k) {
            const double phi = kTau * k / n;
            const Complex z = lg_amplitude(beam, {0.5 * std::cos(phi), 0.5 * std::sin(phi)});
            sum += std::arg(z * std::conj(prev));
            prev = z;
        }
        CHECK(sum / (kTau * l) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("pulse envelopes peak at the centers and obey the stated limits") {
    const auto sched = PulseSchedule::from_delay(5.0, 10.0);  // T = 5, tau = 10
    CHECK(pulse_envelope(sched, Pulse::Stokes, -5.0) == 1.0);
    CHECK(pulse_envelope(sched, Pulse::Pump, 5.0) == 1.0);
    // Stokes evaluated at the pump center: exp(-(tau/T)^2) = exp(-4)
    CHECK(pulse_envelope(sched, Pulse::Stokes, 5.0) ==
          doctest::Approx(std::exp(-4.0)).epsilon(1e-12));

    // symmetry about the center is exact
    for (double d : {0.3, 1.7, 4.0}) {
        CHECK(pulse_envelope(sched, Pulse::Pump, 5.0 + d) ==
              pulse_envelope(sched, Pulse::Pump, 5.0 - d));
    }
}

TEST_CASE("the two schedule parameterizations interconvert exactly") {
    const auto a = PulseSchedule::from_delay(5.0, 10.0);
    CHECK(a.t_stokes == -5.0);
    CHECK(a.t_pump == 5.0);
    CHECK(a.delay() == 10.0);
    const auto b = PulseSchedule::from_centers(5e-6, 20e-6, 30e-6);
    CHECK(b.delay() == doctest::Approx(10e-6).epsilon(1e-15));
    const auto c = PulseSchedule::from_delay(b.width, b.delay());
    CHECK(c.delay() == b.delay());
}

TEST_CASE("drive ratio follows the counter-intuitive ordering") {
    CompositeBeamSpec beams{{unit_beam(1)}};
    StokesSpec stokes{1.0, {}};
    const auto sched = PulseSchedule::from_delay(5.0, 10.0);
    const Vec2 p{1.0, 0.0};

    const auto early = drive_at(beams, stokes, sched, p, -5.0 - 8 * 5.0);
    const auto late = drive_at(beams, stokes, sched, p, 5.0 + 8 * 5.0);
    CHECK(std::abs(early.pump / early.stokes) < 1e-10);
    CHECK(std::abs(late.pump / late.stokes) > 1e10);
}

TEST_CASE("single component at its core gives zero pump for all times") {
    CompositeBeamSpec beams{{unit_beam(1)}};
    StokesSpec stokes{2.0, {}};
    const auto sched = PulseSchedule::from_delay(1.0, 2.0);
    for (double t : {-3.0, 0.0, 1.0, 4.0}) {
        const auto d = drive_at(beams, stokes, sched, {0.0, 0.0}, t);
        CHECK(std::abs(d.pump) == 0.0);
    }
}

TEST_CASE("opposite-phase identical components cancel everywhere") {
    auto b1 = unit_beam(1);
    auto b2 = unit_beam(1);
    b2.relative_phase = std::polar(1.0, 3.14159265358979323846);
    CompositeBeamSpec beams{{b1, b2}};
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const Vec2 p{uni(rng), uni(rng)};
        CHECK(std::abs(composite_amplitude(beams, p)) < 1e-12);
    }
}

TEST_CASE("composite zeros on the waist circle number |l1 - l2|") {
    for (auto [l1, l2] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 4}}) {
        CompositeBeamSpec beams{{unit_beam(l1), unit_beam(l2)}};
        const int n = 14400;
        int zeros = 0;
        std::vector<double> mags(n);
        for (int k = 0; k < n; ++k) {
            const double phi = kTau * k / n;
            mags[k] = std::abs(
                composite_amplitude(beams, {std::cos(phi), std::sin(phi)}));
        }
        const double scale = *std::max_element(mags.begin(), mags.end());
        for (int k = 0; k < n; ++k) {
            const double prev = mags[(k + n - 1) % n];
            const double next = mags[(k + 1) % n];
            if (mags[k] < prev && mags[k] <= next && mags[k] < 1e-3 * scale) ++zeros;
        }
        CHECK(zeros == std::abs(l1 - l2));
    }
}

TEST_CASE("gaussian stokes profile decays off axis, top-hat does not") {
    StokesSpec tophat{3.0, {}};
    StokesSpec gauss{3.0, 1.5};
    CHECK(std::abs(tophat.value_at({5.0, 0.0})) == 3.0);
    CHECK(std::abs(gauss.value_at({0.0, 0.0})) == 3.0);
    CHECK(std::abs(gauss.value_at({1.5, 0.0})) ==
          doctest::Approx(3.0 * std::exp(-1.0)).epsilon(1e-12));
}
