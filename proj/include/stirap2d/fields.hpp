#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "stirap2d/grid.hpp"

namespace stirap2d {

using Complex = std::complex<double>;

/// Gaussian temporal envelopes of the two pulses. Stored as explicit pulse
/// centers; the symmetric delay parameterization (Stokes at -tau/2, pump at
/// +tau/2) converts exactly.
struct PulseSchedule {
    double width = 0.0;    ///< temporal width T (s)
    double t_stokes = 0.0; ///< Stokes envelope center (s)
    double t_pump = 0.0;   ///< pump envelope center (s)

    static PulseSchedule from_delay(double width, double delay) {
        return {width, -delay / 2.0, delay / 2.0};
    }
    static PulseSchedule from_centers(double width, double t_stokes, double t_pump) {
        return {width, t_stokes, t_pump};
    }

    double delay() const { return t_pump - t_stokes; }

    void validate() const {
        if (!(width > 0.0)) throw SimError("pulse schedule: width T must be > 0");
    }
};

enum class Pulse { Pump, Stokes };

/// Stokes drive: spatially uniform (top-hat) by default, optionally a Gaussian
/// amplitude profile centered on the beam axis.
struct StokesSpec {
    double amplitude = 0.0;                ///< Rabi amplitude (rad/s)
    std::optional<double> gaussian_waist;  ///< empty = top-hat

    Complex value_at(Vec2 p) const {
        if (!gaussian_waist) return {amplitude, 0.0};
        double r2 = (p.x * p.x + p.y * p.y) / (*gaussian_waist * *gaussian_waist);
        return {amplitude * std::exp(-r2), 0.0};
    }

    void validate() const {
        if (amplitude < 0.0) throw SimError("stokes: amplitude must be >= 0");
        if (gaussian_waist && !(*gaussian_waist > 0.0))
            throw SimError("stokes: gaussian waist must be > 0");
    }
};

/// One Laguerre-Gaussian doughnut component of the pump.
struct VortexBeamSpec {
    double amplitude = 0.0;       ///< prefactor of the transverse profile (rad/s)
    double waist = 0.0;           ///< beam waist w (m)
    int charge = 1;               ///< topological charge l (signed)
    Vec2 center{};                ///< core position
    Complex relative_phase{1.0};  ///< unit-modulus factor X

    void validate() const {
        if (!(waist > 0.0)) throw SimError("vortex beam: waist must be > 0");
        if (amplitude < 0.0) throw SimError("vortex beam: amplitude must be >= 0");
    }
};

/// Coherent superposition of one or two vortex components sharing one pump envelope.
struct CompositeBeamSpec {
    std::vector<VortexBeamSpec> components;

    void validate() const {
        if (components.empty() || components.size() > 2)
            throw SimError("composite beam: expected 1 or 2 components");
        for (const auto& b : components) b.validate();
    }
};

/// Complex pump amplitude of a single vortex component at a point,
/// amplitude * (r/w)^|l| * exp(-r^2/w^2) * exp(i l phi) * X with (r, phi)
/// measured from the component center. Exact zero at the core for l != 0.
Complex lg_amplitude(const VortexBeamSpec& beam, Vec2 p);

/// Sum of the component fields.
Complex composite_amplitude(const CompositeBeamSpec& beams, Vec2 p);

/// Dimensionless Gaussian envelope in [0, 1]; exactly 1 at the pulse center.
double pulse_envelope(const PulseSchedule& schedule, Pulse which, double t);

struct DriveSample {
    Complex pump;
    Complex stokes;
};

/// Full drive at one point and time: spatial profiles times the shared envelopes.
DriveSample drive_at(const CompositeBeamSpec& beams, const StokesSpec& stokes,
                     const PulseSchedule& schedule, Vec2 p, double t);

} // namespace stirap2d
