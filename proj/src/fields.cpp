#include "stirap2d/fields.hpp"

#include <cmath>

namespace stirap2d {

Complex lg_amplitude(const VortexBeamSpec& beam, Vec2 p) {
    const double dx = p.x - beam.center.x;
    const double dy = p.y - beam.center.y;
    const double r2 = (dx * dx + dy * dy) / (beam.waist * beam.waist);
    const int al = beam.charge >= 0 ? beam.charge : -beam.charge;

    // (r/w)^|l|: pow(0, 0) would be 1 by the C standard, which is what l = 0 needs;
    // for l != 0 the core value is an exact 0.
    double radial = std::pow(std::sqrt(r2), al) * std::exp(-r2);
    if (radial == 0.0) return {0.0, 0.0};

    const double phi = std::atan2(dy, dx);
    return beam.amplitude * radial * std::polar(1.0, beam.charge * phi) * beam.relative_phase;
}

Complex composite_amplitude(const CompositeBeamSpec& beams, Vec2 p) {
    Complex sum{0.0, 0.0};
    for (const auto& b : beams.components) sum += lg_amplitude(b, p);
    return sum;
}

double pulse_envelope(const PulseSchedule& schedule, Pulse which, double t) {
    const double center = which == Pulse::Pump ? schedule.t_pump : schedule.t_stokes;
    const double u = (t - center) / schedule.width;
    return std::exp(-u * u);
}

DriveSample drive_at(const CompositeBeamSpec& beams, const StokesSpec& stokes,
                     const PulseSchedule& schedule, Vec2 p, double t) {
    return {composite_amplitude(beams, p) * pulse_envelope(schedule, Pulse::Pump, t),
            stokes.value_at(p) * pulse_envelope(schedule, Pulse::Stokes, t)};
}

} // namespace stirap2d
