#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "stirap2d/fields.hpp"

namespace stirap2d {

/// 3x3 density matrix over the basis {|a>, |b>, |c>} (a, b ground, c excited).
using DensityMatrix3 = Eigen::Matrix3cd;
using StateVector3 = Eigen::Vector3cd;

struct LambdaParams {
    double gamma = 0.0;       ///< excited-state decay rate (rad/s)
    double branch_a = 0.5;    ///< fraction of gamma decaying into |a>
    double branch_b = 0.5;    ///< fraction of gamma decaying into |b>
    double detuning_p = 0.0;  ///< pump detuning (rad/s)
    double detuning_s = 0.0;  ///< Stokes detuning (rad/s)
    bool recycle = true;      ///< false: spontaneously emitted population is lost (trace decays)

    void validate() const {
        if (gamma < 0.0) throw SimError("lambda: gamma must be >= 0");
        if (branch_a < 0.0 || branch_a > 1.0 || branch_b < 0.0 || branch_b > 1.0)
            throw SimError("lambda: branching fractions must lie in [0, 1]");
        if (std::abs(branch_a + branch_b - 1.0) > 1e-12)
            throw SimError("lambda: branching fractions must sum to 1");
    }
};

struct AdiabaticityReport {
    double lhs = 0.0;  ///< (rad/s)^2 field intensity term
    double rhs = 0.0;  ///< (beta/tau)^2
    bool satisfied = false;
    double margin = 0.0;  ///< lhs / rhs
};

/// Couplings divided by hbar, so entries are angular frequencies:
/// H = -(Omega_s |c><b| + Omega_p |c><a|) + h.c., plus detuning diagonals
/// -detuning_p on |c> and -(detuning_p - detuning_s) on |b>.
DensityMatrix3 hamiltonian(Complex omega_p, Complex omega_s, const LambdaParams& params);

/// (Omega_s |a> - Omega_p |b>)/Omega, the zero-energy eigenstate at resonance.
/// Throws UndefinedStateError when both fields vanish.
StateVector3 dark_state(Complex omega_p, Complex omega_s);

/// theta = arctan(|Omega_p(r)/Omega_s0| * exp(2 tau t / T^2)); 0 at the vortex
/// core for any t, -> pi/2 late in the sequence away from the core.
double mixing_angle(Complex omega_p_spatial, double omega_s0, double t,
                    const PulseSchedule& schedule);

/// Right-hand side of the master equation for a general (not necessarily
/// Hermitian) matrix; reference implementation, also used to assemble the
/// Liouvillian for the steady-state solver.
DensityMatrix3 lindblad_rhs(const DensityMatrix3& rho, Complex omega_p, Complex omega_s,
                            const LambdaParams& params);

/// Drive seen by one atom: fixed spatial amplitudes modulated by the shared
/// pulse envelopes, or held constant when modulated = false.
struct PointDrive {
    Complex pump_spatial{};
    Complex stokes_spatial{};
    PulseSchedule schedule{};
    bool modulated = true;

    std::pair<Complex, Complex> at(double t) const {
        if (!modulated) return {pump_spatial, stokes_spatial};
        return {pump_spatial * pulse_envelope(schedule, Pulse::Pump, t),
                stokes_spatial * pulse_envelope(schedule, Pulse::Stokes, t)};
    }

    /// Largest field magnitude reached over time (envelope peak is 1).
    double peak() const { return std::max(std::abs(pump_spatial), std::abs(stokes_spatial)); }
};

/// Largest step admitted by the integrator for the given drive.
inline double max_step(const PointDrive& drive, const LambdaParams& params) {
    double rate = std::max(drive.peak(), params.gamma);
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.05 / rate;
}

using TrajectorySink = std::function<void(double t, const DensityMatrix3& rho)>;

struct EvolveOptions {
    double dt = 0.0;           ///< 0 = use max_step(drive, params)
    int sample_stride = 0;     ///< if > 0 and sink set, sink every stride-th step
};

/// Fixed-step RK4 integration of the master equation from t0 to t1. The state
/// is stored in an explicitly Hermitian representation, so Hermiticity is
/// preserved exactly. Throws StepSizeError if dt exceeds the step guard.
DensityMatrix3 evolve_point(const DensityMatrix3& rho0, const PointDrive& drive,
                            const LambdaParams& params, double t0, double t1,
                            const EvolveOptions& options = {},
                            const TrajectorySink& sink = nullptr);

/// Unique steady state of the Liouvillian under constant drive, from the null
/// space of its 9x9 matrix representation, normalized to unit trace. Requires
/// gamma > 0, a nonzero drive and strictly interior branching.
DensityMatrix3 cpt_steady_state(Complex omega_p, Complex omega_s, const LambdaParams& params);

/// Global adiabaticity margin at one point: lhs = |Omega_p(r)|^2 + Omega_s0^2
/// against rhs = (beta/tau)^2.
AdiabaticityReport adiabaticity_margin(double omega_p_spatial_mag, double omega_s0,
                                       double tau, double beta);

/// Hermiticity defect max|rho - rho^dagger|.
double hermiticity_error(const DensityMatrix3& rho);

/// Smallest eigenvalue of the Hermitian part (positivity check).
double min_eigenvalue(const DensityMatrix3& rho);

} // namespace stirap2d
