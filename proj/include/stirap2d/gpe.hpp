#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "stirap2d/analysis.hpp"
#include "stirap2d/constants.hpp"
#include "stirap2d/fields.hpp"
#include "stirap2d/grid.hpp"

namespace stirap2d {

/// Trap, interaction and atom-number constants (SI). Couplings follow the
/// quasi-2D reduction g_ij = sqrt(8 pi) hbar^2 a_ij / (m a_perp).
struct BECParams {
    double mass = 0.0;         ///< kg
    double atom_number = 0.0;  ///< N
    double omega_r = 0.0;      ///< radial trap angular frequency (rad/s)
    double omega_perp = 0.0;   ///< transverse trap angular frequency (rad/s)
    double a_aa = 0.0;         ///< s-wave scattering lengths (m)
    double a_ab = 0.0;
    double a_bb = 0.0;

    double radial_length() const { return std::sqrt(kHbar / (mass * omega_r)); }
    double transverse_length() const { return std::sqrt(kHbar / (mass * omega_perp)); }
    double coupling(double a_ij) const {
        return std::sqrt(8.0 * kPi) * kHbar * kHbar * a_ij / (mass * transverse_length());
    }
    /// Dimensionless mean-field strength N g_ij / (hbar omega_r a_r^2).
    double coupling_scaled(double a_ij) const {
        const double ar = radial_length();
        return atom_number * coupling(a_ij) / (kHbar * omega_r * ar * ar);
    }
    bool pancake_valid() const { return omega_perp / omega_r >= 10.0; }

    void validate() const {
        if (!(mass > 0.0) || !(atom_number > 0.0) || !(omega_r > 0.0) || !(omega_perp > 0.0))
            throw SimError("bec: mass, atom number and trap frequencies must be > 0");
        if (a_aa < 0.0 || a_ab < 0.0 || a_bb < 0.0)
            throw SimError("bec: scattering lengths must be >= 0");
    }
};

enum class Component { A, B, C };

/// Three condensate wavefunctions on one grid (SI units, values in 1/m).
struct SpinorField2D {
    GridSpec2D grid;
    std::vector<Complex> a, b, c;

    SpinorField2D() = default;
    explicit SpinorField2D(const GridSpec2D& g)
        : grid(g), a(g.size()), b(g.size()), c(g.size()) {}

    const std::vector<Complex>& component(Component which) const {
        return which == Component::A ? a : which == Component::B ? b : c;
    }
    ScalarField2D density(Component which) const;
};

/// integral |psi_which|^2 dx dy by the grid quadrature.
double component_norm(const SpinorField2D& field, Component which);

struct GroundStateOptions {
    double dtau = 1e-3;            ///< initial imaginary step (units of 1/omega_r)
    double energy_tolerance = 1e-10;   ///< relative energy change per step
    double residual_tolerance = 1e-5;  ///< ||(H - mu) psi|| in units of hbar omega_r
    long max_iterations = 400000;
};

struct GroundStateResult {
    ComplexField2D psi;      ///< normalized to 1, SI values
    double mu = 0.0;         ///< chemical potential (J)
    double energy = 0.0;     ///< total energy (J)
    long iterations = 0;
    double residual = 0.0;   ///< units of hbar omega_r
    bool resolution_warning = false;  ///< grid coarser than healing length / 8
    bool pancake_warning = false;     ///< omega_perp / omega_r < 10
    bool domain_warning = false;      ///< boundary density above 1e-8 of peak
};

/// Imaginary-time split-step relaxation of the single-component trap ground
/// state, started from the non-interacting Gaussian and renormalized after
/// every step. The step size halves whenever a step fails to lower the energy,
/// so the accepted energy sequence is non-increasing.
GroundStateResult ground_state(const GridSpec2D& grid, const BECParams& params,
                               const GroundStateOptions& options = {});

struct Snapshot {
    double t = 0.0;
    SpinorField2D fields;
    std::array<double, 3> norms{};
};

struct EvolveGpeOptions {
    double dt = 0.0;                     ///< step (s); must be > 0
    std::vector<double> snapshot_times;  ///< absolute times (s); final state always emitted
    unsigned threads = 0;
};

using SnapshotSink = std::function<void(const Snapshot&)>;

/// Real-time propagation of the three-component system under the optical
/// drive: Strang splitting with a spectral kinetic step on psi_a/psi_b (psi_c
/// carries no kinetic or trap term), frozen trap+mean-field phases, and the
/// exact exponential of the local coupling/decay block.
void evolve_spinor(const SpinorField2D& initial, const CompositeBeamSpec& beams,
                   const StokesSpec& stokes, const PulseSchedule& schedule,
                   const BECParams& params, double gamma, double t0, double t_final,
                   const EvolveGpeOptions& options, const SnapshotSink& sink);

/// Convenience overload collecting the snapshots.
std::vector<Snapshot> evolve_spinor(const SpinorField2D& initial, const CompositeBeamSpec& beams,
                                    const StokesSpec& stokes, const PulseSchedule& schedule,
                                    const BECParams& params, double gamma, double t0,
                                    double t_final, const EvolveGpeOptions& options);

/// Phase winding (integer) of psi around a circle, from principal-value phase
/// differences between consecutive samples (bilinear interpolation). Throws
/// UndefinedWindingError when |psi| on the loop falls below 1e-6 of the field
/// maximum or the sampling is too coarse.
int winding_number(const ComplexField2D& psi, Vec2 center, double radius, int samples = 256);

/// arg(psi) in (-pi, pi]; points with |psi| < 1e-12 * max are set to NaN.
ScalarField2D phase_map(const ComplexField2D& psi);

struct FwhmSample {
    double t = 0.0;
    double width = 0.0;
    bool under_resolved = false;
    bool localized = true;  ///< false: no half-max structure in this snapshot
};

/// FWHM of the chosen component's density along an axis slice through the
/// density maximum, one sample per snapshot. Snapshots without a localized
/// peak are marked and the series continues.
std::vector<FwhmSample> fwhm_timeseries(const std::vector<Snapshot>& snapshots,
                                        Component which, Axis axis);

} // namespace stirap2d
