#pragma once

#include <vector>

#include "stirap2d/grid.hpp"
#include "stirap2d/lambda_system.hpp"

namespace stirap2d {

/// Inputs shared by every map/scan: the optical drive and the atom.
struct MapSetup {
    CompositeBeamSpec beams;
    StokesSpec stokes;
    PulseSchedule schedule;
    LambdaParams params;
};

struct MapOptions {
    double dt = 0.0;       ///< 0 = per-point step guard
    double t0 = 0.0;       ///< ignored unless explicit_window
    double t_final = 0.0;  ///< ignored unless explicit_window
    bool explicit_window = false;
    unsigned threads = 0;  ///< 0 = all hardware threads
};

/// Default integration window: pulse centers padded by 4T on each side.
std::pair<double, double> default_window(const PulseSchedule& schedule);

/// Population of |a> at the end of the pulse sequence, one Lindblad evolution
/// per grid point starting from |a><a|.
ScalarField2D stirap_population_map(const GridSpec2D& grid, const MapSetup& setup,
                                    const MapOptions& options = {});

/// Same protocol with overlapping pulses; rejects schedules with nonzero delay.
ScalarField2D cpt_population_map(const GridSpec2D& grid, const MapSetup& setup,
                                 const MapOptions& options = {});

struct AdiabaticityMap {
    ScalarField2D margin;    ///< lhs/rhs per point
    bool satisfied_everywhere = false;
    double min_lhs = 0.0;
    double rhs = 0.0;
};

/// Spatial map of the adiabaticity margin for delay tau and threshold constant beta.
AdiabaticityMap adiabaticity_map(const GridSpec2D& grid, const CompositeBeamSpec& beams,
                                 const StokesSpec& stokes, double tau, double beta,
                                 unsigned threads = 0);

/// P_a(r) at n_points radii in [0, r_max] along the +x axis. Only valid for a
/// single on-axis vortex (the drive magnitude must be axisymmetric).
Profile1D radial_scan(const MapSetup& setup, double r_max, int n_points,
                      const MapOptions& options = {});

/// Reflects a radial profile about r = 0 into a symmetric two-sided profile.
Profile1D mirror_radial_profile(const Profile1D& radial);

struct FwhmResult {
    double width = 0.0;
    bool under_resolved = false;  ///< half-max region narrower than two samples
};

/// Full width at half maximum of a single-peaked profile. The reference level
/// is (peak + baseline)/2, with the baseline taken as the mean of the outer
/// 10% of samples; crossings are located by linear interpolation. Throws
/// NotLocalizedError when a crossing is missing on either side.
FwhmResult fwhm(const Profile1D& profile);

/// Angles n*pi/(l2-l1) for odd n in [1, 2|l2-l1|-1]; empty when l1 == l2.
std::vector<double> peripheral_spot_angles(int l1, int l2);

struct SpotReport {
    Vec2 center{};          ///< value-weighted centroid
    double fwhm_x = 0.0;
    double fwhm_y = 0.0;
    double peak_value = 0.0;
    double angle_from_origin = 0.0;
    bool under_resolved = false;
    bool grid_spanning = false;  ///< component touches all four grid edges
};

/// Connected components (8-neighborhood) of {value >= threshold * max}, sorted
/// by peak value descending with ties broken by angle ascending. Empty when no
/// value reaches the threshold.
std::vector<SpotReport> find_spots(const ScalarField2D& field, double threshold);

} // namespace stirap2d
