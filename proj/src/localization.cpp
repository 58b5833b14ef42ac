#include "stirap2d/localization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "stirap2d/parallel.hpp"

namespace stirap2d {

std::pair<double, double> default_window(const PulseSchedule& schedule) {
    const double lo = std::min(schedule.t_stokes, schedule.t_pump) - 4.0 * schedule.width;
    const double hi = std::max(schedule.t_stokes, schedule.t_pump) + 4.0 * schedule.width;
    return {lo, hi};
}

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

double population_a_at(const MapSetup& setup, Vec2 point, double t0, double t1, double dt) {
    PointDrive drive{composite_amplitude(setup.beams, point),
                     setup.stokes.value_at(point), setup.schedule, true};
    DensityMatrix3 rho0 = DensityMatrix3::Zero();
    rho0(0, 0) = 1.0;
    EvolveOptions opt;
    opt.dt = dt;
    const DensityMatrix3 rho = evolve_point(rho0, drive, setup.params, t0, t1, opt);
    return clamp01(rho(0, 0).real());
}

ScalarField2D population_map(const GridSpec2D& grid, const MapSetup& setup,
                             const MapOptions& options) {
    grid.validate();
    setup.beams.validate();
    setup.stokes.validate();
    setup.schedule.validate();
    setup.params.validate();

    auto [t0, t1] = default_window(setup.schedule);
    if (options.explicit_window) {
        t0 = options.t0;
        t1 = options.t_final;
    }

    ScalarField2D out(grid);
    parallel_for(grid.size(), options.threads, [&](std::size_t idx) {
        const auto i = static_cast<std::int32_t>(idx % static_cast<std::size_t>(grid.nx));
        const auto j = static_cast<std::int32_t>(idx / static_cast<std::size_t>(grid.nx));
        try {
            out.values[idx] = population_a_at(setup, grid.point(i, j), t0, t1, options.dt);
        } catch (const SimError& e) {
            throw SimError("at grid point (" + std::to_string(i) + ", " + std::to_string(j) +
                           "): " + e.what());
        }
    });
    return out;
}

} // namespace

ScalarField2D stirap_population_map(const GridSpec2D& grid, const MapSetup& setup,
                                    const MapOptions& options) {
    return population_map(grid, setup, options);
}

ScalarField2D cpt_population_map(const GridSpec2D& grid, const MapSetup& setup,
                                 const MapOptions& options) {
    if (setup.schedule.delay() != 0.0)
        throw SimError("cpt map: pulses must overlap (tau = 0)");
    return population_map(grid, setup, options);
}

AdiabaticityMap adiabaticity_map(const GridSpec2D& grid, const CompositeBeamSpec& beams,
                                 const StokesSpec& stokes, double tau, double beta,
                                 unsigned threads) {
    grid.validate();
    beams.validate();
    stokes.validate();

    AdiabaticityMap out;
    out.margin = ScalarField2D(grid);
    std::vector<double> lhs(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t idx) {
        const auto i = static_cast<std::int32_t>(idx % static_cast<std::size_t>(grid.nx));
        const auto j = static_cast<std::int32_t>(idx / static_cast<std::size_t>(grid.nx));
        const Vec2 p = grid.point(i, j);
        const double pump_mag = std::abs(composite_amplitude(beams, p));
        const double stokes_mag = std::abs(stokes.value_at(p));
        const auto rep = adiabaticity_margin(pump_mag, stokes_mag, tau, beta);
        out.margin.values[idx] = rep.margin;
        lhs[idx] = rep.lhs;
    });
    out.rhs = (beta / tau) * (beta / tau);
    out.min_lhs = *std::min_element(lhs.begin(), lhs.end());
    out.satisfied_everywhere =
        std::all_of(lhs.begin(), lhs.end(), [&](double v) { return v > out.rhs; });
    return out;
}

Profile1D radial_scan(const MapSetup& setup, double r_max, int n_points,
                      const MapOptions& options) {
    setup.beams.validate();
    if (setup.beams.components.size() != 1)
        throw SimError("radial scan: requires a single vortex component");
    const auto& beam = setup.beams.components.front();
    if (beam.center.x != 0.0 || beam.center.y != 0.0)
        throw SimError("radial scan: vortex must be centered on the axis");
    setup.stokes.validate();  // a Gaussian Stokes is axisymmetric, allowed here
    if (n_points < 2 || !(r_max > 0.0)) throw SimError("radial scan: bad sampling window");

    auto [t0, t1] = default_window(setup.schedule);
    if (options.explicit_window) {
        t0 = options.t0;
        t1 = options.t_final;
    }

    Profile1D prof;
    prof.coords.resize(n_points);
    prof.values.resize(n_points);
    const double dr = r_max / (n_points - 1);
    for (int k = 0; k < n_points; ++k) prof.coords[k] = k * dr;

    parallel_for(static_cast<std::size_t>(n_points), options.threads, [&](std::size_t k) {
        prof.values[k] = population_a_at(setup, {prof.coords[k], 0.0}, t0, t1, options.dt);
    });
    return prof;
}

Profile1D mirror_radial_profile(const Profile1D& radial) {
    const std::size_t n = radial.coords.size();
    if (n < 2) throw SimError("mirror: profile too short");
    Profile1D out;
    out.coords.resize(2 * n - 1);
    out.values.resize(2 * n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        out.coords[n - 1 - k] = -radial.coords[k];
        out.values[n - 1 - k] = radial.values[k];
        out.coords[n - 1 + k] = radial.coords[k];
        out.values[n - 1 + k] = radial.values[k];
    }
    return out;
}

FwhmResult fwhm(const Profile1D& profile) {
    const std::size_t n = profile.values.size();
    if (n < 3) throw NotLocalizedError("fwhm: profile too short");

    const auto peak_it = std::max_element(profile.values.begin(), profile.values.end());
    const std::size_t ip = static_cast<std::size_t>(peak_it - profile.values.begin());
    const double peak = *peak_it;
    if (ip == 0 || ip == n - 1)
        throw NotLocalizedError("fwhm: maximum lies on the profile boundary");

    // Baseline from the outer 10% of samples, split between the two ends.
    std::size_t k = std::max<std::size_t>(1, n / 10);
    const std::size_t kl = std::max<std::size_t>(1, k / 2);
    const std::size_t kr = std::max<std::size_t>(1, k - kl);
    double baseline = 0.0;
    for (std::size_t i = 0; i < kl; ++i) baseline += profile.values[i];
    for (std::size_t i = 0; i < kr; ++i) baseline += profile.values[n - 1 - i];
    baseline /= static_cast<double>(kl + kr);

    const double level = 0.5 * (peak + baseline);
    if (!(peak > level))
        throw NotLocalizedError("fwhm: profile has no structure above the baseline");

    auto cross = [&](bool left) -> double {
        if (left) {
            for (std::size_t i = ip; i-- > 0;) {
                if (profile.values[i] < level) {
                    const double f = (level - profile.values[i]) /
                                     (profile.values[i + 1] - profile.values[i]);
                    return profile.coords[i] + f * (profile.coords[i + 1] - profile.coords[i]);
                }
            }
        } else {
            for (std::size_t i = ip + 1; i < n; ++i) {
                if (profile.values[i] < level) {
                    const double f = (profile.values[i - 1] - level) /
                                     (profile.values[i - 1] - profile.values[i]);
                    return profile.coords[i - 1] + f * (profile.coords[i] - profile.coords[i - 1]);
                }
            }
        }
        throw NotLocalizedError("fwhm: no half-maximum crossing on one side");
    };

    const double xl = cross(true);
    const double xr = cross(false);
    FwhmResult res;
    res.width = xr - xl;
    const double spacing = profile.coords[1] - profile.coords[0];
    res.under_resolved = res.width < 2.0 * spacing;
    return res;
}

std::vector<double> peripheral_spot_angles(int l1, int l2) {
    std::vector<double> angles;
    const int dl = l2 - l1;
    if (dl == 0) return angles;
    const int adl = dl > 0 ? dl : -dl;
    const double pi = 3.14159265358979323846;
    for (int n = 1; n <= 2 * adl - 1; n += 2) angles.push_back(n * pi / adl);
    return angles;
}

namespace {

// One-axis FWHM of a spot: walks outward from the peak cell until the value
// falls below half the spot peak, interpolating the crossing.
double spot_axis_width(const ScalarField2D& f, std::int32_t pi_, std::int32_t pj, bool along_x,
                       bool* resolved) {
    const auto& g = f.grid;
    const double peak = f.at(pi_, pj);
    const double level = 0.5 * peak;
    const double step = along_x ? g.dx : g.dy;
    const std::int32_t limit = along_x ? g.nx : g.ny;
    const std::int32_t p0 = along_x ? pi_ : pj;

    auto value = [&](std::int32_t q) {
        return along_x ? f.at(q, pj) : f.at(pi_, q);
    };

    double half[2] = {0.0, 0.0};
    for (int dir = 0; dir < 2; ++dir) {
        const int sgn = dir == 0 ? -1 : 1;
        double w = 0.5 * step;  // fallback: crossing inside the first cell
        bool found = false;
        for (std::int32_t q = p0 + sgn; q >= 0 && q < limit; q += sgn) {
            if (value(q) < level) {
                const double prev = value(q - sgn);
                const double frac = (prev - level) / (prev - value(q));
                w = (std::abs(q - sgn - p0) + frac) * step;
                found = true;
                break;
            }
        }
        if (!found) {
            w = std::abs((dir == 0 ? 0 : limit - 1) - p0) * step;  // spans to the edge
            *resolved = false;
        }
        half[dir] = w;
    }
    return half[0] + half[1];
}

} // namespace

std::vector<SpotReport> find_spots(const ScalarField2D& field, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw SimError("find_spots: threshold must lie in (0, 1)");
    const auto& g = field.grid;
    const double global_max = *std::max_element(field.values.begin(), field.values.end());
    const double level = threshold * global_max;

    std::vector<SpotReport> spots;
    if (!(global_max > 0.0)) return spots;

    std::vector<std::int8_t> visited(g.size(), 0);
    for (std::size_t seed = 0; seed < g.size(); ++seed) {
        if (visited[seed] || field.values[seed] < level) continue;

        // flood fill, 8-connected
        std::deque<std::size_t> queue{seed};
        visited[seed] = 1;
        double wsum = 0.0, cx = 0.0, cy = 0.0, peak = -1.0;
        std::int32_t peak_i = 0, peak_j = 0;
        std::int32_t imin = g.nx, imax = -1, jmin = g.ny, jmax = -1;
        while (!queue.empty()) {
            const std::size_t idx = queue.front();
            queue.pop_front();
            const auto i = static_cast<std::int32_t>(idx % static_cast<std::size_t>(g.nx));
            const auto j = static_cast<std::int32_t>(idx / static_cast<std::size_t>(g.nx));
            const double v = field.values[idx];
            const Vec2 p = g.point(i, j);
            wsum += v;
            cx += v * p.x;
            cy += v * p.y;
            if (v > peak) {
                peak = v;
                peak_i = i;
                peak_j = j;
            }
            imin = std::min(imin, i);
            imax = std::max(imax, i);
            jmin = std::min(jmin, j);
            jmax = std::max(jmax, j);
            for (std::int32_t dj = -1; dj <= 1; ++dj) {
                for (std::int32_t di = -1; di <= 1; ++di) {
                    const std::int32_t ni = i + di, nj = j + dj;
                    if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
                    const std::size_t nidx = g.index(ni, nj);
                    if (!visited[nidx] && field.values[nidx] >= level) {
                        visited[nidx] = 1;
                        queue.push_back(nidx);
                    }
                }
            }
        }

        SpotReport s;
        s.center = {cx / wsum, cy / wsum};
        s.peak_value = peak;
        s.angle_from_origin = std::atan2(s.center.y, s.center.x);
        if (s.angle_from_origin < 0.0) s.angle_from_origin += 2.0 * 3.14159265358979323846;
        s.grid_spanning = imin == 0 && jmin == 0 && imax == g.nx - 1 && jmax == g.ny - 1;
        bool resolved = true;
        s.fwhm_x = spot_axis_width(field, peak_i, peak_j, true, &resolved);
        s.fwhm_y = spot_axis_width(field, peak_i, peak_j, false, &resolved);
        s.under_resolved = !resolved || s.fwhm_x < 2.0 * g.dx || s.fwhm_y < 2.0 * g.dy;
        spots.push_back(s);
    }

    std::sort(spots.begin(), spots.end(), [](const SpotReport& a, const SpotReport& b) {
        if (a.peak_value != b.peak_value) return a.peak_value > b.peak_value;
        return a.angle_from_origin < b.angle_from_origin;
    });
    return spots;
}

} // namespace stirap2d
