#include "stirap2d/gpe.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stirap2d/localization.hpp"
#include "stirap2d/parallel.hpp"

namespace stirap2d {

ScalarField2D SpinorField2D::density(Component which) const {
    const auto& v = component(which);
    ScalarField2D out(grid);
    for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = std::norm(v[i]);
    return out;
}

double component_norm(const SpinorField2D& field, Component which) {
    const auto& v = field.component(which);
    double sum = 0.0;
    for (const auto& z : v) sum += std::norm(z);
    return sum * field.grid.dx * field.grid.dy;
}

namespace {

// In-place 2D c2c transforms on a fixed buffer. FFTW_ESTIMATE keeps planning
// deterministic (no timing-dependent choices).
class Fft2D {
public:
    Fft2D(std::vector<Complex>& buffer, int nx, int ny) {
        auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
        fwd_ = fftw_plan_dft_2d(ny, nx, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_2d(ny, nx, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw SimError("fftw plan creation failed");
    }
    ~Fft2D() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    void forward() { fftw_execute(fwd_); }
    void backward() { fftw_execute(bwd_); }

private:
    fftw_plan fwd_;
    fftw_plan bwd_;
};

std::vector<double> k_squared(const GridSpec2D& g, double length_unit) {
    // wavenumbers of the periodic grid, in units of 1/length_unit
    const double dx = g.dx / length_unit;
    const double dy = g.dy / length_unit;
    std::vector<double> k2(g.size());
    for (std::int32_t j = 0; j < g.ny; ++j) {
        const double ky = 2.0 * kPi / (dy * g.ny) * (j <= g.ny / 2 ? j : j - g.ny);
        for (std::int32_t i = 0; i < g.nx; ++i) {
            const double kx = 2.0 * kPi / (dx * g.nx) * (i <= g.nx / 2 ? i : i - g.nx);
            k2[g.index(i, j)] = kx * kx + ky * ky;
        }
    }
    return k2;
}

std::vector<double> trap_potential(const GridSpec2D& g, double length_unit) {
    std::vector<double> v(g.size());
    for (std::int32_t j = 0; j < g.ny; ++j) {
        const double y = (g.y0 + j * g.dy) / length_unit;
        for (std::int32_t i = 0; i < g.nx; ++i) {
            const double x = (g.x0 + i * g.dx) / length_unit;
            v[g.index(i, j)] = 0.5 * (x * x + y * y);
        }
    }
    return v;
}

double quadrature_norm(const std::vector<Complex>& psi, double cell) {
    double sum = 0.0;
    for (const auto& z : psi) sum += std::norm(z);
    return sum * cell;
}

} // namespace

GroundStateResult ground_state(const GridSpec2D& grid, const BECParams& params,
                               const GroundStateOptions& options) {
    grid.validate();
    params.validate();
    if (!(options.dtau > 0.0)) throw SimError("ground state: dtau must be > 0");

    const double ar = params.radial_length();
    const double g_aa = params.coupling_scaled(params.a_aa);
    const auto k2 = k_squared(grid, ar);
    const auto vtrap = trap_potential(grid, ar);
    const double cell = (grid.dx / ar) * (grid.dy / ar);
    const std::size_t n = grid.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<Complex> psi(n), prev(n), work(n);
    Fft2D fft(psi, grid.nx, grid.ny);
    Fft2D fft_work(work, grid.nx, grid.ny);

    // non-interacting Gaussian start
    for (std::size_t i = 0; i < n; ++i) psi[i] = std::exp(-vtrap[i]);
    {
        const double nrm = std::sqrt(quadrature_norm(psi, cell));
        for (auto& z : psi) z /= nrm;
    }

    auto energy_of = [&]() {
        work = psi;
        fft_work.forward();
        double ekin = 0.0;
        for (std::size_t i = 0; i < n; ++i) ekin += 0.5 * k2[i] * std::norm(work[i]);
        ekin *= cell * inv_n;
        double eloc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::norm(psi[i]);
            eloc += (vtrap[i] + 0.5 * g_aa * d) * d;
        }
        return ekin + eloc * cell;
    };

    double dtau = options.dtau;
    std::vector<double> kin_half(n);
    auto refresh_kinetic = [&]() {
        for (std::size_t i = 0; i < n; ++i)
            kin_half[i] = std::exp(-0.25 * dtau * k2[i]) * inv_n;
    };
    refresh_kinetic();

    double energy = energy_of();
    long iter = 0;
    int calm = 0;           // consecutive steps with a tiny relative energy change
    long since_reject = 0;  // accepted steps since the last rejection
    double residual = std::numeric_limits<double>::infinity();
    double mu = 0.0;

    auto compute_residual = [&]() {
        work = psi;
        fft_work.forward();
        for (std::size_t i = 0; i < n; ++i) work[i] *= 0.5 * k2[i] * inv_n;
        fft_work.backward();
        for (std::size_t i = 0; i < n; ++i)
            work[i] += (vtrap[i] + g_aa * std::norm(psi[i])) * psi[i];
        double mu_acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mu_acc += (std::conj(psi[i]) * work[i]).real();
        mu = mu_acc * cell;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += std::norm(work[i] - mu * psi[i]);
        residual = std::sqrt(res * cell);
    };

    bool converged = false;
    while (iter < options.max_iterations) {
        prev = psi;
        ++iter;

        fft.forward();
        for (std::size_t i = 0; i < n; ++i) psi[i] *= kin_half[i];
        fft.backward();
        for (std::size_t i = 0; i < n; ++i)
            psi[i] *= std::exp(-dtau * (vtrap[i] + g_aa * std::norm(psi[i])));
        fft.forward();
        for (std::size_t i = 0; i < n; ++i) psi[i] *= kin_half[i];
        fft.backward();
        {
            const double nrm = std::sqrt(quadrature_norm(psi, cell));
            for (auto& z : psi) z /= nrm;
        }

        const double e_new = energy_of();
        if (e_new > energy) {
            psi = prev;
            dtau *= 0.5;
            refresh_kinetic();
            calm = 0;
            since_reject = 0;
            if (dtau < 1e-12) break;
            continue;
        }

        const double rel = std::abs(energy - e_new) / std::max(std::abs(e_new), 1.0);
        energy = e_new;
        ++since_reject;
        if (since_reject % 256 == 0 && dtau < options.dtau) {
            dtau = std::min(dtau * 1.25, options.dtau);
            refresh_kinetic();
        }
        calm = rel < options.energy_tolerance ? calm + 1 : 0;
        if (calm >= 20) {
            compute_residual();
            if (residual <= options.residual_tolerance) {
                converged = true;
                break;
            }
            // remaining error is split-step bias; reduce the step and continue
            dtau *= 0.5;
            refresh_kinetic();
            calm = 0;
            if (dtau < 1e-10) break;
        }
    }
    if (!converged) {
        compute_residual();
        if (residual > options.residual_tolerance)
            throw NotConvergedError("ground state: not converged after " +
                                    std::to_string(iter) + " iterations (residual " +
                                    std::to_string(residual) + ")");
    }
    if (!std::isfinite(mu)) compute_residual();

    GroundStateResult result;
    result.psi = ComplexField2D(grid);
    for (std::size_t i = 0; i < n; ++i) result.psi.values[i] = psi[i] / ar;
    result.mu = mu * kHbar * params.omega_r;
    result.energy = energy * kHbar * params.omega_r;
    result.iterations = iter;
    result.residual = residual;
    result.pancake_warning = !params.pancake_valid();

    const double healing = 1.0 / std::sqrt(std::max(2.0 * mu, 1e-300));
    result.resolution_warning = (grid.dx / ar) > healing / 8.0 && g_aa > 0.0;

    double peak = 0.0, edge = 0.0;
    for (std::int32_t j = 0; j < grid.ny; ++j)
        for (std::int32_t i = 0; i < grid.nx; ++i) {
            const double d = std::norm(psi[grid.index(i, j)]);
            peak = std::max(peak, d);
            if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1)
                edge = std::max(edge, d);
        }
    result.domain_warning = edge > 1e-8 * peak;
    return result;
}

namespace {

struct CouplingScalars {
    double gamma = 0.0;     // decay rate, trap units
    double decay_full = 1.0;  // exp(-gamma h / 2), drive-free path
    double pref = 1.0;        // exp(-gamma h / 4)
};

// Exact step of the local coupling/decay block: identity on the dark
// combination, analytic 2x2 exponential on the bright/excited pair.
inline void couple_point(Complex& pa, Complex& pb, Complex& pc, Complex p, Complex s,
                         double h, const CouplingScalars& cs) {
    const double omega2 = std::norm(p) + std::norm(s);
    if (omega2 == 0.0) {
        pc *= cs.decay_full;
        return;
    }
    const double omega = std::sqrt(omega2);
    const Complex beta = (p * pa + s * pb) / omega;
    const Complex dark = (s * pa - p * pb) / omega;

    const double lam2 = 0.25 * omega2 - cs.gamma * cs.gamma / 16.0;
    double co, sn;
    if (lam2 > 0.0) {
        const double lam = std::sqrt(lam2);
        co = std::cos(lam * h);
        sn = std::sin(lam * h) / lam;
    } else if (lam2 < 0.0) {
        const double m = std::sqrt(-lam2);
        co = std::cosh(m * h);
        sn = std::sinh(m * h) / m;
    } else {
        co = 1.0;
        sn = h;
    }
    const double g4 = 0.25 * cs.gamma;
    const Complex u11 = cs.pref * (co + sn * g4);
    const Complex u22 = cs.pref * (co - sn * g4);
    const Complex u12 = cs.pref * Complex(0.0, -1.0) * (0.5 * sn * omega);

    const Complex beta_new = u11 * beta + u12 * pc;
    pc = u12 * beta + u22 * pc;
    const Complex pbar = std::conj(p);
    const Complex sbar = std::conj(s);
    pa = (dark * sbar + beta_new * pbar) / omega;
    pb = (-dark * pbar + beta_new * sbar) / omega;
}

} // namespace

void evolve_spinor(const SpinorField2D& initial, const CompositeBeamSpec& beams,
                   const StokesSpec& stokes, const PulseSchedule& schedule,
                   const BECParams& params, double gamma, double t0, double t_final,
                   const EvolveGpeOptions& options, const SnapshotSink& sink) {
    initial.grid.validate();
    params.validate();
    beams.validate();
    stokes.validate();
    schedule.validate();
    if (gamma < 0.0) throw SimError("evolve: gamma must be >= 0");
    if (!(options.dt > 0.0)) throw SimError("evolve: dt must be > 0");
    if (!(t_final > t0)) throw SimError("evolve: t_final must be > t0");

    const GridSpec2D& grid = initial.grid;
    const double ar = params.radial_length();
    const double wr = params.omega_r;
    const std::size_t n = grid.size();

    const long nsteps =
        std::max(1L, static_cast<long>(std::ceil((t_final - t0) / options.dt - 1e-12)));
    const double dt = (t_final - t0) / static_cast<double>(nsteps);
    const double h = dt * wr;  // trap units

    const auto k2 = k_squared(grid, ar);
    const auto vtrap = trap_potential(grid, ar);
    const double g_aa = params.coupling_scaled(params.a_aa);
    const double g_ab = params.coupling_scaled(params.a_ab);
    const double g_bb = params.coupling_scaled(params.a_bb);
    const double cell = (grid.dx / ar) * (grid.dy / ar);

    // step guards: the envelope must be resolved and the non-exponentiated
    // local phases must stay small per step (the coupling/decay block is
    // integrated exactly, so Omega does not constrain dt here)
    if (dt > schedule.width / 20.0)
        throw StepSizeError("evolve: dt must resolve the pulse envelopes (dt <= T/20)");
    {
        double phase_rate = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double da = std::norm(initial.a[i]) * ar * ar;
            const double db = std::norm(initial.b[i]) * ar * ar;
            phase_rate = std::max(phase_rate, vtrap[i] + g_aa * da + g_ab * db);
        }
        if (h > 0.05 / std::max(phase_rate, 1e-300))
            throw StepSizeError("evolve: dt exceeds 0.05 over the trap+mean-field rate");
        const double kmax2 = *std::max_element(k2.begin(), k2.end());
        if (h > 2.0 * kPi / (0.5 * kmax2))
            throw StepSizeError("evolve: kinetic phase advances more than 2*pi per step");
    }

    // dimensionless working state
    std::vector<Complex> wa(n), wb(n), wc(n);
    for (std::size_t i = 0; i < n; ++i) {
        wa[i] = initial.a[i] * ar;
        wb[i] = initial.b[i] * ar;
        wc[i] = initial.c[i] * ar;
    }
    {
        const double total = quadrature_norm(wa, cell) + quadrature_norm(wb, cell) +
                             quadrature_norm(wc, cell);
        if (total > 1.0 + 1e-6) throw SimError("evolve: initial norm exceeds 1");
    }

    // spatial drive profiles, trap units
    std::vector<Complex> pump(n), stok(n);
    for (std::int32_t j = 0; j < grid.ny; ++j)
        for (std::int32_t i = 0; i < grid.nx; ++i) {
            const auto idx = grid.index(i, j);
            const Vec2 pt = grid.point(i, j);
            pump[idx] = composite_amplitude(beams, pt) / wr;
            stok[idx] = stokes.value_at(pt) / wr;
        }

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<Complex> kin_half(n), kin_full(n);
    for (std::size_t i = 0; i < n; ++i) {
        kin_half[i] = std::polar(inv_n, -0.25 * k2[i] * h);
        kin_full[i] = std::polar(inv_n, -0.5 * k2[i] * h);
    }

    CouplingScalars cs;
    cs.gamma = gamma / wr;
    cs.decay_full = std::exp(-0.5 * cs.gamma * h);
    cs.pref = std::exp(-0.25 * cs.gamma * h);

    Fft2D fft_a(wa, grid.nx, grid.ny);
    Fft2D fft_b(wb, grid.nx, grid.ny);

    auto kinetic = [&](const std::vector<Complex>& phase) {
        fft_a.forward();
        fft_b.forward();
        parallel_for(n, options.threads, [&](std::size_t i) {
            wa[i] *= phase[i];
            wb[i] *= phase[i];
        });
        fft_a.backward();
        fft_b.backward();
    };

    auto local_full = [&](double t_mid) {
        const double env_p = pulse_envelope(schedule, Pulse::Pump, t_mid);
        const double env_s = pulse_envelope(schedule, Pulse::Stokes, t_mid);
        parallel_for(n, options.threads, [&](std::size_t i) {
            const double na = std::norm(wa[i]);
            const double nb = std::norm(wb[i]);
            const Complex fa = std::polar(1.0, -0.5 * h * (vtrap[i] + g_aa * na + g_ab * nb));
            const Complex fb = std::polar(1.0, -0.5 * h * (vtrap[i] + g_bb * nb + g_ab * na));
            wa[i] *= fa;
            wb[i] *= fb;
            couple_point(wa[i], wb[i], wc[i], pump[i] * env_p, stok[i] * env_s, h, cs);
            wa[i] *= fa;
            wb[i] *= fb;
        });
    };

    // map snapshot times onto step boundaries
    std::vector<char> emit(static_cast<std::size_t>(nsteps) + 1, 0);
    for (double ts : options.snapshot_times) {
        long k = std::lround((ts - t0) / dt);
        if (k < 1) k = 1;
        if (k > nsteps) k = nsteps;
        emit[static_cast<std::size_t>(k)] = 1;
    }
    emit[static_cast<std::size_t>(nsteps)] = 1;

    auto emit_snapshot = [&](long step) {
        Snapshot snap;
        snap.t = t0 + step * dt;
        snap.fields = SpinorField2D(grid);
        for (std::size_t i = 0; i < n; ++i) {
            snap.fields.a[i] = wa[i] / ar;
            snap.fields.b[i] = wb[i] / ar;
            snap.fields.c[i] = wc[i] / ar;
        }
        snap.norms = {quadrature_norm(wa, cell), quadrature_norm(wb, cell),
                      quadrature_norm(wc, cell)};
        for (double v : snap.norms)
            if (!std::isfinite(v)) throw SimError("evolve: non-finite state at t = " +
                                                  std::to_string(snap.t));
        if (sink) sink(snap);
    };

    kinetic(kin_half);
    for (long k = 0; k < nsteps; ++k) {
        local_full(t0 + (k + 0.5) * dt);
        const bool boundary = emit[static_cast<std::size_t>(k + 1)] || k + 1 == nsteps;
        if (boundary) {
            kinetic(kin_half);
            if (emit[static_cast<std::size_t>(k + 1)]) emit_snapshot(k + 1);
            if (k + 1 < nsteps) kinetic(kin_half);
        } else {
            kinetic(kin_full);
        }
        if ((k & 255) == 0 && !std::isfinite(std::norm(wa[n / 2]) + std::norm(wc[n / 2])))
            throw SimError("evolve: non-finite state at step " + std::to_string(k));
    }
}

std::vector<Snapshot> evolve_spinor(const SpinorField2D& initial, const CompositeBeamSpec& beams,
                                    const StokesSpec& stokes, const PulseSchedule& schedule,
                                    const BECParams& params, double gamma, double t0,
                                    double t_final, const EvolveGpeOptions& options) {
    std::vector<Snapshot> out;
    evolve_spinor(initial, beams, stokes, schedule, params, gamma, t0, t_final, options,
                  [&](const Snapshot& s) { out.push_back(s); });
    return out;
}

int winding_number(const ComplexField2D& psi, Vec2 center, double radius, int samples) {
    const auto& g = psi.grid;
    if (samples < 64) samples = 64;
    double field_max = 0.0;
    for (const auto& z : psi.values) field_max = std::max(field_max, std::abs(z));
    if (field_max == 0.0) throw UndefinedWindingError("winding: field is identically zero");

    auto interp = [&](double x, double y) -> Complex {
        const double u = (x - g.x0) / g.dx;
        const double v = (y - g.y0) / g.dy;
        const auto i0 = static_cast<std::int32_t>(std::floor(u));
        const auto j0 = static_cast<std::int32_t>(std::floor(v));
        if (i0 < 0 || j0 < 0 || i0 + 1 >= g.nx || j0 + 1 >= g.ny)
            throw UndefinedWindingError("winding: loop leaves the grid");
        const double fu = u - i0;
        const double fv = v - j0;
        return (1 - fu) * (1 - fv) * psi.at(i0, j0) + fu * (1 - fv) * psi.at(i0 + 1, j0) +
               (1 - fu) * fv * psi.at(i0, j0 + 1) + fu * fv * psi.at(i0 + 1, j0 + 1);
    };

    double total = 0.0;
    Complex prev = interp(center.x + radius, center.y);
    if (std::abs(prev) <= 1e-6 * field_max)
        throw UndefinedWindingError("winding: amplitude too small on the loop");
    for (int k = 1; k <= samples; ++k) {
        const double phi = 2.0 * kPi * k / samples;
        const Complex z = interp(center.x + radius * std::cos(phi),
                                 center.y + radius * std::sin(phi));
        if (std::abs(z) <= 1e-6 * field_max)
            throw UndefinedWindingError("winding: amplitude too small on the loop");
        const double d = std::arg(z * std::conj(prev));
        if (std::abs(d) > 0.8 * kPi)
            throw UndefinedWindingError("winding: phase step too large, refine sampling");
        total += d;
        prev = z;
    }
    const double w = total / (2.0 * kPi);
    const long rounded = std::lround(w);
    if (std::abs(w - rounded) > 0.1)
        throw UndefinedWindingError("winding: loop integral is not an integer");
    return static_cast<int>(rounded);
}

ScalarField2D phase_map(const ComplexField2D& psi) {
    double field_max = 0.0;
    for (const auto& z : psi.values) field_max = std::max(field_max, std::abs(z));
    const double cutoff = 1e-12 * field_max;
    ScalarField2D out(psi.grid);
    for (std::size_t i = 0; i < psi.values.size(); ++i) {
        const double mag = std::abs(psi.values[i]);
        out.values[i] = mag < cutoff || mag == 0.0
                            ? std::numeric_limits<double>::quiet_NaN()
                            : std::arg(psi.values[i]);
    }
    return out;
}

std::vector<FwhmSample> fwhm_timeseries(const std::vector<Snapshot>& snapshots,
                                        Component which, Axis axis) {
    std::vector<FwhmSample> series;
    series.reserve(snapshots.size());
    for (const auto& snap : snapshots) {
        const ScalarField2D dens = snap.fields.density(which);
        const auto it = std::max_element(dens.values.begin(), dens.values.end());
        const auto idx = static_cast<std::size_t>(it - dens.values.begin());
        const auto& g = dens.grid;
        const auto i = static_cast<std::int32_t>(idx % static_cast<std::size_t>(g.nx));
        const auto j = static_cast<std::int32_t>(idx / static_cast<std::size_t>(g.nx));
        FwhmSample sample;
        sample.t = snap.t;
        try {
            const Profile1D prof = axis == Axis::X ? slice(dens, Axis::X, g.y0 + j * g.dy)
                                                   : slice(dens, Axis::Y, g.x0 + i * g.dx);
            const FwhmResult res = fwhm(prof);
            sample.width = res.width;
            sample.under_resolved = res.under_resolved;
        } catch (const NotLocalizedError&) {
            sample.localized = false;
        }
        series.push_back(sample);
    }
    return series;
}

} // namespace stirap2d
