#include "stirap2d/lambda_system.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace stirap2d {

DensityMatrix3 hamiltonian(Complex omega_p, Complex omega_s, const LambdaParams& params) {
    DensityMatrix3 h = DensityMatrix3::Zero();
    h(2, 0) = -omega_p;
    h(0, 2) = -std::conj(omega_p);
    h(2, 1) = -omega_s;
    h(1, 2) = -std::conj(omega_s);
    h(1, 1) = -(params.detuning_p - params.detuning_s);
    h(2, 2) = -params.detuning_p;
    return h;
}

StateVector3 dark_state(Complex omega_p, Complex omega_s) {
    const double total = std::sqrt(std::norm(omega_p) + std::norm(omega_s));
    if (total == 0.0) throw UndefinedStateError("dark state undefined: both fields are zero");
    return StateVector3(omega_s / total, -omega_p / total, Complex{0.0});
}

double mixing_angle(Complex omega_p_spatial, double omega_s0, double t,
                    const PulseSchedule& schedule) {
    if (!(omega_s0 > 0.0)) throw SimError("mixing angle: Stokes amplitude must be > 0");
    const double mag = std::abs(omega_p_spatial);
    if (mag == 0.0) return 0.0;
    double expo = 2.0 * schedule.delay() * t / (schedule.width * schedule.width);
    if (expo > 700.0) expo = 700.0;  // envelope ratio beyond double range; atan saturates anyway
    return std::atan(mag / omega_s0 * std::exp(expo));
}

DensityMatrix3 lindblad_rhs(const DensityMatrix3& rho, Complex omega_p, Complex omega_s,
                            const LambdaParams& params) {
    const DensityMatrix3 h = hamiltonian(omega_p, omega_s, params);
    const Complex minus_i{0.0, -1.0};
    DensityMatrix3 out = minus_i * (h * rho - rho * h);

    const double g = params.gamma;
    const Complex rho_cc = rho(2, 2);
    if (params.recycle) {
        out(0, 0) += params.branch_a * g * rho_cc;
        out(1, 1) += params.branch_b * g * rho_cc;
    }
    out(2, 2) -= g * rho_cc;
    out(0, 2) -= 0.5 * g * rho(0, 2);
    out(2, 0) -= 0.5 * g * rho(2, 0);
    out(1, 2) -= 0.5 * g * rho(1, 2);
    out(2, 1) -= 0.5 * g * rho(2, 1);
    return out;
}

namespace {

// Hermitian density matrix in packed form: real populations plus the three
// independent coherences. Keeping only these components makes every RK4 stage
// exactly Hermiticity-preserving.
struct Rho6 {
    double naa, nbb, ncc;
    Complex rab, rac, rbc;
};

inline Rho6 operator+(const Rho6& x, const Rho6& y) {
    return {x.naa + y.naa, x.nbb + y.nbb, x.ncc + y.ncc,
            x.rab + y.rab, x.rac + y.rac, x.rbc + y.rbc};
}

inline Rho6 operator*(double s, const Rho6& x) {
    return {s * x.naa, s * x.nbb, s * x.ncc, s * x.rab, s * x.rac, s * x.rbc};
}

inline Rho6 pack(const DensityMatrix3& rho) {
    return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
            0.5 * (rho(0, 1) + std::conj(rho(1, 0))),
            0.5 * (rho(0, 2) + std::conj(rho(2, 0))),
            0.5 * (rho(1, 2) + std::conj(rho(2, 1)))};
}

inline DensityMatrix3 unpack(const Rho6& r) {
    DensityMatrix3 m;
    m(0, 0) = r.naa;
    m(1, 1) = r.nbb;
    m(2, 2) = r.ncc;
    m(0, 1) = r.rab;
    m(1, 0) = std::conj(r.rab);
    m(0, 2) = r.rac;
    m(2, 0) = std::conj(r.rac);
    m(1, 2) = r.rbc;
    m(2, 1) = std::conj(r.rbc);
    return m;
}

// Packed master-equation right-hand side. With M = H*rho, the coherent part is
// -i(M - M^dagger); only the six independent entries are formed.
inline Rho6 rhs6(const Rho6& r, Complex omega_p, Complex omega_s, const LambdaParams& p) {
    const Complex a = -std::conj(omega_p);                   // H_ac
    const Complex b = -std::conj(omega_s);                   // H_bc
    const double db = -(p.detuning_p - p.detuning_s);        // H_bb
    const double dc = -p.detuning_p;                         // H_cc

    const Complex m_aa = a * std::conj(r.rac);
    const Complex m_ab = a * std::conj(r.rbc);
    const Complex m_ac = a * r.ncc;
    const Complex m_ba = db * std::conj(r.rab) + b * std::conj(r.rac);
    const Complex m_bb = db * r.nbb + b * std::conj(r.rbc);
    const Complex m_bc = db * r.rbc + b * r.ncc;
    const Complex m_ca = std::conj(a) * r.naa + std::conj(b) * std::conj(r.rab) +
                         dc * std::conj(r.rac);
    const Complex m_cb = std::conj(a) * r.rab + std::conj(b) * r.nbb + dc * std::conj(r.rbc);
    const Complex m_cc = std::conj(a) * r.rac + std::conj(b) * r.rbc + dc * r.ncc;

    const Complex minus_i{0.0, -1.0};
    Rho6 out;
    out.naa = 2.0 * m_aa.imag();
    out.nbb = 2.0 * m_bb.imag();
    out.ncc = 2.0 * m_cc.imag();
    out.rab = minus_i * (m_ab - std::conj(m_ba));
    out.rac = minus_i * (m_ac - std::conj(m_ca));
    out.rbc = minus_i * (m_bc - std::conj(m_cb));

    const double g = p.gamma;
    if (g != 0.0) {
        if (p.recycle) {
            out.naa += p.branch_a * g * r.ncc;
            out.nbb += p.branch_b * g * r.ncc;
        }
        out.ncc -= g * r.ncc;
        out.rac -= 0.5 * g * r.rac;
        out.rbc -= 0.5 * g * r.rbc;
    }
    return out;
}

} // namespace

DensityMatrix3 evolve_point(const DensityMatrix3& rho0, const PointDrive& drive,
                            const LambdaParams& params, double t0, double t1,
                            const EvolveOptions& options, const TrajectorySink& sink) {
    params.validate();
    if (!(t1 > t0)) throw SimError("evolve_point: t1 must be > t0");

    double rate = std::max({drive.peak(), params.gamma, std::abs(params.detuning_p),
                            std::abs(params.detuning_p - params.detuning_s)});
    const double guard = rate > 0.0 ? 0.05 / rate : std::numeric_limits<double>::infinity();
    double h = options.dt > 0.0 ? options.dt : guard;
    if (h > guard * (1.0 + 1e-12))
        throw StepSizeError("evolve_point: dt exceeds 0.05/max(Omega_peak, Gamma)");
    if (!std::isfinite(h)) h = t1 - t0;

    const long n = std::max(1L, static_cast<long>(std::ceil((t1 - t0) / h - 1e-12)));
    h = (t1 - t0) / static_cast<double>(n);

    Rho6 y = pack(rho0);
    if (sink && options.sample_stride > 0) sink(t0, unpack(y));

    for (long k = 0; k < n; ++k) {
        const double t = t0 + k * h;
        const auto [p1, s1] = drive.at(t);
        const auto [p2, s2] = drive.at(t + 0.5 * h);
        const auto [p3, s3] = drive.at(t + h);

        const Rho6 k1 = rhs6(y, p1, s1, params);
        const Rho6 k2 = rhs6(y + (0.5 * h) * k1, p2, s2, params);
        const Rho6 k3 = rhs6(y + (0.5 * h) * k2, p2, s2, params);
        const Rho6 k4 = rhs6(y + h * k3, p3, s3, params);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (sink && options.sample_stride > 0 &&
            ((k + 1) % options.sample_stride == 0 || k + 1 == n))
            sink(t0 + (k + 1) * h, unpack(y));
    }
    return unpack(y);
}

DensityMatrix3 cpt_steady_state(Complex omega_p, Complex omega_s, const LambdaParams& params) {
    params.validate();
    if (!(params.gamma > 0.0)) throw SimError("steady state: gamma must be > 0");
    if (std::norm(omega_p) + std::norm(omega_s) == 0.0)
        throw SimError("steady state: drive must be nonzero");
    if (!(params.branch_a > 0.0) || !(params.branch_b > 0.0))
        throw SimError("steady state: branching must be strictly interior");

    // Column k of the Liouvillian is the master equation applied to the k-th
    // basis matrix, with column-major vec(rho), index = i + 3j.
    Eigen::MatrixXcd liouville(9, 9);
    for (int k = 0; k < 9; ++k) {
        DensityMatrix3 basis = DensityMatrix3::Zero();
        basis(k % 3, k / 3) = 1.0;
        const DensityMatrix3 col = lindblad_rhs(basis, omega_p, omega_s, params);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) liouville(i + 3 * j, k) = col(i, j);
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(liouville, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(7) < 1e-10 * sv(0))
        throw DegenerateSteadyStateError("steady state: Liouvillian null space is not one-dimensional");

    const Eigen::VectorXcd v = svd.matrixV().col(8);
    DensityMatrix3 rho;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) rho(i, j) = v(i + 3 * j);
    rho = 0.5 * (rho + rho.adjoint().eval());
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-8)
        throw DegenerateSteadyStateError("steady state: null vector has vanishing trace");
    rho /= tr;
    return rho;
}

AdiabaticityReport adiabaticity_margin(double omega_p_spatial_mag, double omega_s0,
                                       double tau, double beta) {
    if (!(tau > 0.0)) throw SimError("adiabaticity: tau must be > 0");
    AdiabaticityReport rep;
    rep.lhs = omega_p_spatial_mag * omega_p_spatial_mag + omega_s0 * omega_s0;
    rep.rhs = (beta / tau) * (beta / tau);
    rep.satisfied = rep.lhs > rep.rhs;
    rep.margin = rep.rhs > 0.0 ? rep.lhs / rep.rhs : std::numeric_limits<double>::infinity();
    return rep;
}

double hermiticity_error(const DensityMatrix3& rho) {
    return (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix3& rho) {
    const DensityMatrix3 herm = 0.5 * (rho + rho.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<DensityMatrix3> es(herm);
    return es.eigenvalues().minCoeff();
}

} // namespace stirap2d
