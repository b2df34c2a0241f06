#include "qcorr/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

// vec is column-major (Eigen default): vec(A X B) = (B^T kron A) vec(X).
Matrix16c kron4(const Matrix4c& a, const Matrix4c& b) {
    Matrix16c out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

Matrix4c hamiltonian(const SystemParams& sp) {
    const Matrix2c& id = pauli(0);
    const Matrix2c& sx = pauli(1);
    const Matrix2c& sy = pauli(2);
    const Matrix2c& sz = pauli(3);
    return -0.5 * sp.omega1 * kron2(sz, id) - 0.5 * sp.omega2 * kron2(id, sz) +
           0.5 * sp.V * (kron2(sx, sx) + kron2(sy, sy));
}

// Liouvillian superoperator: drho/dt = unvec(L vec(rho)).
Matrix16c liouvillian(const SystemParams& sp) {
    const Complex i_unit{0.0, 1.0};
    Matrix2c lower;  // |0><1|
    lower << 0, 1, 0, 0;
    const Matrix2c raise = lower.adjoint();
    const Matrix4c id4 = Matrix4c::Identity();

    const Matrix4c h = hamiltonian(sp);
    const std::array<Matrix4c, 2> sm = {kron2(lower, pauli(0)), kron2(pauli(0), lower)};
    const std::array<Matrix4c, 2> sp_ops = {kron2(raise, pauli(0)), kron2(pauli(0), raise)};

    // i[rho, H] = i(rho H - H rho)
    Matrix16c L = i_unit * (kron4(h.transpose(), id4) - kron4(id4, h));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double rate = (i == j) ? sp.Gamma : sp.gamma();
            const Matrix4c a = sp_ops[i] * sm[j];
            L -= 0.5 * rate *
                 (kron4(a.transpose(), id4) + kron4(id4, a) -
                  2.0 * kron4(sp_ops[j].transpose(), sm[i]));
        }
    }
    return L;
}

Vector16c vec(const Matrix4c& m) { return Eigen::Map<const Vector16c>(m.data()); }
Matrix4c unvec(const Vector16c& v) { return Eigen::Map<const Matrix4c>(v.data()); }

void rk4_step(Vector16c& y, const Matrix16c& L, double h) {
    const Vector16c k1 = L * y;
    const Vector16c k2 = L * (y + 0.5 * h * k1);
    const Vector16c k3 = L * (y + 0.5 * h * k2);
    const Vector16c k4 = L * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void validate_system_params(const SystemParams& sp) {
    if (!(sp.Gamma > 0))
        throw ValidationError("SystemParams: Gamma must be positive");
    if (std::abs(sp.k) > 1.0 + 1e-12)
        throw ValidationError("SystemParams: |k| must not exceed 1 (dissipator positivity)");
}

Matrix4c lindblad_rhs(const DensityMatrix& rho, const SystemParams& sp) {
    validate_system_params(sp);
    return unvec(liouvillian(sp) * vec(rho.matrix()));
}

std::vector<double> uniform_grid(double tau_max, int samples) {
    if (samples < 2) throw ValidationError("grid needs at least 2 samples");
    if (!(tau_max > 0)) throw ValidationError("tau_max must be positive");
    std::vector<double> grid(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        grid[static_cast<std::size_t>(i)] = tau_max * i / (samples - 1);
    return grid;
}

Trajectory evolve_numeric(const DensityMatrix& rho0, const SystemParams& sp,
                          std::span<const double> tau_grid, double step) {
    validate_system_params(sp);
    if (!(step > 0)) throw ValidationError("evolve_numeric: step must be positive");
    if (tau_grid.empty() || std::abs(tau_grid[0]) > 1e-15)
        throw ValidationError("evolve_numeric: grid must start at tau = 0");
    for (std::size_t i = 1; i < tau_grid.size(); ++i)
        if (tau_grid[i] <= tau_grid[i - 1])
            throw ValidationError("evolve_numeric: grid must be strictly increasing");

    const Matrix16c L = liouvillian(sp);
    Vector16c y = vec(rho0.matrix());

    Trajectory traj;
    traj.times.assign(tau_grid.begin(), tau_grid.end());
    traj.states.reserve(tau_grid.size());

    auto store = [&traj](const Matrix4c& raw, double tau) {
        const Matrix4c herm = hermitized(raw);
        const double trace_dev = std::abs(herm.trace() - Complex{1.0, 0.0});
        if (trace_dev > 1e-10) {
            std::ostringstream os;
            os << "integration failure: trace drift " << trace_dev << " at tau = " << tau;
            throw NumericalError(os.str());
        }
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(herm, Eigen::EigenvaluesOnly);
        const double min_ev = es.eigenvalues().minCoeff();
        if (min_ev < -1e-8) {
            std::ostringstream os;
            os << "integration failure: min eigenvalue " << min_ev << " at tau = " << tau;
            throw NumericalError(os.str());
        }
        traj.states.push_back(DensityMatrix::trusted(herm));
    };

    store(rho0.matrix(), 0.0);
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        const double dt = tau_grid[i] - tau_grid[i - 1];
        const auto n_full = static_cast<long>(std::floor(dt / step + 1e-9));
        for (long s = 0; s < n_full; ++s) rk4_step(y, L, step);
        const double rem = dt - static_cast<double>(n_full) * step;
        if (rem > 1e-15) rk4_step(y, L, rem);
        store(unvec(y), tau_grid[i]);
    }
    return traj;
}

XParams evolve_analytic_x(const XParams& x0, const SystemParams& sp, double tau) {
    validate_system_params(sp);
    validate_x_params(x0);
    if (tau < 0) throw ValidationError("evolve_analytic_x: tau must be non-negative");
    if (std::abs(sp.k) >= 1.0 - 1e-6)
        throw ValidationError(
            "evolve_analytic_x: |k| too close to 1 (solution divides by 1-k^2); "
            "use evolve_numeric");
    if (std::abs(sp.omega1 - sp.omega2) > 1e-9)
        throw ValidationError(
            "evolve_analytic_x: closed form requires omega1 == omega2; use evolve_numeric");

    const double G = sp.Gamma;
    const double g = sp.gamma();
    const double t = tau / G;  // tau is Gamma*t
    const double V = sp.V;
    const double om0 = sp.omega0();

    const double a = x0.a, b = x0.b, c = x0.c, d = x0.d;
    const double rez = x0.z.real(), imz = x0.z.imag();

    // Exponentials folded so every exponent is non-positive for |g| < G.
    const double e_gm = std::exp(t * (g - G));        // e^{t(gamma-Gamma)}
    const double e_gp = std::exp(-t * (g + G));       // e^{-t(gamma+Gamma)}
    const double e_2G = std::exp(-2.0 * G * t);
    const double e_G = std::exp(-G * t);
    const double cos_v = std::cos(2.0 * t * V);
    const double sin_v = std::sin(2.0 * t * V);
    const double gg = g * g, GG = G * G;

    const double a_t =
        (2.0 * (a + d) * (gg - GG) + (b + c) * (GG - gg) * (e_gm - 2.0 + e_gp) +
         2.0 * d *
             ((g - G) * (g - G) * e_gm - (3.0 * gg + GG) * e_2G + (g + G) * (g + G) * e_gp) -
         2.0 * (GG - gg) * rez * (e_gm - e_gp)) /
        (2.0 * (gg - GG));

    const double d_pop =
        2.0 * d *
        (-2.0 * (gg + GG) * e_2G + (g - G) * (g - G) * e_gm + (g + G) * (g + G) * e_gp);
    const double cosh_part = 0.5 * (e_gm + e_gp);  // e^{-Gt} cosh(gt)
    const double sinh_part = 0.5 * (e_gm - e_gp);  // e^{-Gt} sinh(gt)

    const double b_t = (d_pop + 2.0 * (gg - GG) *
                                    (-(b + c) * cosh_part - (b - c) * e_G * cos_v +
                                     2.0 * imz * e_G * sin_v + 2.0 * rez * sinh_part)) /
                       (4.0 * (GG - gg));
    const double c_t = (d_pop - 2.0 * (gg - GG) *
                                    ((b + c) * cosh_part - (b - c) * e_G * cos_v +
                                     2.0 * imz * e_G * sin_v - 2.0 * rez * sinh_part)) /
                       (4.0 * (GG - gg));

    const double z_d_part =
        2.0 * d * ((g - G) * (g - G) * e_gm - (g + G) * (g + G) * e_gp + 4.0 * g * G * e_2G);
    const Complex z_t =
        (z_d_part + 2.0 * (gg - GG) * (Complex{-(b + c) * sinh_part, (b - c) * e_G * sin_v} +
                                       Complex{2.0 * rez * cosh_part, 2.0 * imz * e_G * cos_v})) /
        (4.0 * (gg - GG));

    const double d_t = d * e_2G;
    const Complex w_t = x0.w * std::exp(Complex{-G * t, 2.0 * om0 * t});

    XParams out;
    out.a = a_t;
    out.b = b_t;
    out.c = c_t;
    out.d = d_t;
    out.z = z_t;
    out.w = w_t;
    return out;
}

XParams evolve_reduced_family(double p_mix, double k, double tau) {
    if (p_mix < 0.0 || p_mix > 1.0)
        throw ValidationError("evolve_reduced_family: p_mix outside [0,1]");
    if (k < 1e-6 || k > 1.0 - 1e-6)
        throw ValidationError("evolve_reduced_family: k outside (0,1)");
    if (tau < 0) throw ValidationError("evolve_reduced_family: tau must be non-negative");

    const double t = tau;
    // 2 e^{G t} e^{-2 G t} sinh/cosh(k G t) folded into decaying exponentials
    const double e_m = std::exp(t * (k - 1.0));   // e^{-(1-k)t}
    const double e_p = std::exp(-t * (k + 1.0));  // e^{-(1+k)t}
    const double e_2 = std::exp(-2.0 * t);
    const double denom = 1.0 - k * k;

    const double d = 0.25 * (1.0 - p_mix) * e_2;
    const double b = ((p_mix * (k * k + k - 1.0) - k) * (e_m - e_p) +
                      (1.0 - k * k * p_mix) * (e_m + e_p) - (1.0 + k * k) * (1.0 - p_mix) * e_2) /
                     (4.0 * denom);
    const double z = ((p_mix * (1.0 - k * k) + (1.0 - p_mix) * k) * (e_m + e_p) / 2.0 -
                      (1.0 - k * k * p_mix) * (e_m - e_p) / 2.0 + (k * p_mix - k) * e_2) /
                     (2.0 * denom);

    XParams out;
    out.b = out.c = b;
    out.d = d;
    out.a = 1.0 - 2.0 * b - d;
    out.z = z;
    return out;
}

}  // namespace qcorr
