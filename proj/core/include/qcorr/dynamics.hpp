#pragma once

#include <span>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Rates in units of Gamma; gamma = k * Gamma is the collective damping.
struct SystemParams {
    double omega1 = 0;
    double omega2 = 0;
    double V = 0;
    double Gamma = 1.0;
    double k = 0;

    double gamma() const { return k * Gamma; }
    double omega0() const { return 0.5 * (omega1 + omega2); }
};

/// Throws ValidationError unless Gamma > 0 and |k| <= 1 (PSD dissipator).
void validate_system_params(const SystemParams& sp);

struct Trajectory {
    std::vector<double> times;           // dimensionless tau = Gamma*t
    std::vector<DensityMatrix> states;   // same length as times
};

/// Right-hand side of the master equation
///   drho/dt = i[rho,H] - sum_ij Gamma_ij/2 ({rho, s+_i s-_j} - 2 s-_i rho s+_j)
/// with H = -w1/2 sz(x)1 - w2/2 1(x)sz + V/2 (sx(x)sx + sy(x)sy).
/// Result is traceless and Hermitian.
Matrix4c lindblad_rhs(const DensityMatrix& rho, const SystemParams& sp);

/// Uniform grid 0..tau_max inclusive with `samples` points.
std::vector<double> uniform_grid(double tau_max, int samples);

/// Classical fixed-step RK4 sampled on tau_grid (grid starts at 0, strictly
/// increasing). Each stored sample is re-Hermitized; throws NumericalError
/// if trace drifts beyond 1e-10 or min eigenvalue falls below -1e-8.
Trajectory evolve_numeric(const DensityMatrix& rho0, const SystemParams& sp,
                          std::span<const double> tau_grid, double step = 1e-3);

/// Closed-form X-state propagator (zero detuning; the corner coherence
/// rotates at omega0). Requires |k| < 1 - 1e-6 and omega1 == omega2;
/// rejects otherwise with guidance to use evolve_numeric.
XParams evolve_analytic_x(const XParams& x0, const SystemParams& sp, double tau);

/// Closed-form solution for the b=c, real-z, w=0 family started from the
/// Werner state of mixing parameter p_mix; k restricted to (0,1).
XParams evolve_reduced_family(double p_mix, double k, double tau);

}  // namespace qcorr
