#pragma once

#include <array>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Standard correlation quantities of a two-qubit state.
///
/// s1 >= s2 >= s3 are the singular values of T, chi = sign(det T),
/// lambdas the decreasing concurrence spectrum. The raw criteria
///   M  = s1^2 + s2^2              (CHSH, violated iff M > 1)
///   F3 = s1^2 + s2^2 + s3^2       (steering, violated iff F3 > 1)
///   N  = s1 + s2 - chi*s3         (teleportation, useful iff N > 1)
/// are normalized to B, BF3, D in [0,1]; f = (1+N)/4, F = (N/3+1)/2.
struct CorrelationReport {
    double s1 = 0, s2 = 0, s3 = 0;
    double chi = 0;
    std::array<double, 4> lambdas{};
    double M = 0, F3 = 0, N = 0, f = 0, F = 0;
    double B = 0, BF3 = 0, D = 0, C = 0;
};

std::array<double, 3> t_singular_values(const RPicture& r);

/// sign(det T); 0 when |det T| < 1e-12.
double chirality(const RPicture& r);

/// Wootters concurrence, via the Hermitian sqrt(rho)*rho_tilde*sqrt(rho)
/// form of the rho*rho_tilde spectrum.
double concurrence(const DensityMatrix& rho);
std::array<double, 4> concurrence_spectrum(const DensityMatrix& rho);

double chsh_b(const DensityMatrix& rho);
double f3_bf3(const DensityMatrix& rho);
double teleportation_d(const DensityMatrix& rho);

CorrelationReport correlation_report(const DensityMatrix& rho);

/// Closed forms for the b=c, real-z, w=0 family (left column of the
/// analytic table). d_table is reported alongside the general teleportation
/// measure, which is authoritative; they coincide only when a+d = 1/2.
/// b equals the general measure whenever |eps| >= 2|z|.
struct XFamilyStandardForms {
    double b = 0, bf3 = 0, d_table = 0, c = 0;
    double eps = 0, f_plus = 0, f_minus = 0;
};

XFamilyStandardForms closed_forms_standard(const XParams& x);

}  // namespace qcorr
