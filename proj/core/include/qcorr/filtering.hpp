#pragma once

#include <array>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Eigenvalues of eta R eta R^T, eta = diag(1,-1,-1,-1), sorted decreasing
/// and clamped at zero. They are invariant (up to common scale) under
/// invertible local filtering.
///
/// `exists` records whether the normal form is defined. The producer sets
/// it: the general eigensolve cannot resolve the ratios below nu0 ~ 1e-10
/// and declares such spectra degenerate; the closed-form family route is
/// exact at any scale and only gives up at nu0 = 0.
struct NuSpectrum {
    std::array<double, 4> nu{};  // nu[0] >= nu[1] >= nu[2] >= nu[3] >= 0
    bool exists = false;
};

/// Correlation measures of the Bell-diagonal unique normal form, i.e. the
/// suprema reachable by invertible local filtering. MEC aliases HD.
struct HiddenReport {
    double HB = 0, HBF3 = 0, HD = 0, MEC = 0;
    bool normal_form_exists = false;
    NuSpectrum nu;
};

NuSpectrum nu_spectrum(const DensityMatrix& rho);

/// Closed-form spectrum {4F+^2, 4F-^2, 4|z|^2, 4|z|^2} for the b=c, real-z,
/// w=0 family, F± = sqrt(bc) ± sqrt(ad); numerically stable arbitrarily deep
/// into the decay tail where the general eigensolve degrades.
NuSpectrum x_family_nu_spectrum(const XParams& x);

HiddenReport hidden_from_nu(const NuSpectrum& nu);

/// hidden_from_nu(nu_spectrum(rho)): the standard measures evaluated on the
/// normal form T = -diag(sqrt(nu1/nu0), sqrt(nu2/nu0), sqrt(nu3/nu0)).
/// All measures are 0 when the normal form does not exist (nu0 < 1e-10).
HiddenReport hidden_measures(const DensityMatrix& rho);

/// Normal form in the R picture; throws NumericalError("normal form does
/// not exist") when nu0 < 1e-10 (e.g. pure product states).
RPicture normal_form_r(const DensityMatrix& rho);

/// Right column of the analytic table, verbatim:
///   hb    = max{0, (F-^2 + |z|^2)/F+^2 - 1}
///   hbf3  = max{0, ((F-^2 + 2|z|^2)/F+^2 - 1)/2}
///   hd    = max{0, (|z| - sqrt(ad))/F+}
/// hd and hbf3 equal hidden_measures on the family everywhere; hb does so
/// exactly when F- >= |z| (its two summands are the two largest normal-form
/// ratios only there) and is a lower bound otherwise.
struct XFamilyHiddenForms {
    double hb = 0, hbf3 = 0, hd = 0;
};

XFamilyHiddenForms closed_forms_hidden(const XParams& x);

struct FilterOutcome {
    DensityMatrix state;
    double p_succ = 0;
};

/// rho -> (fA (x) fB) rho (fA (x) fB)^dag / p_succ. Throws ValidationError
/// if a filter violates f^dag f <= 1, NumericalError("filter annihilates
/// state") if p_succ < 1e-12.
FilterOutcome apply_filter(const DensityMatrix& rho, const FilterPair& filters);

struct NormalFormResult {
    FilterPair filters;         // each factor scaled to largest singular value 1
    DensityMatrix normal_form;  // filtered state (best iterate if not converged)
    double p_succ = 0;
    bool converged = false;
    int iterations = 0;
};

/// Iterative construction of the normal-form filters: repeatedly pull both
/// marginals to I/2 with local (2 rho_W)^{-1/2} filters, then diagonalize T
/// to non-positive entries with local unitaries from a sign-consistent SVD.
/// States whose normal form is only reached at vanishing success probability
/// (e.g. X states with a*d = 0 and entanglement left) exhaust max_iter and
/// come back with converged = false.
NormalFormResult compute_normal_form_filters(const DensityMatrix& rho,
                                             double tol = 1e-12, int max_iter = 10000);

}  // namespace qcorr
