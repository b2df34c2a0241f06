#include "qcorr/filtering.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

// The nu ratios sit under square roots, so tiny absolute eigenvalue errors
// get amplified near a degenerate spectrum; the 4x4 eigenproblem is done in
// long double to keep the filtered-vs-unfiltered invariance below 1e-8.
using Real = long double;
using Matrix4r = Eigen::Matrix<Real, 4, 4>;
using Matrix4cr = Eigen::Matrix<std::complex<Real>, 4, 4>;

constexpr double kNuExistenceTol = 1e-10;

Matrix4r r_matrix_ld(const Matrix4c& rho) {
    Matrix4cr rl;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            rl(r, c) = std::complex<Real>(rho(r, c).real(), rho(r, c).imag());
    Matrix4r R;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Matrix4c& k = pauli_kron(i, j);
            std::complex<Real> tr{0, 0};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    tr += std::complex<Real>(k(r, c).real(), k(r, c).imag()) * rl(c, r);
            R(i, j) = tr.real();
        }
    }
    return R;
}

std::array<double, 4> sorted_clamped(std::array<double, 4> nu) {
    std::sort(nu.begin(), nu.end(), std::greater<>());
    for (double& v : nu) {
        if (v < -kNuExistenceTol) {
            std::ostringstream os;
            os << "nu spectrum eigenvalue " << v << " below clamp tolerance";
            throw NumericalError(os.str());
        }
        v = std::max(v, 0.0);
    }
    return nu;
}

Matrix2c inv_sqrt_hermitian(const Matrix2c& h, bool& singular) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(h);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() <= 1e-15) {
        singular = true;
        return Matrix2c::Identity();
    }
    singular = false;
    Eigen::Vector2d inv = ev.cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

double max_singular_value(const Matrix2c& m) {
    Eigen::JacobiSVD<Matrix2c> svd(m);
    return svd.singularValues()(0);
}

// SU(2) element whose adjoint action U^dag sigma_i U = sum_j O_ij sigma_j
// realizes the rotation O (Shepperd quaternion extraction).
Matrix2c su2_from_so3(const Matrix3d& o) {
    double w, x, y, z;
    const double tr = o.trace();
    if (tr >= o(0, 0) && tr >= o(1, 1) && tr >= o(2, 2)) {
        const double r = std::sqrt(1.0 + tr);
        w = 0.5 * r;
        x = (o(2, 1) - o(1, 2)) / (2.0 * r);
        y = (o(0, 2) - o(2, 0)) / (2.0 * r);
        z = (o(1, 0) - o(0, 1)) / (2.0 * r);
    } else {
        int i = 0;
        if (o(1, 1) > o(0, 0)) i = 1;
        if (o(2, 2) > o(i, i)) i = 2;
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const double r = std::sqrt(1.0 + o(i, i) - o(j, j) - o(k, k));
        double q[3];
        q[i] = 0.5 * r;
        w = (o(k, j) - o(j, k)) / (2.0 * r);
        q[j] = (o(j, i) + o(i, j)) / (2.0 * r);
        q[k] = (o(k, i) + o(i, k)) / (2.0 * r);
        x = q[0];
        y = q[1];
        z = q[2];
    }
    const Complex i_unit{0.0, 1.0};
    return w * pauli(0) - i_unit * (x * pauli(1) + y * pauli(2) + z * pauli(3));
}

}  // namespace

NuSpectrum nu_spectrum(const DensityMatrix& rho) {
    const Matrix4r R = r_matrix_ld(rho.matrix());
    Matrix4r eta = Matrix4r::Identity();
    eta(1, 1) = eta(2, 2) = eta(3, 3) = Real(-1);
    const Matrix4r m = eta * R * eta * R.transpose();

    Eigen::EigenSolver<Matrix4r> es(m, /*computeEigenvectors=*/false);
    std::array<double, 4> nu{};
    for (int i = 0; i < 4; ++i) {
        const auto ev = es.eigenvalues()(i);
        if (std::abs(static_cast<double>(ev.imag())) > 1e-10) {
            std::ostringstream os;
            os << "nu spectrum has complex eigenvalue with imaginary part "
               << static_cast<double>(ev.imag());
            throw NumericalError(os.str());
        }
        nu[static_cast<std::size_t>(i)] = static_cast<double>(ev.real());
    }
    auto sorted = sorted_clamped(nu);
    const bool exists = sorted[0] >= kNuExistenceTol;
    return NuSpectrum{sorted, exists};
}

NuSpectrum x_family_nu_spectrum(const XParams& x) {
    validate_x_params(x);
    if (std::abs(x.w) > 1e-12 || std::abs(x.b - x.c) > 1e-12 || std::abs(x.z.imag()) > 1e-12)
        throw ValidationError("x_family_nu_spectrum: requires w = 0, b = c, real z");
    const double f_plus = std::sqrt(x.b * x.c) + std::sqrt(x.a * x.d);
    const double f_minus = std::sqrt(x.b * x.c) - std::sqrt(x.a * x.d);
    const double az = std::abs(x.z);
    auto sorted = sorted_clamped(
        {4.0 * f_plus * f_plus, 4.0 * f_minus * f_minus, 4.0 * az * az, 4.0 * az * az});
    return NuSpectrum{sorted, sorted[0] > 0.0};
}

HiddenReport hidden_from_nu(const NuSpectrum& spectrum) {
    HiddenReport rep;
    rep.nu = spectrum;
    rep.normal_form_exists = spectrum.exists;
    if (!rep.normal_form_exists) return rep;  // measures stay 0

    const auto& nu = spectrum.nu;
    const double n1 = nu[1] / nu[0];
    const double n2 = nu[2] / nu[0];
    const double n3 = nu[3] / nu[0];
    rep.HB = std::max(0.0, n1 + n2 - 1.0);
    rep.HBF3 = std::max(0.0, 0.5 * (n1 + n2 + n3 - 1.0));
    rep.HD = std::max(0.0, 0.5 * (std::sqrt(n1) + std::sqrt(n2) + std::sqrt(n3) - 1.0));
    rep.MEC = rep.HD;
    return rep;
}

HiddenReport hidden_measures(const DensityMatrix& rho) {
    return hidden_from_nu(nu_spectrum(rho));
}

RPicture normal_form_r(const DensityMatrix& rho) {
    const NuSpectrum spectrum = nu_spectrum(rho);
    if (!spectrum.exists)
        throw NumericalError("normal form does not exist: nu0 < 1e-10");
    RPicture r;
    const auto& nu = spectrum.nu;
    r.t = Matrix3d::Zero();
    for (int i = 0; i < 3; ++i)
        r.t(i, i) = -std::sqrt(nu[static_cast<std::size_t>(i + 1)] / nu[0]);
    return r;
}

XFamilyHiddenForms closed_forms_hidden(const XParams& x) {
    validate_x_params(x);
    if (std::abs(x.w) > 1e-12 || std::abs(x.b - x.c) > 1e-12 || std::abs(x.z.imag()) > 1e-12)
        throw ValidationError("closed_forms_hidden: requires w = 0, b = c, real z");
    const double f_plus = std::sqrt(x.b * x.c) + std::sqrt(x.a * x.d);
    const double f_minus = std::sqrt(x.b * x.c) - std::sqrt(x.a * x.d);
    const double az = std::abs(x.z);

    XFamilyHiddenForms out;
    if (f_plus < 1e-10) return out;  // degenerate, consistent with nu0 ~ 0
    const double fp2 = f_plus * f_plus;
    out.hb = std::max(0.0, (f_minus * f_minus + az * az) / fp2 - 1.0);
    out.hbf3 = std::max(0.0, 0.5 * ((f_minus * f_minus + 2.0 * az * az) / fp2 - 1.0));
    out.hd = std::max(0.0, (az - std::sqrt(x.a * x.d)) / f_plus);
    return out;
}

FilterOutcome apply_filter(const DensityMatrix& rho, const FilterPair& filters) {
    for (const auto* f : {&filters.f_a, &filters.f_b}) {
        const double smax = max_singular_value(*f);
        if (smax > 1.0 + 1e-12) {
            std::ostringstream os;
            os << "filter violates f^dag f <= 1: largest singular value " << smax;
            throw ValidationError(os.str());
        }
    }
    const Matrix4c f = kron2(filters.f_a, filters.f_b);
    const Matrix4c num = hermitized(f * rho.matrix() * f.adjoint());
    const double p_succ = num.trace().real();
    if (p_succ < 1e-12) throw NumericalError("filter annihilates state");
    return FilterOutcome{DensityMatrix::trusted(num / p_succ), p_succ};
}

NormalFormResult compute_normal_form_filters(const DensityMatrix& rho, double tol,
                                             int max_iter) {
    if (!(tol > 0)) throw ValidationError("compute_normal_form_filters: tol must be positive");
    if (max_iter < 1) throw ValidationError("compute_normal_form_filters: max_iter < 1");

    Matrix2c f_a = Matrix2c::Identity();
    Matrix2c f_b = Matrix2c::Identity();
    Matrix4c cur = rho.matrix();
    bool converged = false;
    int it = 0;

    for (; it < max_iter; ++it) {
        const DensityMatrix snapshot = DensityMatrix::trusted(cur);
        const Matrix2c ra = reduced_state(snapshot, Subsystem::A);
        const Matrix2c rb = reduced_state(snapshot, Subsystem::B);
        const double dev =
            std::max((ra - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff(),
                     (rb - 0.5 * Matrix2c::Identity()).cwiseAbs().maxCoeff());
        if (dev < tol) {
            converged = true;
            break;
        }
        bool singular_a = false, singular_b = false;
        const Matrix2c ga = inv_sqrt_hermitian(2.0 * ra, singular_a);
        const Matrix2c gb = inv_sqrt_hermitian(2.0 * rb, singular_b);
        if (singular_a || singular_b) break;  // cannot whiten a singular marginal

        const Matrix4c g = kron2(ga, gb);
        cur = hermitized(g * cur * g.adjoint());
        cur /= cur.trace().real();
        f_a = ga * f_a;
        f_b = gb * f_b;
    }

    // Local unitaries from a sign-consistent SVD bring T to diagonal form
    // with non-positive entries (the third sign is pinned by det T).
    const RPicture r = to_r_picture(DensityMatrix::trusted(cur));
    Eigen::JacobiSVD<Matrix3d> svd(r.t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix3d u = svd.matrixU();
    const Matrix3d v = svd.matrixV();
    Matrix3d da = Matrix3d::Identity();
    da(0, 0) = da(1, 1) = -1.0;
    da(2, 2) = u.determinant();
    Matrix3d db = Matrix3d::Identity();
    db(2, 2) = v.determinant();
    const Matrix3d o_a = da * u.transpose();
    const Matrix3d o_b = db * v.transpose();
    f_a = su2_from_so3(o_a) * f_a;
    f_b = su2_from_so3(o_b) * f_b;

    f_a /= max_singular_value(f_a);
    f_b /= max_singular_value(f_b);

    const FilterPair filters{f_a, f_b};
    const Matrix4c f = kron2(f_a, f_b);
    const Matrix4c num = hermitized(f * rho.matrix() * f.adjoint());
    const double p_succ = num.trace().real();
    DensityMatrix normal_form =
        p_succ > 1e-300 ? DensityMatrix::trusted(num / p_succ) : DensityMatrix::trusted(cur);
    return NormalFormResult{filters, normal_form, p_succ, converged, it};
}

}  // namespace qcorr
