#include "qcorr/correlations.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

constexpr double kDetTol = 1e-12;
constexpr double kLambdaClamp = 1e-14;

Matrix4c sqrt_psd(const Matrix4c& h) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::array<double, 3> t_singular_values(const RPicture& r) {
    Eigen::JacobiSVD<Matrix3d> svd(r.t);
    const auto& s = svd.singularValues();
    return {s(0), s(1), s(2)};
}

double chirality(const RPicture& r) {
    const double det = r.t.determinant();
    if (std::abs(det) < kDetTol) return 0.0;
    return det > 0 ? 1.0 : -1.0;
}

std::array<double, 4> concurrence_spectrum(const DensityMatrix& rho) {
    const Matrix4c& yy = pauli_kron(2, 2);
    const Matrix4c flipped = yy * rho.matrix().conjugate() * yy;
    const Matrix4c root = sqrt_psd(rho.matrix());
    const Matrix4c sandwich = hermitized(root * flipped * root);

    Eigen::SelfAdjointEigenSolver<Matrix4c> es(sandwich, Eigen::EigenvaluesOnly);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        double v = es.eigenvalues()(i);
        if (v < 0.0 && v > -kLambdaClamp) v = 0.0;
        lam[static_cast<std::size_t>(i)] = std::sqrt(std::max(v, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return lam;
}

double concurrence(const DensityMatrix& rho) {
    const auto lam = concurrence_spectrum(rho);
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

CorrelationReport correlation_report(const DensityMatrix& rho) {
    CorrelationReport rep;
    const RPicture r = to_r_picture(rho);
    const auto s = t_singular_values(r);
    rep.s1 = s[0];
    rep.s2 = s[1];
    rep.s3 = s[2];
    rep.chi = chirality(r);
    rep.lambdas = concurrence_spectrum(rho);

    rep.M = s[0] * s[0] + s[1] * s[1];
    rep.F3 = rep.M + s[2] * s[2];
    rep.N = s[0] + s[1] - rep.chi * s[2];
    rep.f = 0.25 * (1.0 + rep.N);
    rep.F = 0.5 * (rep.N / 3.0 + 1.0);

    rep.B = std::max(0.0, rep.M - 1.0);
    rep.BF3 = std::max(0.0, 0.5 * (rep.F3 - 1.0));
    rep.D = std::max(0.0, 0.5 * (rep.N - 1.0));
    rep.C = std::max(0.0, rep.lambdas[0] - rep.lambdas[1] - rep.lambdas[2] - rep.lambdas[3]);
    return rep;
}

double chsh_b(const DensityMatrix& rho) { return correlation_report(rho).B; }
double f3_bf3(const DensityMatrix& rho) { return correlation_report(rho).BF3; }
double teleportation_d(const DensityMatrix& rho) { return correlation_report(rho).D; }

XFamilyStandardForms closed_forms_standard(const XParams& x) {
    validate_x_params(x);
    if (std::abs(x.w) > 1e-12)
        throw ValidationError("closed_forms_standard: family requires w = 0");
    if (std::abs(x.b - x.c) > 1e-12)
        throw ValidationError("closed_forms_standard: family requires b = c");
    if (std::abs(x.z.imag()) > 1e-12)
        throw ValidationError("closed_forms_standard: family requires real z");

    XFamilyStandardForms out;
    const double az = std::abs(x.z);
    out.eps = x.a + x.d - x.b - x.c;
    out.f_plus = std::sqrt(x.b * x.c) + std::sqrt(x.a * x.d);
    out.f_minus = std::sqrt(x.b * x.c) - std::sqrt(x.a * x.d);
    out.b = std::max(0.0, out.eps * out.eps + 4.0 * az * az - 1.0);
    out.bf3 = std::max(0.0, 0.5 * (out.eps * out.eps + 8.0 * az * az - 1.0));
    out.d_table = 2.0 * std::max(0.0, az - 0.5 * (x.b + x.c));
    out.c = 2.0 * std::max(0.0, az - std::sqrt(x.a * x.d));
    return out;
}

}  // namespace qcorr
