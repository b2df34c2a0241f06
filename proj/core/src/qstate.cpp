#include "qcorr/qstate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

const Complex I_UNIT{0.0, 1.0};

std::array<Matrix2c, 4> make_paulis() {
    std::array<Matrix2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -I_UNIT, I_UNIT, 0;
    s[3] << 1, 0, 0, -1;
    return s;
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace

const Matrix2c& pauli(int i) {
    static const std::array<Matrix2c, 4> s = make_paulis();
    return s.at(static_cast<std::size_t>(i));
}

const Matrix4c& pauli_kron(int i, int j) {
    static const std::array<Matrix4c, 16> cache = [] {
        std::array<Matrix4c, 16> out;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) out[4 * a + b] = kron2(pauli(a), pauli(b));
        return out;
    }();
    return cache.at(static_cast<std::size_t>(4 * i + j));
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4c& m) {
    const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermTol) {
        std::ostringstream os;
        os << "not Hermitian: max |rho - rho^dag| = " << herm_dev;
        throw ValidationError(os.str());
    }
    const double trace_dev = std::abs(m.trace() - Complex{1.0, 0.0});
    if (trace_dev > kTraceTol) {
        std::ostringstream os;
        os << "trace differs from 1 by " << trace_dev;
        throw ValidationError(os.str());
    }
    DensityMatrix rho{hermitized(m)};
    const double min_ev = rho.min_eigenvalue();
    if (min_ev < -kPsdTol) {
        std::ostringstream os;
        os << "not positive semidefinite: min eigenvalue = " << min_ev;
        throw ValidationError(os.str());
    }
    return rho;
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void validate_x_params(const XParams& p, double tol) {
    const double trace = p.a + p.b + p.c + p.d;
    if (std::abs(trace - 1.0) > tol) {
        std::ostringstream os;
        os << "trace: a+b+c+d = " << trace;
        throw ValidationError(os.str());
    }
    for (double pop : {p.a, p.b, p.c, p.d}) {
        if (pop < -tol) {
            std::ostringstream os;
            os << "negative population: " << pop;
            throw ValidationError(os.str());
        }
    }
    if (std::norm(p.z) > p.b * p.c + tol)
        throw ValidationError("block positivity: |z|^2 > b*c");
    if (std::norm(p.w) > p.a * p.d + tol)
        throw ValidationError("block positivity: |w|^2 > a*d");
}

DensityMatrix make_x_state(const XParams& p) {
    validate_x_params(p);
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = p.a;
    m(1, 1) = p.b;
    m(2, 2) = p.c;
    m(3, 3) = p.d;
    m(1, 2) = p.z;
    m(2, 1) = std::conj(p.z);
    m(0, 3) = p.w;
    m(3, 0) = std::conj(p.w);
    return DensityMatrix::from_matrix(m);
}

XParams extract_x_params(const DensityMatrix& rho, double tol) {
    const Matrix4c& m = rho.matrix();
    static constexpr int off_x[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3},
                                        {2, 0}, {2, 3}, {3, 1}, {3, 2}};
    for (auto [r, c] : off_x) {
        if (std::abs(m(r, c)) > tol) {
            std::ostringstream os;
            os << "not an X state: |rho(" << r << "," << c << ")| = " << std::abs(m(r, c));
            throw ValidationError(os.str());
        }
    }
    XParams p;
    p.a = m(0, 0).real();
    p.b = m(1, 1).real();
    p.c = m(2, 2).real();
    p.d = m(3, 3).real();
    p.z = m(1, 2);
    p.w = m(0, 3);
    return p;
}

DensityMatrix werner_state(double p_mix) {
    if (p_mix < 0.0 || p_mix > 1.0)
        throw ValidationError("werner_state: p_mix outside [0,1]");
    XParams p;
    p.a = p.d = 0.25 * (1.0 - p_mix);
    p.b = p.c = 0.25 * (1.0 + p_mix);
    p.z = 0.5 * p_mix;
    return make_x_state(p);
}

DensityMatrix bell_state(Bell which) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    switch (which) {
        case Bell::PhiPlus: v(0) = r; v(3) = r; break;
        case Bell::PhiMinus: v(0) = r; v(3) = -r; break;
        case Bell::PsiPlus: v(1) = r; v(2) = r; break;
        case Bell::PsiMinus: v(1) = r; v(2) = -r; break;
    }
    return DensityMatrix::trusted(v * v.adjoint());
}

namespace {

double real_trace_product(const Matrix4c& k, const Matrix4c& rho) {
    Complex tr{0, 0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) tr += k(r, c) * rho(c, r);
    if (std::abs(tr.imag()) > kHermTol)
        throw NumericalError("R-picture trace has non-negligible imaginary part");
    return tr.real();
}

}  // namespace

RPicture to_r_picture(const DensityMatrix& rho) {
    RPicture r;
    for (int i = 1; i < 4; ++i) {
        r.bloch_a(i - 1) = real_trace_product(pauli_kron(i, 0), rho.matrix());
        r.bloch_b(i - 1) = real_trace_product(pauli_kron(0, i), rho.matrix());
        for (int j = 1; j < 4; ++j)
            r.t(i - 1, j - 1) = real_trace_product(pauli_kron(i, j), rho.matrix());
    }
    return r;
}

DensityMatrix from_r_picture(const RPicture& r) {
    Matrix4c m = 0.25 * pauli_kron(0, 0);
    for (int i = 1; i < 4; ++i) {
        m += 0.25 * r.bloch_a(i - 1) * pauli_kron(i, 0);
        m += 0.25 * r.bloch_b(i - 1) * pauli_kron(0, i);
        for (int j = 1; j < 4; ++j) m += 0.25 * r.t(i - 1, j - 1) * pauli_kron(i, j);
    }
    m = hermitized(m);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -kPsdTol) {
        std::ostringstream os;
        os << "not a state: min eigenvalue = " << min_ev;
        throw ValidationError(os.str());
    }
    return DensityMatrix::trusted(m);
}

Matrix2c reduced_state(const DensityMatrix& rho, Subsystem keep) {
    const Matrix4c& m = rho.matrix();
    Matrix2c out = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (keep == Subsystem::A)
                out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
            else
                out(i, j) = m(i, j) + m(2 + i, 2 + j);
        }
    return out;
}

Matrix4c partial_transpose(const DensityMatrix& rho, Subsystem which) {
    const Matrix4c& m = rho.matrix();
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    if (which == Subsystem::A)
                        out(2 * j + k, 2 * i + l) = m(2 * i + k, 2 * j + l);
                    else
                        out(2 * i + l, 2 * j + k) = m(2 * i + k, 2 * j + l);
                }
    return out;
}

}  // namespace qcorr
