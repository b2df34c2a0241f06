#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "qcorr/errors.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3d = Eigen::Matrix3d;
using Vector3d = Eigen::Vector3d;

// Validation tolerances shared across the library.
inline constexpr double kHermTol = 1e-12;   // |rho - rho^dag| elementwise
inline constexpr double kTraceTol = 1e-12;  // |tr(rho) - 1|
inline constexpr double kPsdTol = 1e-10;    // min eigenvalue >= -kPsdTol

enum class Subsystem { A, B };

/// (m + m^dag)/2 through a temporary; safe to call as m = hermitized(m).
inline Matrix4c hermitized(const Matrix4c& m) {
    Matrix4c out = m.adjoint();
    out += m;
    return out / 2.0;
}

/// sigma_0 = identity, sigma_1..3 = Pauli x,y,z with sigma_z|0> = +|0>.
const Matrix2c& pauli(int i);

/// Cached sigma_i (x) sigma_j in the basis |00>,|01>,|10>,|11>.
const Matrix4c& pauli_kron(int i, int j);

/// Two-qubit density matrix: 4x4 complex, Hermitian, unit trace, PSD.
/// Basis order is fixed to |00>,|01>,|10>,|11>.
class DensityMatrix {
  public:
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
    /// (min eigenvalue >= -1e-10); throws ValidationError naming the
    /// violated constraint.
    static DensityMatrix from_matrix(const Matrix4c& m);

    /// Skips validation; for internal paths that construct states by
    /// manifestly trace/positivity preserving operations.
    static DensityMatrix trusted(const Matrix4c& m) { return DensityMatrix(m); }

    const Matrix4c& matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

    double min_eigenvalue() const;

  private:
    explicit DensityMatrix(const Matrix4c& m) : m_(m) {}
    Matrix4c m_;
};

/// X-state parameters (diagonal a,b,c,d; central coherence z; corner w).
struct XParams {
    double a = 0, b = 0, c = 0, d = 0;
    Complex z{0, 0};
    Complex w{0, 0};
};

/// Throws ValidationError naming the violated constraint:
/// "trace", "negative population", "block positivity".
void validate_x_params(const XParams& p, double tol = 1e-10);

/// Bloch vectors and 3x3 correlation matrix; R00 = 1 is implicit.
struct RPicture {
    Vector3d bloch_a = Vector3d::Zero();
    Vector3d bloch_b = Vector3d::Zero();
    Matrix3d t = Matrix3d::Zero();
};

/// Local filter pair (f_A, f_B), each constrained to f^dag f <= 1.
struct FilterPair {
    Matrix2c f_a = Matrix2c::Identity();
    Matrix2c f_b = Matrix2c::Identity();
};

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

DensityMatrix make_x_state(const XParams& p);

/// Reads the seven X entries back off an X-shaped matrix; throws
/// ValidationError if any off-X entry exceeds tol.
XParams extract_x_params(const DensityMatrix& rho, double tol = 1e-10);

/// p |psi+><psi+| + (1-p) I/4 with |psi+> = (|01>+|10>)/sqrt(2).
DensityMatrix werner_state(double p_mix);

DensityMatrix bell_state(Bell which);

RPicture to_r_picture(const DensityMatrix& rho);

/// Inverse expansion rho = 1/4 sum R_ij sigma_i (x) sigma_j; throws
/// ValidationError("not a state ...") if the reconstruction is not PSD.
DensityMatrix from_r_picture(const RPicture& r);

/// Partial trace over the complementary qubit.
Matrix2c reduced_state(const DensityMatrix& rho, Subsystem keep);

/// Transpose of the chosen subsystem; used for PPT checks.
Matrix4c partial_transpose(const DensityMatrix& rho, Subsystem which);

}  // namespace qcorr
