#pragma once

// Dense complex-matrix kernel for the 2- and 4-dimensional Hermitian
// operators the interferometer model lives on: tensor products, partial
// traces, Hermitian eigendecomposition, PSD square roots, entropies.

#include <complex>

#include <Eigen/Dense>

namespace niqsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Shared numerical tolerances. Density operators must be Hermitian and
// unit-trace to 1e-12 and PSD to -1e-10; eigenvalues below 1e-12 are
// treated as exactly zero wherever a zero would be singular (logs, roots).
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kHermitianInputTol = 1e-10;
inline constexpr double kZeroEigenvalue = 1e-12;

/// Subsystem tags for the path (A) x spin (B) bipartition. Basis order is
/// fixed everywhere: |0 up>, |0 down>, |1 up>, |1 down> -- path is the slow
/// index, spin the fast one.
enum class Subsystem { PathSpin, Path, Spin };

/// A density operator validated at construction: square, matching its
/// subsystem label (4x4 joint, 2x2 marginal), Hermitian and unit-trace
/// within 1e-12, positive semidefinite within -1e-10.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, Subsystem label);

  const Matrix& matrix() const { return mat_; }
  Subsystem label() const { return label_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
  Subsystem label_;
};

/// Tensor product of two 2x2 factors (first factor = slow index).
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace out everything except `keep` from a joint state.
DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep);

struct Eigensystem {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // columns, same order as values
};

/// Eigendecomposition of a Hermitian matrix (checked to 1e-10), values
/// descending, residual ||M v - lambda v|| < 1e-10 per pair.
Eigensystem eig_hermitian(const Matrix& m);

/// Principal square root of a PSD matrix. Eigenvalues below the zero
/// floor are taken as exact zeros; below -1e-10 the input is rejected.
Matrix sqrt_psd(const Matrix& m);

/// Von Neumann entropy in bits. All logs in this project are base 2.
double vn_entropy(const DensityOperator& rho);

/// Shannon entropy of a coin: -p log2 p - (1-p) log2 (1-p), 0 at the ends.
double binary_entropy(double p);

/// Spin state at Bloch angles: cos(theta/2)|up> + e^{i varphi} sin(theta/2)|down>.
Eigen::Vector2cd bloch_state(double theta, double varphi);

// Fixed 2x2 operators.
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& hadamard();

}  // namespace niqsim
