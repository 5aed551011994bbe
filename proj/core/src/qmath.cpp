#include "niqsim/qmath.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace niqsim {

namespace {

double hermiticity_error(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::Index label_dim(Subsystem s) {
  return s == Subsystem::PathSpin ? 4 : 2;
}

}  // namespace

DensityOperator::DensityOperator(Matrix matrix, Subsystem label)
    : mat_(std::move(matrix)), label_(label) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != label_dim(label_)) {
    throw std::invalid_argument(
        "density operator dimension does not match its subsystem label");
  }
  if (hermiticity_error(mat_) >= kHermitianTol) {
    throw std::invalid_argument("density operator is not Hermitian");
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr.real() - 1.0) >= kTraceTol ||
      std::abs(tr.imag()) >= kTraceTol) {
    throw std::invalid_argument("density operator trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::invalid_argument(
        "density operator is not positive semidefinite");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw std::invalid_argument("kron expects two 2x2 factors");
  }
  Matrix out(4, 4);
  for (Eigen::Index r = 0; r < 2; ++r) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep) {
  if (rho.label() != Subsystem::PathSpin) {
    throw std::invalid_argument("partial trace expects the joint state");
  }
  if (keep == Subsystem::PathSpin) {
    throw std::invalid_argument("keep must name a single subsystem");
  }
  const Matrix& m = rho.matrix();
  Matrix out(2, 2);
  if (keep == Subsystem::Path) {
    for (Eigen::Index a = 0; a < 2; ++a) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        out(a, c) = m(2 * a, 2 * c) + m(2 * a + 1, 2 * c + 1);
      }
    }
  } else {
    for (Eigen::Index b = 0; b < 2; ++b) {
      for (Eigen::Index d = 0; d < 2; ++d) {
        out(b, d) = m(b, d) + m(2 + b, 2 + d);
      }
    }
  }
  return DensityOperator(std::move(out), keep);
}

Eigensystem eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eig_hermitian expects a square matrix");
  }
  if (hermiticity_error(m) >= kHermitianInputTol) {
    throw std::invalid_argument("eig_hermitian expects a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  const Eigen::Index n = m.rows();
  Eigensystem out{Eigen::VectorXd(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Matrix sqrt_psd(const Matrix& m) {
  Eigensystem es = eig_hermitian(m);
  if (es.values.minCoeff() < -kPsdTol) {
    throw std::invalid_argument("sqrt_psd expects a PSD matrix");
  }
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    roots(i) =
        es.values(i) < kZeroEigenvalue ? 0.0 : std::sqrt(es.values(i));
  }
  Matrix r = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
  return (r + r.adjoint()) / 2.0;  // keep the result exactly Hermitian
}

double vn_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > kZeroEigenvalue) s -= lam * std::log2(lam);
  }
  // an eigenvalue of 1+eps contributes a spurious -eps/ln 2
  return (s < 0.0 && s > -1e-12) ? 0.0 : s;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

Eigen::Vector2cd bloch_state(double theta, double varphi) {
  Eigen::Vector2cd s;
  s << Complex(std::cos(theta / 2.0), 0.0),
      Complex(std::cos(varphi), std::sin(varphi)) * std::sin(theta / 2.0);
  return s;
}

const Matrix& pauli_x() {
  static const Matrix m = [] {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = [] {
    Matrix y(2, 2);
    y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return y;
  }();
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = [] {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }();
  return m;
}

const Matrix& hadamard() {
  static const Matrix m = [] {
    Matrix h(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return h;
  }();
  return m;
}

}  // namespace niqsim
