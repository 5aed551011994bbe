#include "niqsim/qmath.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "niqsim/rng.hpp"
#include "support/checks.hpp"

using namespace niqsim;
using testsupport::max_abs_diff;

namespace {

Matrix random_hermitian(SplitMix64& g, int n) {
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      m(r, c) = Complex(g.uniform01() - 0.5, g.uniform01() - 0.5);
    }
  }
  return (m + m.adjoint()) / 2.0;
}

DensityOperator random_density(SplitMix64& g, int n) {
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      m(r, c) = Complex(g.uniform01() - 0.5, g.uniform01() - 0.5);
    }
  }
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(rho, n == 4 ? Subsystem::PathSpin : Subsystem::Path);
}

}  // namespace

TEST_CASE("kron builds the standard 4x4 blocks") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(kron(i2, i2), Matrix::Identity(4, 4)) == 0.0);

  Matrix e00 = Matrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(kron(e00, e00), expected) == 0.0);

  const Matrix xy = kron(pauli_x(), pauli_y());
  CHECK(xy(0, 3) == Complex(0, -1));
  CHECK(xy(1, 2) == Complex(0, 1));
  CHECK(xy(2, 1) == Complex(0, -1));
  CHECK(xy(3, 0) == Complex(0, 1));
  CHECK(std::abs(xy(0, 0)) == 0.0);
}

TEST_CASE("kron rejects non-2x2 factors") {
  CHECK_THROWS_AS(kron(Matrix::Identity(4, 4), Matrix::Identity(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("adjoint is an involution") {
  SplitMix64 g(7);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        m(r, c) = Complex(g.uniform01() - 0.5, g.uniform01() - 0.5);
      }
    }
    CHECK(max_abs_diff(m.adjoint().adjoint(), m) == 0.0);
  }
}

TEST_CASE("density operator construction validates its input") {
  Matrix bad = Matrix::Identity(4, 4) / 4.0;
  bad(0, 1) = Complex(0.1, 0.0);  // not Hermitian
  CHECK_THROWS_AS(DensityOperator(bad, Subsystem::PathSpin),
                  std::invalid_argument);

  CHECK_THROWS_AS(DensityOperator(Matrix::Identity(4, 4), Subsystem::PathSpin),
                  std::invalid_argument);  // trace 4

  Matrix indefinite = Matrix::Zero(2, 2);
  indefinite(0, 0) = 1.5;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(indefinite, Subsystem::Spin),
                  std::invalid_argument);

  CHECK_THROWS_AS(DensityOperator(Matrix::Identity(2, 2) / 2.0,
                                  Subsystem::PathSpin),
                  std::invalid_argument);  // label/dim mismatch
}

TEST_CASE("partial trace of a product state returns the factors") {
  SplitMix64 g(11);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityOperator a = random_density(g, 2);
    const DensityOperator b = random_density(g, 2);
    const DensityOperator joint(kron(a.matrix(), b.matrix()),
                                Subsystem::PathSpin);
    CHECK(max_abs_diff(partial_trace(joint, Subsystem::Path).matrix(),
                       a.matrix()) < 1e-12);
    CHECK(max_abs_diff(partial_trace(joint, Subsystem::Spin).matrix(),
                       b.matrix()) < 1e-12);
  }
}

TEST_CASE("partial trace of a maximally entangled state is maximally mixed") {
  Eigen::VectorXcd bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  const DensityOperator rho(testsupport::outer(bell), Subsystem::PathSpin);
  const Matrix half = Matrix::Identity(2, 2) / 2.0;
  CHECK(max_abs_diff(partial_trace(rho, Subsystem::Path).matrix(), half) <
        1e-12);
  CHECK(max_abs_diff(partial_trace(rho, Subsystem::Spin).matrix(), half) <
        1e-12);
}

TEST_CASE("partial trace is linear and rejects bad labels") {
  SplitMix64 g(13);
  const DensityOperator r1 = random_density(g, 4);
  const DensityOperator r2 = random_density(g, 4);
  const DensityOperator mix(0.3 * r1.matrix() + 0.7 * r2.matrix(),
                            Subsystem::PathSpin);
  const Matrix lhs = partial_trace(mix, Subsystem::Spin).matrix();
  const Matrix rhs = 0.3 * partial_trace(r1, Subsystem::Spin).matrix() +
                     0.7 * partial_trace(r2, Subsystem::Spin).matrix();
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);

  CHECK_THROWS_AS(partial_trace(mix, Subsystem::PathSpin),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(r1, Subsystem::PathSpin),
                  std::invalid_argument);
  const DensityOperator small(Matrix::Identity(2, 2) / 2.0, Subsystem::Path);
  CHECK_THROWS_AS(partial_trace(small, Subsystem::Path),
                  std::invalid_argument);
}

TEST_CASE("hermitian eigendecomposition: order, residuals, orthonormality") {
  SplitMix64 g(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Matrix m = random_hermitian(g, 4);
    const Eigensystem es = eig_hermitian(m);
    for (int i = 0; i + 1 < 4; ++i) {
      CHECK(es.values(i) >= es.values(i + 1));
    }
    CHECK(max_abs_diff(es.vectors.adjoint() * es.vectors,
                       Matrix::Identity(4, 4)) < 1e-10);
    for (int i = 0; i < 4; ++i) {
      const Eigen::VectorXcd residual =
          m * es.vectors.col(i) - es.values(i) * es.vectors.col(i);
      CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("hermitian eigendecomposition of known matrices") {
  const Eigensystem ey = eig_hermitian(pauli_y());
  CHECK(ey.values(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ey.values(1) == doctest::Approx(-1.0).epsilon(1e-12));

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.07;
  diag(1, 1) = 0.93;
  const Eigensystem ed = eig_hermitian(diag);
  CHECK(ed.values(0) == doctest::Approx(0.93).epsilon(1e-14));
  CHECK(ed.values(1) == doctest::Approx(0.07).epsilon(1e-14));

  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(skew), std::invalid_argument);
  CHECK_THROWS_AS(eig_hermitian(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("sqrt_psd squares back to the input") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 1.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 2.0;
  expected(1, 1) = 1.0;
  CHECK(max_abs_diff(sqrt_psd(diag), expected) < 1e-12);

  SplitMix64 g(19);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix m(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        m(r, c) = Complex(g.uniform01() - 0.5, g.uniform01() - 0.5);
      }
    }
    const Matrix psd = m * m.adjoint();
    const Matrix root = sqrt_psd(psd);
    CHECK(max_abs_diff(root, root.adjoint()) < 1e-12);
    CHECK(max_abs_diff(root * root, psd) < 1e-9);
  }
}

TEST_CASE("sqrt_psd of a projector is the projector") {
  const Eigen::Vector2cd s = bloch_state(1.1, 0.3);
  const Matrix p = s * s.adjoint();
  CHECK(max_abs_diff(sqrt_psd(p), p) < 1e-12);
}

TEST_CASE("sqrt_psd rejects indefinite input") {
  Matrix indefinite = Matrix::Zero(2, 2);
  indefinite(0, 0) = 1.0;
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_AS(sqrt_psd(indefinite), std::invalid_argument);
}

TEST_CASE("entropy of standard states") {
  const DensityOperator mixed(Matrix::Identity(2, 2) / 2.0, Subsystem::Spin);
  CHECK(vn_entropy(mixed) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix pure = Matrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(vn_entropy(DensityOperator(pure, Subsystem::Spin)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  Matrix polarized = Matrix::Zero(2, 2);
  polarized(0, 0) = 0.93;
  polarized(1, 1) = 0.07;
  CHECK(vn_entropy(DensityOperator(polarized, Subsystem::Spin)) ==
        doctest::Approx(0.36592365090022316).epsilon(1e-10));
}

TEST_CASE("entropy is invariant under unitary conjugation") {
  SplitMix64 g(23);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityOperator rho = random_density(g, 4);
    const Matrix u = kron(random_unitary_2x2(g), random_unitary_2x2(g));
    const DensityOperator rotated(u * rho.matrix() * u.adjoint(),
                                  Subsystem::PathSpin);
    CHECK(std::abs(vn_entropy(rho) - vn_entropy(rotated)) < 1e-9);
  }
}

TEST_CASE("binary entropy endpoints and symmetry") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.93) ==
        doctest::Approx(0.36592365090022316).epsilon(1e-12));
  CHECK(binary_entropy(0.2) == doctest::Approx(binary_entropy(0.8)));
}

TEST_CASE("bloch_state covers the named spin directions") {
  const double pi = std::numbers::pi;
  CHECK(max_abs_diff(bloch_state(0, 0), (Eigen::Vector2cd() << 1, 0).finished()) == 0.0);
  const Eigen::Vector2cd down = bloch_state(pi, 0);
  CHECK(std::abs(down(0)) < 1e-15);
  CHECK(std::abs(down(1) - Complex(1, 0)) < 1e-15);
  const Eigen::Vector2cd xplus = bloch_state(pi / 2, 0);
  CHECK(std::abs(xplus(0) - Complex(std::sqrt(0.5), 0)) < 1e-12);
  CHECK(std::abs(xplus(1) - Complex(std::sqrt(0.5), 0)) < 1e-12);
}
