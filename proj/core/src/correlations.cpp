#include "niqsim/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace niqsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Conditional-entropy objective over PVM angles, precomputed from the
// joint state so the grid scan touches nothing but 2x2 quadratic forms.
struct CondEntropyObjective {
  Eigen::Matrix2cd b00, b01, b10, b11;  // spin blocks by path indices
  Eigen::Matrix2cd rho_path;

  explicit CondEntropyObjective(const Matrix& rho4) {
    b00 = rho4.block<2, 2>(0, 0);
    b01 = rho4.block<2, 2>(0, 2);
    b10 = rho4.block<2, 2>(2, 0);
    b11 = rho4.block<2, 2>(2, 2);
    rho_path(0, 0) = b00.trace();
    rho_path(0, 1) = b01.trace();
    rho_path(1, 0) = b10.trace();
    rho_path(1, 1) = b11.trace();
  }

  // p * S(t/p) for an unnormalized 2x2 Hermitian block t with trace p.
  static double weighted_entropy(const Eigen::Matrix2cd& t) {
    const double p = t(0, 0).real() + t(1, 1).real();
    if (p <= kZeroEigenvalue) return 0.0;
    const double half_gap = 0.5 * (t(0, 0).real() - t(1, 1).real());
    const double d =
        std::sqrt(half_gap * half_gap + std::norm(t(0, 1)));
    double s = 0.0;
    for (const double lam : {0.5 * p + d, 0.5 * p - d}) {
      const double mu = lam / p;
      if (mu > kZeroEigenvalue) s -= mu * std::log2(mu);
    }
    return p * s;
  }

  double operator()(double theta, double varphi) const {
    const Eigen::Vector2cd s = bloch_state(theta, varphi);
    // Unnormalized path state given outcome |s>: entries <s| B_ab |s>.
    Eigen::Matrix2cd t0;
    t0(0, 0) = s.dot(b00 * s);
    t0(0, 1) = s.dot(b01 * s);
    t0(1, 0) = s.dot(b10 * s);
    t0(1, 1) = s.dot(b11 * s);
    const Eigen::Matrix2cd t1 = rho_path - t0;  // complement outcome
    return weighted_entropy(t0) + weighted_entropy(t1);
  }
};

// Nelder-Mead on (theta, varphi), unconstrained (the objective is
// periodic). Stops when the simplex diameter drops below tol.
template <typename F>
void nelder_mead(const F& f, double& x, double& y, double& fx,
                 double step_x, double step_y, double tol, int max_iter) {
  struct Vertex {
    double x, y, f;
  };
  std::array<Vertex, 3> v{{{x, y, f(x, y)},
                           {x + step_x, y, f(x + step_x, y)},
                           {x, y + step_y, f(x, y + step_y)}}};
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::sort(v.begin(), v.end(), by_value);

  for (int it = 0; it < max_iter; ++it) {
    double diam = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        diam = std::max(diam, std::hypot(v[i].x - v[j].x, v[i].y - v[j].y));
      }
    }
    if (diam < tol) break;

    const double cx = 0.5 * (v[0].x + v[1].x);
    const double cy = 0.5 * (v[0].y + v[1].y);
    auto eval = [&](double px, double py) { return Vertex{px, py, f(px, py)}; };

    Vertex r = eval(cx + (cx - v[2].x), cy + (cy - v[2].y));
    if (r.f < v[0].f) {
      Vertex e = eval(cx + 2.0 * (cx - v[2].x), cy + 2.0 * (cy - v[2].y));
      v[2] = e.f < r.f ? e : r;
    } else if (r.f < v[1].f) {
      v[2] = r;
    } else {
      const Vertex& base = r.f < v[2].f ? r : v[2];
      Vertex c = eval(cx + 0.5 * (base.x - cx), cy + 0.5 * (base.y - cy));
      if (c.f < base.f) {
        v[2] = c;
      } else {
        for (int i = 1; i < 3; ++i) {
          v[i] = eval(v[0].x + 0.5 * (v[i].x - v[0].x),
                      v[0].y + 0.5 * (v[i].y - v[0].y));
        }
      }
    }
    std::sort(v.begin(), v.end(), by_value);
  }
  x = v[0].x;
  y = v[0].y;
  fx = v[0].f;
}

// Map arbitrary Bloch angles to the canonical ranges without changing
// the projector pair: P(2pi - t, p) = P(t, p + pi).
void normalize_angles(double& theta, double& varphi) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    varphi += kPi;
  }
  varphi = std::fmod(varphi, 2.0 * kPi);
  if (varphi < 0.0) varphi += 2.0 * kPi;
}

void require_joint(const DensityOperator& rho, const char* who) {
  if (rho.label() != Subsystem::PathSpin) {
    throw std::invalid_argument(std::string(who) +
                                " expects the joint state");
  }
}

}  // namespace

SpinPVM SpinPVM::from_angles(double theta, double varphi) {
  SpinPVM pvm;
  pvm.theta = theta;
  pvm.varphi = varphi;
  const Eigen::Vector2cd s = bloch_state(theta, varphi);
  pvm.p0 = s * s.adjoint();
  pvm.p1 = Eigen::Matrix2cd::Identity() - pvm.p0;
  return pvm;
}

double mutual_information(const DensityOperator& rho) {
  require_joint(rho, "mutual_information");
  return vn_entropy(partial_trace(rho, Subsystem::Path)) +
         vn_entropy(partial_trace(rho, Subsystem::Spin)) - vn_entropy(rho);
}

Conditional conditional_state(const DensityOperator& rho,
                              const Eigen::Matrix2cd& effect) {
  require_joint(rho, "conditional_state");
  if ((effect - effect.adjoint()).cwiseAbs().maxCoeff() > kHermitianInputTol) {
    throw std::invalid_argument("effect must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(effect,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol ||
      es.eigenvalues().maxCoeff() > 1.0 + kPsdTol) {
    throw std::invalid_argument("effect must satisfy 0 <= E <= I");
  }

  const Matrix& m = rho.matrix();
  Matrix t(2, 2);
  for (Eigen::Index a = 0; a < 2; ++a) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      // tr(E B_ac) with B_ac the spin block at path indices (a, c)
      t(a, c) = (effect * m.block<2, 2>(2 * a, 2 * c)).trace();
    }
  }
  const double p = (t(0, 0) + t(1, 1)).real();
  if (p <= kZeroEigenvalue) {
    return {std::max(p, 0.0), std::nullopt};
  }
  Matrix normalized = t / p;
  normalized = (normalized + normalized.adjoint()) / 2.0;
  return {p, DensityOperator(std::move(normalized), Subsystem::Path)};
}

double conditional_entropy(const DensityOperator& rho, const SpinPVM& pvm) {
  require_joint(rho, "conditional_entropy");
  return CondEntropyObjective(rho.matrix())(pvm.theta, pvm.varphi);
}

DiscordResult discord_A_given_B(const DensityOperator& rho) {
  require_joint(rho, "discord_A_given_B");
  const CondEntropyObjective objective(rho.matrix());

  constexpr int kThetaPoints = 64;
  constexpr int kPhiPoints = 128;
  const double theta_step = (0.5 * kPi) / kThetaPoints;
  const double phi_step = (2.0 * kPi) / kPhiPoints;

  double best_f = std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_p = 0.0;
  for (int i = 0; i < kThetaPoints; ++i) {
    const double theta = (i + 0.5) * theta_step;  // midpoints avoid the pole
    for (int j = 0; j < kPhiPoints; ++j) {
      const double varphi = j * phi_step;
      const double f = objective(theta, varphi);
      if (f < best_f) {  // strict: first minimum wins, theta then varphi
        best_f = f;
        best_t = theta;
        best_p = varphi;
      }
    }
  }

  nelder_mead(objective, best_t, best_p, best_f, theta_step, phi_step, 1e-6,
              400);
  normalize_angles(best_t, best_p);

  const double s_b = vn_entropy(partial_trace(rho, Subsystem::Spin));
  const double s_ab = vn_entropy(rho);
  double d = best_f + s_b - s_ab;
  if (d < 0.0 && d > -1e-9) d = 0.0;
  return {d, SpinPVM::from_angles(best_t, best_p)};
}

double concurrence(const DensityOperator& rho) {
  require_joint(rho, "concurrence");
  static const Matrix yy = kron(pauli_y(), pauli_y());
  const Matrix& m = rho.matrix();
  const Matrix r = sqrt_psd(m);
  const Matrix flipped = yy * m.conjugate() * yy;
  Matrix core = r * flipped * r;
  core = (core + core.adjoint()) / 2.0;
  const Eigensystem es = eig_hermitian(sqrt_psd(core));
  const double c =
      es.values(0) - es.values(1) - es.values(2) - es.values(3);
  return std::max(0.0, c);
}

double eof_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0 + 1e-12)) {
    throw std::invalid_argument("concurrence must lie in [0, 1]");
  }
  const double square = std::max(0.0, 1.0 - c * c);
  return binary_entropy(0.5 * (1.0 + std::sqrt(square)));
}

double eof(const DensityOperator& rho) {
  return eof_from_concurrence(concurrence(rho));
}

CorrelationReport analyze(const DensityOperator& rho) {
  CorrelationReport report;
  report.mutual_info = mutual_information(rho);
  const DiscordResult d = discord_A_given_B(rho);
  report.discord = d.value;
  report.classical_corr = report.mutual_info - d.value;
  report.optimal_pvm = d.optimal_pvm;
  report.concurrence = concurrence(rho);
  report.eof = eof_from_concurrence(report.concurrence);
  return report;
}

}  // namespace niqsim
