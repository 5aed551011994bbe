#include "niqsim/intensities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace niqsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanPoints = 2048;
constexpr double kParamTol = 1e-9;
constexpr double kDegenerate = 1e-12;

// Golden-section maximum of f on [a, b]; assumes a single maximum in the
// bracket (the scan grid is fine enough for the smooth intensities here).
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > kParamTol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // the extremum may sit exactly on a bracket endpoint
  double x = 0.5 * (a + b), fx = f(x);
  for (const double cand : {a, b}) {
    const double fcand = f(cand);
    if (fcand > fx) {
      x = cand;
      fx = fcand;
    }
  }
  return {x, fx};
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_epsilon01(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument(
        "filtered contrast formulas assume epsilon in [0, 1]");
  }
}

}  // namespace

SpinFilter SpinFilter::none() { return {Mode::None, 0.0, 0.0}; }
SpinFilter SpinFilter::z_up() { return {Mode::ZUp, 0.0, 0.0}; }
SpinFilter SpinFilter::z_down() { return {Mode::ZDown, kPi, 0.0}; }
SpinFilter SpinFilter::x_up() { return {Mode::XUp, kPi / 2.0, 0.0}; }
SpinFilter SpinFilter::x_down() { return {Mode::XDown, 3.0 * kPi / 2.0, 0.0}; }

SpinFilter SpinFilter::general(double theta, double varphi) {
  if (!std::isfinite(theta) || !std::isfinite(varphi)) {
    throw std::invalid_argument("filter angles must be finite");
  }
  return {Mode::General, theta, varphi};
}

Eigen::Matrix2cd SpinFilter::projector() const {
  if (mode == Mode::None) return Eigen::Matrix2cd::Identity();
  const Eigen::Vector2cd s = bloch_state(theta, varphi);
  return s * s.adjoint();
}

double d0_ideal(double phi, double alpha) {
  return 0.5 * (1.0 + std::cos(alpha / 2.0) * std::cos(phi));
}

double d1_ideal(double phi, double alpha) {
  return 1.0 - d0_ideal(phi, alpha);
}

double d0_noisy(double phi, double alpha, const NoiseModel& noise) {
  return 0.5 *
         (1.0 +
          noise.coherence_factor() * std::cos(alpha / 2.0) * std::cos(phi));
}

namespace {

// tr((|beam><beam| (x) P) rho) = tr(P B) with B the spin block of rho at
// path indices (beam, beam).
double joint_probability(const CircuitParams& params, const SpinFilter& filter,
                         int beam) {
  const Matrix rho = output_state(params).matrix();
  const Eigen::Matrix2cd p = filter.projector();
  const Eigen::Matrix2cd block = rho.block<2, 2>(2 * beam, 2 * beam);
  return (p * block).trace().real();
}

}  // namespace

double d0_filtered(const CircuitParams& params, const SpinFilter& filter) {
  return joint_probability(params, filter, 0);
}

double d1_filtered(const CircuitParams& params, const SpinFilter& filter) {
  return joint_probability(params, filter, 1);
}

double d0_filtered_conditional(const CircuitParams& params,
                               const SpinFilter& filter) {
  const Matrix rho = output_state(params).matrix();
  const Eigen::Matrix2cd p = filter.projector();
  const Eigen::Matrix2cd spin_blocks =
      rho.block<2, 2>(0, 0) + rho.block<2, 2>(2, 2);
  const double pass = (p * spin_blocks).trace().real();
  if (pass <= kDegenerate) {
    throw std::domain_error("filter pass probability is zero");
  }
  return (p * rho.block<2, 2>(0, 0)).trace().real() / pass;
}

double d0_filtered_closed_form(const CircuitParams& params,
                               const SpinFilter& filter) {
  params.validate();
  const double k = params.noise.coherence_factor();
  const double c = std::cos(params.alpha / 2.0);
  const double eps = params.epsilon;
  const double cos_phi = std::cos(params.phi);
  switch (filter.mode) {
    case SpinFilter::Mode::None:
      return d0_noisy(params.phi, params.alpha, params.noise);
    case SpinFilter::Mode::ZUp:
      return 0.25 * (1.0 + eps * c * c) + 0.25 * (1.0 + eps) * k * c * cos_phi;
    case SpinFilter::Mode::ZDown:
      return 0.25 * (1.0 - eps * c * c) + 0.25 * (1.0 - eps) * k * c * cos_phi;
    case SpinFilter::Mode::XUp:
      return 0.25 * (1.0 + k * std::cos(params.alpha / 2.0 + params.phi));
    case SpinFilter::Mode::XDown:
      return 0.25 * (1.0 + k * std::cos(params.alpha / 2.0 - params.phi));
    case SpinFilter::Mode::General:
      break;
  }
  throw std::invalid_argument(
      "no closed form for a general filter; use d0_filtered");
}

ContrastResult contrast_numeric(
    const std::function<double(double)>& intensity) {
  const double step = 2.0 * kPi / kScanPoints;
  double fmax = -std::numeric_limits<double>::infinity();
  double fmin = std::numeric_limits<double>::infinity();
  int imax = 0, imin = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    const double v = intensity(i * step);
    if (v > fmax) {
      fmax = v;
      imax = i;
    }
    if (v < fmin) {
      fmin = v;
      imin = i;
    }
  }

  const auto bracket = [&](int i) {
    return std::pair<double, double>{std::max(0.0, (i - 1) * step),
                                     std::min(2.0 * kPi, (i + 1) * step)};
  };
  const auto [lo_max, hi_max] = bracket(imax);
  const auto [xmax, vmax] = golden_max(intensity, lo_max, hi_max);
  const auto negated = [&](double x) { return -intensity(x); };
  const auto [lo_min, hi_min] = bracket(imin);
  const auto [xmin, negmin] = golden_max(negated, lo_min, hi_min);
  const double vmin = -negmin;

  if (vmax + vmin <= kDegenerate) {
    throw UndefinedContrastError(
        "intensity vanishes over the whole sweep; contrast is 0/0");
  }
  ContrastResult out;
  out.value = clamp01((vmax - vmin) / (vmax + vmin));
  out.argmax = xmax;
  out.argmin = xmin;
  out.method = ContrastResult::Method::Numeric;
  return out;
}

double path_contrast(double alpha, const NoiseModel& noise) {
  return noise.coherence_factor() * std::abs(std::cos(alpha / 2.0));
}

double spin_contrast(double phi, const NoiseModel& noise) {
  return noise.coherence_factor() * std::abs(std::cos(phi));
}

double xfiltered_contrast(const NoiseModel& noise) {
  return noise.coherence_factor();
}

double path_contrast_zup(double alpha, const NoiseModel& noise,
                         double epsilon) {
  require_epsilon01(epsilon);
  const double c = std::cos(alpha / 2.0);
  return (1.0 + epsilon) * noise.coherence_factor() * std::abs(c) /
         (1.0 + epsilon * c * c);
}

double path_contrast_zdown(double alpha, const NoiseModel& noise,
                           double epsilon) {
  require_epsilon01(epsilon);
  const double c = std::cos(alpha / 2.0);
  const double denom = 1.0 - epsilon * c * c;
  if (denom < 1e-15) {
    // full up polarization with the spin left unrotated: the z-down
    // filtered beam is dark and its contrast undefined
    throw UndefinedContrastError(
        "z-down filtered intensity vanishes identically");
  }
  return (1.0 - epsilon) * noise.coherence_factor() * std::abs(c) / denom;
}

double spin_contrast_zup(double phi, const NoiseModel& noise,
                         double epsilon) {
  require_epsilon01(epsilon);
  const double cs = spin_contrast(phi, noise);
  // Interior extremum of the quadratic in cos(alpha/2) exists only when
  // (1 + eps) cs <= 2 eps; otherwise the sweep endpoints dominate and the
  // filter does not change the contrast.
  if (epsilon == 0.0 || (1.0 + epsilon) * cs > 2.0 * epsilon) return cs;
  const double q = (1.0 + epsilon) * (1.0 + epsilon) / (4.0 * epsilon);
  return (epsilon + (1.0 + epsilon) * cs + q * cs * cs) /
         (2.0 + epsilon + (1.0 + epsilon) * cs - q * cs * cs);
}

double spin_contrast_zdown(double phi, const NoiseModel& noise,
                           double epsilon) {
  require_epsilon01(epsilon);
  if (epsilon < 1.0 / 3.0) {
    throw OutOfValidityError(
        "spin_contrast_zdown holds for epsilon in [1/3, 1]; use "
        "contrast_numeric below that");
  }
  const double cs = spin_contrast(phi, noise);
  const double q = (1.0 - epsilon) * (1.0 - epsilon) / (4.0 * epsilon);
  return (epsilon + (1.0 - epsilon) * cs + q * cs * cs) /
         (2.0 - epsilon - (1.0 - epsilon) * cs + q * cs * cs);
}

double strong_noise_spin_contrast_zup(double epsilon) {
  require_epsilon01(epsilon);
  return epsilon / (2.0 + epsilon);
}

double strong_noise_spin_contrast_zdown(double epsilon) {
  require_epsilon01(epsilon);
  return epsilon / (2.0 - epsilon);
}

}  // namespace niqsim
