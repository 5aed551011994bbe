#include "niqsim/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "niqsim/rng.hpp"

namespace niqsim {

NoiseModel NoiseModel::none() { return {Kind::None, 0.0}; }

NoiseModel NoiseModel::gaussian(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw std::invalid_argument("gaussian noise needs a finite sigma >= 0");
  }
  return {Kind::Gaussian, sigma};
}

NoiseModel NoiseModel::uniform() { return {Kind::Uniform, 0.0}; }

double NoiseModel::coherence_factor() const {
  switch (kind) {
    case Kind::None:
      return 1.0;
    case Kind::Gaussian:
      return std::exp(-0.5 * sigma * sigma);
    case Kind::Uniform:
      return 0.0;
  }
  throw std::invalid_argument("unknown noise kind");
}

void CircuitParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(phi)) {
    throw std::invalid_argument("alpha and phi must be finite");
  }
  if (!(epsilon >= -1.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [-1, 1]");
  }
  if (noise.kind == NoiseModel::Kind::Gaussian &&
      (!std::isfinite(noise.sigma) || noise.sigma < 0.0)) {
    throw std::invalid_argument("gaussian noise needs a finite sigma >= 0");
  }
}

DensityOperator input_state(double epsilon) {
  if (!(epsilon >= -1.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [-1, 1]");
  }
  Matrix spin = Matrix::Zero(2, 2);
  spin(0, 0) = (1.0 + epsilon) / 2.0;
  spin(1, 1) = (1.0 - epsilon) / 2.0;
  Matrix path0 = Matrix::Zero(2, 2);
  path0(0, 0) = 1.0;
  return DensityOperator(kron(path0, spin), Subsystem::PathSpin);
}

Matrix hadamard_path() { return kron(hadamard(), Matrix::Identity(2, 2)); }

Matrix bitflip_path() { return kron(pauli_x(), Matrix::Identity(2, 2)); }

Matrix controlled_rx(double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite");
  }
  const double c = std::cos(alpha / 2.0);
  const double s = std::sin(alpha / 2.0);
  Matrix out = Matrix::Zero(4, 4);
  out(0, 0) = Complex(c, 0);
  out(0, 1) = Complex(0, s);
  out(1, 0) = Complex(0, s);
  out(1, 1) = Complex(c, 0);
  out(2, 2) = 1.0;
  out(3, 3) = 1.0;
  return out;
}

Matrix phase_flag(double phi) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("phi must be finite");
  }
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = std::exp(Complex(0, -phi / 2.0));
  p(1, 1) = std::exp(Complex(0, +phi / 2.0));
  return kron(p, Matrix::Identity(2, 2));
}

DensityOperator dephase_path(const DensityOperator& rho, double phi,
                             const NoiseModel& noise) {
  if (rho.label() != Subsystem::PathSpin) {
    throw std::invalid_argument("dephase_path expects the joint state");
  }
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("phi must be finite");
  }
  const double k = noise.coherence_factor();
  const Complex f = k * std::exp(Complex(0, -phi));
  Matrix m = rho.matrix();
  m.block<2, 2>(0, 2) *= f;
  m.block<2, 2>(2, 0) *= std::conj(f);
  return DensityOperator(std::move(m), Subsystem::PathSpin);
}

namespace {

// State after blade 1, spin rotation and blade 2, before the phase flag.
Eigen::Matrix4cd pre_flag_state(const CircuitParams& p) {
  const Eigen::Matrix4cd h = hadamard_path();
  const Eigen::Matrix4cd u = controlled_rx(p.alpha);
  const Eigen::Matrix4cd x = bitflip_path();
  const Eigen::Matrix4cd rho_in = input_state(p.epsilon).matrix();
  Eigen::Matrix4cd m = h * rho_in * h.adjoint();
  m = u * m * u.adjoint();
  m = x * m * x.adjoint();
  return m;
}

// Dephase the path blocks in place, then apply the final blade.
Eigen::Matrix4cd finish(const Eigen::Matrix4cd& pre, double phi, double k,
                        const Eigen::Matrix4cd& h) {
  const Complex f = k * std::exp(Complex(0, -phi));
  Eigen::Matrix4cd m = pre;
  m.block<2, 2>(0, 2) *= f;
  m.block<2, 2>(2, 0) *= std::conj(f);
  return h * m * h.adjoint();
}

double draw_phase(const NoiseModel& noise, SplitMix64& g) {
  switch (noise.kind) {
    case NoiseModel::Kind::Gaussian:
      return noise.sigma * g.gaussian();
    case NoiseModel::Kind::Uniform:
      return 2.0 * std::numbers::pi * g.uniform01();
    case NoiseModel::Kind::None:
      break;
  }
  throw std::invalid_argument("sampling needs a noise model");
}

}  // namespace

DensityOperator output_state(const CircuitParams& params) {
  params.validate();
  const Eigen::Matrix4cd h = hadamard_path();
  Eigen::Matrix4cd m = finish(pre_flag_state(params), params.phi,
                              params.noise.coherence_factor(), h);
  return DensityOperator(m, Subsystem::PathSpin);
}

SampleStats sample_output_stats(const CircuitParams& params,
                                std::uint64_t seed, std::size_t n_samples) {
  params.validate();
  if (n_samples < 1) {
    throw std::invalid_argument("n_samples must be at least 1");
  }
  if (params.noise.kind == NoiseModel::Kind::None) {
    throw std::invalid_argument(
        "sampling needs a noise model; use output_state when noiseless");
  }

  const Eigen::Matrix4cd h = hadamard_path();
  const Eigen::Matrix4cd pre = pre_flag_state(params);

  // Kahan-compensated sums keep the degenerate sigma=0 case equal to the
  // analytic state up to a couple of ulps regardless of n.
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
  Eigen::Matrix4d sum_re2 = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d sum_im2 = Eigen::Matrix4d::Zero();

  for (std::size_t i = 0; i < n_samples; ++i) {
    SplitMix64 g = shot_stream(seed, i);
    const double phase = draw_phase(params.noise, g);
    const Eigen::Matrix4cd m = finish(pre, params.phi + phase, 1.0, h);
    const Eigen::Matrix4cd y = m - comp;
    const Eigen::Matrix4cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    sum_re2 += m.real().cwiseProduct(m.real());
    sum_im2 += m.imag().cwiseProduct(m.imag());
  }

  const double n = static_cast<double>(n_samples);
  SampleStats stats;
  stats.mean = sum / n;
  stats.n_samples = n_samples;
  stats.stderr_real = Eigen::MatrixXd::Zero(4, 4);
  stats.stderr_imag = Eigen::MatrixXd::Zero(4, 4);
  if (n_samples > 1) {
    const Eigen::Matrix4d mean_re = stats.mean.real();
    const Eigen::Matrix4d mean_im = stats.mean.imag();
    const Eigen::Matrix4d var_re =
        (sum_re2 - n * mean_re.cwiseProduct(mean_re)) / (n - 1.0);
    const Eigen::Matrix4d var_im =
        (sum_im2 - n * mean_im.cwiseProduct(mean_im)) / (n - 1.0);
    stats.stderr_real = (var_re.cwiseMax(0.0) / n).cwiseSqrt();
    stats.stderr_imag = (var_im.cwiseMax(0.0) / n).cwiseSqrt();
  }
  return stats;
}

DensityOperator sample_output(const CircuitParams& params, std::uint64_t seed,
                              std::size_t n_samples) {
  return DensityOperator(
      sample_output_stats(params, seed, n_samples).mean, Subsystem::PathSpin);
}

}  // namespace niqsim
