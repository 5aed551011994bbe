#pragma once

// Two-qubit circuit model of a three-blade interferometer: path qubit
// (beam 0/1) tensor spin qubit. Blades act as path Hadamards, the spin
// flipper in beam 0 is a controlled Rx, and the phase flag plus its
// fluctuations dephase the path coherence.

#include <cstddef>
#include <cstdint>

#include "niqsim/qmath.hpp"

namespace niqsim {

struct NoiseModel {
  enum class Kind { None, Gaussian, Uniform };

  Kind kind = Kind::None;
  double sigma = 0.0;  // std deviation of the random phase, radians (Gaussian)

  static NoiseModel none();
  static NoiseModel gaussian(double sigma);
  static NoiseModel uniform();  // phase uniform over a full period

  /// |E[e^{i phi_r}]|: 1 without noise, e^{-sigma^2/2} Gaussian, 0 uniform.
  double coherence_factor() const;
};

struct CircuitParams {
  double alpha = 0.0;    // spin rotation in beam 0, radians
  double phi = 0.0;      // phase flag, radians
  double epsilon = 1.0;  // incoming spin polarization, in [-1, 1]
  NoiseModel noise{};

  void validate() const;  // throws std::invalid_argument
};

/// |0><0|_path (x) diag((1+eps)/2, (1-eps)/2)_spin.
DensityOperator input_state(double epsilon);

// Gates, as 4x4 unitaries on path (x) spin.
Matrix hadamard_path();
Matrix bitflip_path();
/// |0><0| (x) Rx(alpha) + |1><1| (x) I, with Rx(a) = cos(a/2) I + i sin(a/2) X.
Matrix controlled_rx(double alpha);
/// diag(e^{-i phi/2}, e^{+i phi/2}) on the path, identity on the spin.
Matrix phase_flag(double phi);

/// Apply the phase flag and average over its fluctuations in one step:
/// the |0><1| path block is scaled by k e^{-i phi}, the |1><0| block by
/// k e^{+i phi}, with k the coherence factor. Exact for both noise kinds.
DensityOperator dephase_path(const DensityOperator& rho, double phi,
                             const NoiseModel& noise);

/// Full pipeline: blade H, controlled Rx, blade X, dephased phase flag,
/// final blade H, applied to input_state(epsilon).
DensityOperator output_state(const CircuitParams& params);

struct SampleStats {
  Matrix mean;                   // average of the per-shot output states
  Eigen::MatrixXd stderr_real;   // standard error of the mean, per entry
  Eigen::MatrixXd stderr_imag;
  std::size_t n_samples = 0;
};

/// Monte Carlo version of the dephasing average: each shot draws a phase
/// from the noise model and runs the noiseless circuit at phi + draw.
/// Shot i uses a stream derived from (seed, i); see shot_stream.
DensityOperator sample_output(const CircuitParams& params, std::uint64_t seed,
                              std::size_t n_samples);

/// Same, but also reports per-entry standard errors of the mean.
SampleStats sample_output_stats(const CircuitParams& params,
                                std::uint64_t seed, std::size_t n_samples);

}  // namespace niqsim
