#pragma once

// Inversion of the Gaussian dephasing law C = e^{-sigma^2 / 2}: recover
// the phase-noise width from a measured contrast and propagate its error.

namespace niqsim {

struct FitResult {
  double contrast = 0.0;
  double contrast_err = 0.0;
  double sigma = 0.0;
  /// First-order propagated error dC / (C sigma); NaN when contrast = 1,
  /// where the inversion has no linear sensitivity.
  double sigma_err = 0.0;
};

/// sigma = sqrt(-2 ln contrast). Requires contrast in (0, 1] and
/// contrast_err >= 0; throws std::invalid_argument otherwise.
FitResult fit_sigma(double contrast, double contrast_err);

}  // namespace niqsim
