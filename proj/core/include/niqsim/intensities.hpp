#pragma once

// Detector intensities at the O beam (detector D0), spin-filtered
// variants, and interference contrasts (max - min)/(max + min), both as
// closed forms and by numeric extremization of the circuit model.

#include <functional>

#include "niqsim/circuit.hpp"
#include "niqsim/errors.hpp"

namespace niqsim {

/// Spin analyzer in front of the detector. The named modes are the Bloch
/// poles and equator points used throughout; General takes any direction.
struct SpinFilter {
  enum class Mode { None, ZUp, ZDown, XUp, XDown, General };

  Mode mode = Mode::None;
  double theta = 0.0;
  double varphi = 0.0;

  static SpinFilter none();
  static SpinFilter z_up();
  static SpinFilter z_down();
  static SpinFilter x_up();
  static SpinFilter x_down();
  static SpinFilter general(double theta, double varphi);

  /// Rank-one projector onto the analyzed spin state; identity for None.
  Eigen::Matrix2cd projector() const;
};

/// Noiseless unfiltered intensity (1 + cos(alpha/2) cos(phi)) / 2.
double d0_ideal(double phi, double alpha);
/// Complement, so d0 + d1 = 1 exactly.
double d1_ideal(double phi, double alpha);
/// Dephased intensity: the interference term picks up the coherence factor.
double d0_noisy(double phi, double alpha, const NoiseModel& noise);

/// Joint probability of landing in D0 AND passing the filter, computed
/// as a trace over the circuit output state. Ground truth for any filter.
double d0_filtered(const CircuitParams& params, const SpinFilter& filter);
/// Same for the H beam (detector D1); with both detectors and both filter
/// outcomes the four joint probabilities sum to 1.
double d1_filtered(const CircuitParams& params, const SpinFilter& filter);
/// Joint probability renormalized by the filter pass probability; handy
/// for plotting conditional fringes. Throws std::domain_error when the
/// filter never passes.
double d0_filtered_conditional(const CircuitParams& params,
                               const SpinFilter& filter);
/// Closed form for the named filters (identical to d0_filtered within
/// 1e-9); throws std::invalid_argument for General, which has none.
double d0_filtered_closed_form(const CircuitParams& params,
                               const SpinFilter& filter);

struct ContrastResult {
  enum class Method { ClosedForm, Numeric };

  double value = 0.0;   // in [0, 1]
  double argmax = 0.0;  // sweep parameter of the maximum, radians
  double argmin = 0.0;
  Method method = Method::Numeric;
};

/// Contrast of `intensity` swept over [0, 2 pi]: a 2048-point scan
/// followed by golden-section refinement of each extremum to 1e-9 in the
/// parameter (brackets clamped to the closed interval, so extrema at the
/// endpoints are attained). Throws UndefinedContrastError when max + min
/// vanishes.
ContrastResult contrast_numeric(const std::function<double(double)>& intensity);

// Closed-form contrasts. "Path" contrasts sweep the phase flag phi at
// fixed alpha; "spin" contrasts sweep alpha at fixed phi.
double path_contrast(double alpha, const NoiseModel& noise);
double spin_contrast(double phi, const NoiseModel& noise);
/// X-filtered contrast, path or spin sweep alike. The spin-sweep case
/// matches numeric extremization when phi = 0 (mod pi), where the swept
/// cosine argument covers a closed half-period.
double xfiltered_contrast(const NoiseModel& noise);
double path_contrast_zup(double alpha, const NoiseModel& noise,
                         double epsilon);
double path_contrast_zdown(double alpha, const NoiseModel& noise,
                           double epsilon);
/// Z-filtered spin contrasts. Piecewise: when the interior extremum of
/// the intensity (quadratic in cos(alpha/2)) leaves the physical range,
/// the endpoints dominate and the contrast reduces to the unfiltered
/// spin contrast.
double spin_contrast_zup(double phi, const NoiseModel& noise, double epsilon);
/// Valid for epsilon in [1/3, 1]; below that the needed extremum moves
/// outside the derivation's branch and OutOfValidityError is thrown
/// (use contrast_numeric there).
double spin_contrast_zdown(double phi, const NoiseModel& noise,
                           double epsilon);
/// Fully dephased limits of the Z-filtered spin contrasts:
/// eps/(2 + eps) for up, eps/(2 - eps) for down.
double strong_noise_spin_contrast_zup(double epsilon);
double strong_noise_spin_contrast_zdown(double epsilon);

}  // namespace niqsim
