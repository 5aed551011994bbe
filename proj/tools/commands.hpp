#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>

#include "niqsim/circuit.hpp"
#include "niqsim/intensities.hpp"

namespace niqsim::cli {

struct Range {
  double start = 0.0;
  double stop = 2.0 * std::numbers::pi;
  int steps = 101;  // >= 2
};

struct SurfaceOptions {
  Range alpha{};
  Range sigma{};
  double phi = 0.0;
  double epsilon = 1.0;
  bool include_uniform = true;  // append fully dephased rows
  std::string out = "surface.csv";
};

/// Correlation measures of the output state over an (alpha, sigma) grid,
/// written as CSV with columns alpha,sigma,eof,discord,concurrence,
/// mutual_info. The appended uniform-noise rows carry the literal
/// `uniform` in the sigma column.
void run_surface(const SurfaceOptions& opt, std::ostream& status);

struct ContrastOptions {
  enum class Kind { Path, Spin };

  Kind kind = Kind::Path;  // Path sweeps phi; Spin sweeps alpha
  SpinFilter filter = SpinFilter::none();
  double alpha = 0.0;  // fixed parameter for the Path sweep
  double phi = 0.0;    // fixed parameter for the Spin sweep
  double epsilon = 1.0;
  NoiseModel noise = NoiseModel::none();
  int steps = 512;
  bool conditional = false;  // plot renormalized filtered intensity
  bool degrees = false;      // display only; files stay in radians
  std::string out = "contrast.csv";
};

/// Intensity sweep over [0, 2 pi) as CSV (sweep_param,intensity,
/// intensity_filtered) plus summary comments with numeric and
/// closed-form contrasts and the extremizer locations. The numeric
/// contrast always refers to the joint (unrenormalized) intensity.
void run_contrast(const ContrastOptions& opt, std::ostream& status);

struct FitOptions {
  std::optional<double> contrast;
  double err = 0.0;
  std::string in;   // batch mode: CSV with label,contrast,contrast_err
  std::string out;  // batch mode output
};

void run_fit(const FitOptions& opt, std::ostream& status);

struct PredictOptions {
  double epsilon = 1.0;
  SpinFilter::Mode filter = SpinFilter::Mode::ZDown;  // ZUp or ZDown
};

/// Strong-noise contrast prediction printed to stdout.
void run_predict(const PredictOptions& opt, std::ostream& status);

}  // namespace niqsim::cli
