#include "niqsim/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace niqsim {

FitResult fit_sigma(double contrast, double contrast_err) {
  if (!std::isfinite(contrast) || contrast <= 0.0 || contrast > 1.0) {
    throw std::invalid_argument("contrast must lie in (0, 1]");
  }
  if (!std::isfinite(contrast_err) || contrast_err < 0.0) {
    throw std::invalid_argument("contrast_err must be >= 0");
  }
  FitResult out;
  out.contrast = contrast;
  out.contrast_err = contrast_err;
  if (contrast == 1.0) {
    out.sigma = 0.0;
    out.sigma_err = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.sigma = std::sqrt(-2.0 * std::log(contrast));
  out.sigma_err = contrast_err / (contrast * out.sigma);
  return out;
}

}  // namespace niqsim
