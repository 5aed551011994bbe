#include "niqsim/fitting.hpp"

#include <cmath>

#include "doctest.h"
#include "niqsim/circuit.hpp"

using namespace niqsim;

TEST_CASE("sigma recovery from the three measured contrasts") {
  const FitResult n1 = fit_sigma(0.825, 0.013);
  CHECK(n1.sigma == doctest::Approx(0.6202771842450053).epsilon(1e-12));
  CHECK(n1.sigma_err == doctest::Approx(0.025404087330337177).epsilon(1e-12));

  const FitResult n2 = fit_sigma(0.23, 0.015);
  CHECK(n2.sigma == doctest::Approx(1.7144538314337552).epsilon(1e-12));
  CHECK(n2.sigma_err == doctest::Approx(0.0380397477660907).epsilon(1e-12));

  const FitResult n3 = fit_sigma(0.02, 0.017);
  CHECK(n3.sigma == doctest::Approx(2.797149622536537).epsilon(1e-12));
  CHECK(n3.sigma_err == doctest::Approx(0.3038807767563021).epsilon(1e-12));
}

TEST_CASE("fit inverts the dephasing law") {
  for (double sigma = 0.1; sigma <= 3.0; sigma += 0.29) {
    const double contrast = NoiseModel::gaussian(sigma).coherence_factor();
    CHECK(fit_sigma(contrast, 0.01).sigma ==
          doctest::Approx(sigma).epsilon(1e-9));
  }
}

TEST_CASE("perfect contrast pins sigma at zero with undefined error") {
  const FitResult r = fit_sigma(1.0, 0.01);
  CHECK(r.sigma == 0.0);
  CHECK(std::isnan(r.sigma_err));
}

TEST_CASE("fit rejects unusable inputs") {
  CHECK_THROWS_AS(fit_sigma(0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(fit_sigma(-0.2, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(fit_sigma(1.2, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(fit_sigma(0.5, -0.01), std::invalid_argument);
}
