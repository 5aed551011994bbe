#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "csv.hpp"
#include "niqsim/circuit.hpp"
#include "niqsim/errors.hpp"
#include "niqsim/intensities.hpp"
#include "niqsim/version.hpp"
#include "selfcheck.hpp"

namespace {

using namespace niqsim;
using namespace niqsim::cli;

SpinFilter filter_from_mode(SpinFilter::Mode mode) {
  switch (mode) {
    case SpinFilter::Mode::None:
      return SpinFilter::none();
    case SpinFilter::Mode::ZUp:
      return SpinFilter::z_up();
    case SpinFilter::Mode::ZDown:
      return SpinFilter::z_down();
    case SpinFilter::Mode::XUp:
      return SpinFilter::x_up();
    case SpinFilter::Mode::XDown:
      return SpinFilter::x_down();
    case SpinFilter::Mode::General:
      break;
  }
  throw std::invalid_argument("unsupported filter");
}

NoiseModel noise_from_flags(const std::string& kind, double sigma,
                            bool sigma_given) {
  if (kind == "none") {
    if (sigma_given && sigma != 0.0) {
      throw std::invalid_argument("--sigma has no effect with --noise none");
    }
    return NoiseModel::none();
  }
  if (kind == "uniform") {
    if (sigma_given) {
      throw std::invalid_argument(
          "--sigma has no effect with --noise uniform");
    }
    return NoiseModel::uniform();
  }
  return NoiseModel::gaussian(sigma);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "niqsim: a three-blade neutron interferometer with a spin rotator in "
      "one arm, simulated as a noisy path+spin two-qubit circuit"};
  app.set_version_flag("--version", std::string("niqsim ") + kVersion);
  app.require_subcommand(1);
  int rc = 0;

  const std::map<std::string, SpinFilter::Mode> filter_names{
      {"none", SpinFilter::Mode::None},
      {"z-up", SpinFilter::Mode::ZUp},
      {"z-down", SpinFilter::Mode::ZDown},
      {"x-up", SpinFilter::Mode::XUp},
      {"x-down", SpinFilter::Mode::XDown}};

  // surface
  SurfaceOptions surface;
  std::vector<double> alpha_range{surface.alpha.start, surface.alpha.stop};
  std::vector<double> sigma_range{surface.sigma.start, surface.sigma.stop};
  auto* surface_cmd = app.add_subcommand(
      "surface",
      "Entanglement of formation, discord, concurrence and mutual "
      "information of the output state on an (alpha, sigma) grid, as CSV");
  surface_cmd
      ->add_option("--alpha", alpha_range,
                   "spin rotation sweep: START STOP, radians")
      ->expected(2)
      ->capture_default_str();
  surface_cmd
      ->add_option("--sigma", sigma_range,
                   "gaussian phase-noise sweep: START STOP, radians")
      ->expected(2)
      ->capture_default_str();
  surface_cmd
      ->add_option("--alpha-steps", surface.alpha.steps, "grid points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  surface_cmd
      ->add_option("--sigma-steps", surface.sigma.steps, "grid points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  surface_cmd->add_option("--phi", surface.phi, "fixed phase flag, radians")
      ->capture_default_str();
  surface_cmd
      ->add_option("--epsilon", surface.epsilon,
                   "incoming spin polarization, in [-1, 1]")
      ->capture_default_str();
  surface_cmd->add_flag("--uniform,!--no-uniform", surface.include_uniform,
                        "append rows for the fully dephased limit "
                        "(sigma column reads `uniform`)");
  surface_cmd->add_option("--out", surface.out, "output CSV path")
      ->capture_default_str();
  surface_cmd->callback([&]() {
    surface.alpha.start = alpha_range[0];
    surface.alpha.stop = alpha_range[1];
    surface.sigma.start = sigma_range[0];
    surface.sigma.stop = sigma_range[1];
    run_surface(surface, std::cout);
  });

  // contrast
  ContrastOptions contrast;
  SpinFilter::Mode contrast_filter = SpinFilter::Mode::None;
  std::string contrast_noise = "gaussian";
  double contrast_sigma = 0.0;
  auto* contrast_cmd = app.add_subcommand(
      "contrast",
      "Detector intensity sweep (path kind sweeps the phase flag, spin kind "
      "sweeps the rotation angle) with numeric and closed-form contrasts");
  contrast_cmd
      ->add_option("--kind", contrast.kind,
                   "path: sweep phi at fixed alpha; spin: sweep alpha at "
                   "fixed phi")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ContrastOptions::Kind>{
              {"path", ContrastOptions::Kind::Path},
              {"spin", ContrastOptions::Kind::Spin}},
          CLI::ignore_case));
  contrast_cmd->add_option("--filter", contrast_filter, "spin filter at D0")
      ->transform(CLI::CheckedTransformer(filter_names, CLI::ignore_case));
  contrast_cmd
      ->add_option("--noise", contrast_noise,
                   "phase noise model: gaussian, uniform or none")
      ->check(CLI::IsMember({"gaussian", "uniform", "none"}))
      ->capture_default_str();
  auto* sigma_opt = contrast_cmd
                        ->add_option("--sigma", contrast_sigma,
                                     "gaussian noise strength, radians")
                        ->capture_default_str();
  contrast_cmd
      ->add_option("--alpha", contrast.alpha,
                   "fixed spin rotation for path sweeps, radians")
      ->capture_default_str();
  contrast_cmd
      ->add_option("--phi", contrast.phi,
                   "fixed phase flag for spin sweeps, radians")
      ->capture_default_str();
  contrast_cmd
      ->add_option("--epsilon", contrast.epsilon,
                   "incoming spin polarization, in [-1, 1]")
      ->capture_default_str();
  contrast_cmd->add_option("--steps", contrast.steps, "sweep points")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  contrast_cmd->add_flag(
      "--conditional", contrast.conditional,
      "report the filtered intensity renormalized by the filter's "
      "acceptance instead of the joint intensity");
  contrast_cmd->add_flag("--degrees", contrast.degrees,
                         "print summary angles in degrees (files stay in "
                         "radians)");
  contrast_cmd->add_option("--out", contrast.out, "output CSV path")
      ->capture_default_str();
  contrast_cmd->callback([&]() {
    contrast.noise = noise_from_flags(contrast_noise, contrast_sigma,
                                      sigma_opt->count() > 0);
    contrast.filter = filter_from_mode(contrast_filter);
    run_contrast(contrast, std::cout);
  });

  // fit-sigma
  FitOptions fit;
  double fit_contrast = 0.0;
  auto* fit_cmd = app.add_subcommand(
      "fit-sigma",
      "Invert the empty-interferometer contrast into a gaussian noise "
      "strength: sigma = sqrt(-2 ln C), with first-order error propagation");
  auto* fit_contrast_opt = fit_cmd->add_option(
      "--contrast", fit_contrast, "measured contrast, in (0, 1]");
  fit_cmd->add_option("--err", fit.err, "contrast uncertainty")
      ->capture_default_str();
  auto* fit_in_opt =
      fit_cmd
          ->add_option("--in", fit.in,
                       "batch mode: CSV with label,contrast,contrast_err")
          ->excludes(fit_contrast_opt);
  fit_cmd->add_option("--out", fit.out, "batch mode output CSV path")
      ->needs(fit_in_opt);
  fit_cmd->callback([&]() {
    if (fit_contrast_opt->count() > 0) fit.contrast = fit_contrast;
    run_fit(fit, std::cout);
  });

  // predict
  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand(
      "predict",
      "Spin contrast surviving in the strong-noise limit thanks to the "
      "z-filter, eps/(2+eps) for z-up and eps/(2-eps) for z-down");
  predict_cmd
      ->add_option("--epsilon", predict.epsilon,
                   "incoming spin polarization, in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  predict_cmd->add_option("--filter", predict.filter, "z-up or z-down")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, SpinFilter::Mode>{
              {"z-up", SpinFilter::Mode::ZUp},
              {"z-down", SpinFilter::Mode::ZDown}},
          CLI::ignore_case));
  predict_cmd->callback([&]() { run_predict(predict, std::cout); });

  // verify
  VerifyOptions verify;
  std::size_t verify_samples = 0;
  auto* verify_cmd = app.add_subcommand(
      "verify",
      "Cross-check suites: circuit vs closed forms, numeric vs closed-form "
      "contrasts, Monte Carlo vs analytic dephasing, discord grid vs "
      "refined, local-unitary invariance, contrast ordering");
  verify_cmd->add_option("--level", verify.level, "fast or full")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, VerifyOptions::Level>{
              {"fast", VerifyOptions::Level::Fast},
              {"full", VerifyOptions::Level::Full}},
          CLI::ignore_case));
  verify_cmd->add_option("--seed", verify.seed, "base RNG seed")
      ->capture_default_str();
  auto* samples_opt = verify_cmd->add_option(
      "--samples", verify_samples,
      "Monte Carlo shots (default 20000 fast, 100000 full)");
  verify_cmd->callback([&]() {
    if (samples_opt->count() > 0) verify.samples = verify_samples;
    rc = run_verification(verify, std::cout) ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const UndefinedContrastError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfValidityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return rc;
}
