#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "csv.hpp"
#include "niqsim/correlations.hpp"
#include "niqsim/errors.hpp"
#include "niqsim/fitting.hpp"

namespace niqsim::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_value(const Range& r, int i) {
  if (r.steps < 2) throw std::invalid_argument("sweep needs steps >= 2");
  return r.start + i * (r.stop - r.start) / (r.steps - 1);
}

std::string range_flag(const Range& r) {
  return fmt9(r.start) + ":" + fmt9(r.stop) + ":" + std::to_string(r.steps);
}

std::string noise_flag(const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseModel::Kind::None:
      return "none";
    case NoiseModel::Kind::Gaussian:
      return "gaussian(" + fmt9(noise.sigma) + ")";
    case NoiseModel::Kind::Uniform:
      return "uniform";
  }
  return "?";
}

std::string filter_flag(const SpinFilter& filter) {
  switch (filter.mode) {
    case SpinFilter::Mode::None:
      return "none";
    case SpinFilter::Mode::ZUp:
      return "z-up";
    case SpinFilter::Mode::ZDown:
      return "z-down";
    case SpinFilter::Mode::XUp:
      return "x-up";
    case SpinFilter::Mode::XDown:
      return "x-down";
    case SpinFilter::Mode::General:
      return "general";
  }
  return "?";
}

std::string display_angle(double radians, bool degrees) {
  return degrees ? fmt9(radians * 180.0 / kPi) + " deg"
                 : fmt9(radians) + " rad";
}

}  // namespace

void run_surface(const SurfaceOptions& opt, std::ostream& status) {
  if (opt.alpha.steps < 2 || opt.sigma.steps < 2) {
    throw std::invalid_argument("sweep needs steps >= 2 per axis");
  }
  std::string body = "alpha,sigma,eof,discord,concurrence,mutual_info\n";
  for (int i = 0; i < opt.alpha.steps; ++i) {
    const double alpha = grid_value(opt.alpha, i);
    for (int j = 0; j < opt.sigma.steps; ++j) {
      const double sigma = grid_value(opt.sigma, j);
      const CorrelationReport r = analyze(output_state(
          {alpha, opt.phi, opt.epsilon, NoiseModel::gaussian(sigma)}));
      body += fmt9(alpha) + "," + fmt9(sigma) + "," + fmt9(r.eof) + "," +
              fmt9(r.discord) + "," + fmt9(r.concurrence) + "," +
              fmt9(r.mutual_info) + "\n";
    }
  }
  if (opt.include_uniform) {
    for (int i = 0; i < opt.alpha.steps; ++i) {
      const double alpha = grid_value(opt.alpha, i);
      const CorrelationReport r = analyze(
          output_state({alpha, opt.phi, opt.epsilon, NoiseModel::uniform()}));
      body += fmt9(alpha) + ",uniform," + fmt9(r.eof) + "," +
              fmt9(r.discord) + "," + fmt9(r.concurrence) + "," +
              fmt9(r.mutual_info) + "\n";
    }
  }
  const std::string flags = "alpha=" + range_flag(opt.alpha) +
                            " sigma=" + range_flag(opt.sigma) +
                            " phi=" + fmt9(opt.phi) +
                            " epsilon=" + fmt9(opt.epsilon) + " uniform=" +
                            (opt.include_uniform ? "true" : "false");
  body += manifest_line("surface", flags, 0);
  write_file(opt.out, body);
  status << "surface grid " << opt.alpha.steps << "x" << opt.sigma.steps
         << (opt.include_uniform ? " plus uniform rows" : "") << " -> "
         << opt.out << "\n";
}

namespace {

// Closed-form counterpart of the swept contrast, when one exists.
std::string closed_form_summary(const ContrastOptions& opt) {
  try {
    double value = 0.0;
    if (opt.kind == ContrastOptions::Kind::Path) {
      switch (opt.filter.mode) {
        case SpinFilter::Mode::None:
          value = path_contrast(opt.alpha, opt.noise);
          break;
        case SpinFilter::Mode::XUp:
        case SpinFilter::Mode::XDown:
          value = xfiltered_contrast(opt.noise);
          break;
        case SpinFilter::Mode::ZUp:
          value = path_contrast_zup(opt.alpha, opt.noise, opt.epsilon);
          break;
        case SpinFilter::Mode::ZDown:
          value = path_contrast_zdown(opt.alpha, opt.noise, opt.epsilon);
          break;
        case SpinFilter::Mode::General:
          return "n/a (general filter has no closed form)";
      }
    } else {
      switch (opt.filter.mode) {
        case SpinFilter::Mode::None:
          value = spin_contrast(opt.phi, opt.noise);
          break;
        case SpinFilter::Mode::XUp:
        case SpinFilter::Mode::XDown:
          // the swept cosine covers a closed half-period only when the
          // fixed phase is 0 mod pi; elsewhere only the numeric value holds
          if (std::abs(std::remainder(opt.phi, kPi)) > 1e-12) {
            return "n/a (x-filtered spin sweep needs phi = 0 mod pi)";
          }
          value = xfiltered_contrast(opt.noise);
          break;
        case SpinFilter::Mode::ZUp:
          value = spin_contrast_zup(opt.phi, opt.noise, opt.epsilon);
          break;
        case SpinFilter::Mode::ZDown:
          value = spin_contrast_zdown(opt.phi, opt.noise, opt.epsilon);
          break;
        case SpinFilter::Mode::General:
          return "n/a (general filter has no closed form)";
      }
    }
    return fmt9(value);
  } catch (const OutOfValidityError&) {
    return "n/a (outside the closed form's validity; numeric value applies)";
  } catch (const UndefinedContrastError&) {
    return "n/a (filtered beam is dark)";
  }
}

}  // namespace

void run_contrast(const ContrastOptions& opt, std::ostream& status) {
  if (opt.steps < 2) throw std::invalid_argument("sweep needs steps >= 2");

  const bool sweep_phi = opt.kind == ContrastOptions::Kind::Path;
  const auto params_at = [&](double x) {
    return CircuitParams{sweep_phi ? opt.alpha : x,
                         sweep_phi ? x : opt.phi, opt.epsilon, opt.noise};
  };

  std::string body = "sweep_param,intensity,intensity_filtered\n";
  for (int i = 0; i < opt.steps; ++i) {
    const double x = i * 2.0 * kPi / opt.steps;
    const CircuitParams p = params_at(x);
    const double plain = d0_filtered(p, SpinFilter::none());
    const double filtered = opt.conditional
                                ? d0_filtered_conditional(p, opt.filter)
                                : d0_filtered(p, opt.filter);
    body += fmt9(x) + "," + fmt9(plain) + "," + fmt9(filtered) + "\n";
  }

  const ContrastResult numeric = contrast_numeric(
      [&](double x) { return d0_filtered(params_at(x), opt.filter); });
  const std::string closed = closed_form_summary(opt);

  body += "# contrast_numeric=" + fmt9(numeric.value) +
          " argmax=" + fmt9(numeric.argmax) +
          " argmin=" + fmt9(numeric.argmin) + "\n";
  body += "# contrast_closed_form=" + closed + "\n";
  const std::string flags =
      std::string("kind=") + (sweep_phi ? "path" : "spin") +
      " filter=" + filter_flag(opt.filter) + " alpha=" + fmt9(opt.alpha) +
      " phi=" + fmt9(opt.phi) + " epsilon=" + fmt9(opt.epsilon) +
      " noise=" + noise_flag(opt.noise) +
      " steps=" + std::to_string(opt.steps) +
      " conditional=" + (opt.conditional ? "true" : "false");
  body += manifest_line("contrast", flags, 0);
  write_file(opt.out, body);

  status << "contrast " << (sweep_phi ? "path" : "spin") << " sweep, filter "
         << filter_flag(opt.filter) << ": numeric " << fmt9(numeric.value)
         << " (max at " << display_angle(numeric.argmax, opt.degrees)
         << ", min at " << display_angle(numeric.argmin, opt.degrees)
         << "), closed form " << closed << " -> " << opt.out << "\n";
}

namespace {

struct FitRow {
  std::string label;
  double contrast = 0.0;
  double err = 0.0;
};

std::vector<FitRow> read_fit_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open input file: " + path);
  }
  std::vector<FitRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    FitRow row;
    std::string c, e;
    if (!std::getline(ss, row.label, ',') || !std::getline(ss, c, ',') ||
        !std::getline(ss, e)) {
      throw IoError("malformed fit input row: " + line);
    }
    if (first && row.label == "label") {
      first = false;
      continue;  // header
    }
    first = false;
    try {
      row.contrast = std::stod(c);
      row.err = std::stod(e);
    } catch (const std::exception&) {
      throw IoError("malformed fit input row: " + line);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void run_fit(const FitOptions& opt, std::ostream& status) {
  if (!opt.in.empty()) {
    if (opt.out.empty()) {
      throw std::invalid_argument("batch fitting needs --out");
    }
    std::string body = "label,contrast,contrast_err,sigma,sigma_err\n";
    for (const FitRow& row : read_fit_rows(opt.in)) {
      const FitResult r = fit_sigma(row.contrast, row.err);
      body += row.label + "," + fmt9(r.contrast) + "," +
              fmt9(r.contrast_err) + "," + fmt9(r.sigma) + "," +
              fmt9(r.sigma_err) + "\n";
    }
    body += manifest_line("fit-sigma", "in=" + opt.in, 0);
    write_file(opt.out, body);
    status << "fit-sigma batch " << opt.in << " -> " << opt.out << "\n";
    return;
  }
  if (!opt.contrast.has_value()) {
    throw std::invalid_argument("fit-sigma needs --contrast or --in");
  }
  const FitResult r = fit_sigma(*opt.contrast, opt.err);
  status << "sigma=" << fmt9(r.sigma) << " sigma_err=" << fmt9(r.sigma_err)
         << "\n";
}

void run_predict(const PredictOptions& opt, std::ostream& status) {
  double value = 0.0;
  if (opt.filter == SpinFilter::Mode::ZUp) {
    value = strong_noise_spin_contrast_zup(opt.epsilon);
  } else if (opt.filter == SpinFilter::Mode::ZDown) {
    value = strong_noise_spin_contrast_zdown(opt.epsilon);
  } else {
    throw std::invalid_argument("predict supports z-up and z-down filters");
  }
  status << fmt9(value) << "\n";
}

}  // namespace niqsim::cli
