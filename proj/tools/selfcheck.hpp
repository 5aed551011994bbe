#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace niqsim::cli {

struct VerifyOptions {
  enum class Level { Fast, Full };

  Level level = Level::Fast;
  std::uint64_t seed = 1;
  // Monte Carlo shot count; defaults to 20000 (fast) or 100000 (full).
  std::optional<std::size_t> samples;
};

/// Runs the cross-check suites (circuit vs closed forms, numeric vs
/// closed-form contrasts, Monte Carlo vs analytic dephasing, discord grid
/// vs refined, local-unitary invariance, contrast ordering) and prints one
/// line per suite plus an overall verdict. Returns true iff every suite
/// passed. The report is byte-identical for identical options.
bool run_verification(const VerifyOptions& opt, std::ostream& report);

}  // namespace niqsim::cli
