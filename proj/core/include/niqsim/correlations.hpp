#pragma once

// Correlation measures on the path (A) x spin (B) state: quantum mutual
// information, measurement-conditioned entropies, quantum discord D(A|B)
// optimized over spin projective measurements, concurrence and the
// entanglement of formation. Logs are base 2 throughout.

#include <optional>

#include "niqsim/qmath.hpp"

namespace niqsim {

/// Rank-one spin projector pair {P0, P1 = I - P0} parameterized by the
/// Bloch angles of P0. Antipodal axes give the same pair, so theta in
/// [0, pi/2] already covers every PVM.
struct SpinPVM {
  double theta = 0.0;   // in [0, pi]
  double varphi = 0.0;  // in [0, 2 pi)
  Eigen::Matrix2cd p0;
  Eigen::Matrix2cd p1;

  static SpinPVM from_angles(double theta, double varphi);
};

/// S(A) + S(B) - S(AB), nonnegative up to numerical noise.
double mutual_information(const DensityOperator& rho);

struct Conditional {
  double probability = 0.0;
  /// Empty when the outcome has probability below 1e-12.
  std::optional<DensityOperator> state;
};

/// Path state conditioned on spin effect `effect` (PSD, <= I):
/// tr_B((I (x) E) rho) / p with p = tr((I (x) E) rho).
Conditional conditional_state(const DensityOperator& rho,
                              const Eigen::Matrix2cd& effect);

/// sum_b p_b S(rho_{A|b}) for the two PVM outcomes.
double conditional_entropy(const DensityOperator& rho, const SpinPVM& pvm);

struct DiscordResult {
  double value = 0.0;
  SpinPVM optimal_pvm;
};

/// Quantum discord D(A|B) = min over spin PVMs of
/// S(A|{P}) + S(B) - S(AB). The minimum is located on a 64 x 128
/// hemisphere grid (first minimum wins on ties, scanning theta then
/// varphi) and refined by Nelder-Mead until the simplex diameter falls
/// below 1e-6 rad. Clamped to 0 when within -1e-9. For mixed states this
/// PVM minimum is an upper bound on the POVM discord.
DiscordResult discord_A_given_B(const DensityOperator& rho);

/// Wootters concurrence: with R = sqrt_psd(rho) and
/// F = (Y (x) Y) conj(rho) (Y (x) Y), the descending eigenvalues
/// lambda_i of sqrt_psd(R F R) give max(0, l1 - l2 - l3 - l4).
double concurrence(const DensityOperator& rho);

/// h((1 + sqrt(1 - C^2)) / 2) with h the binary entropy.
double eof_from_concurrence(double c);

/// Entanglement of formation of the joint state.
double eof(const DensityOperator& rho);

struct CorrelationReport {
  double mutual_info = 0.0;
  double classical_corr = 0.0;  // J(A|B) = I - D at the optimal PVM
  double discord = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  SpinPVM optimal_pvm;
};

/// All of the above in one pass (one discord optimization).
CorrelationReport analyze(const DensityOperator& rho);

}  // namespace niqsim
