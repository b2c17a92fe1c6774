#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lqre/choice.hpp"
#include "lqre/game.hpp"

namespace lqre {

// Both players respond simultaneously to the other's current mixed action:
//   phi_beta(p) = (h_beta(u_1(p_2)), h_beta(u_2(p_1))).
MixedProfile logit_response(const BimatrixGame& game, const MixedProfile& p, double beta,
                            const ChoiceModel& model = ChoiceModel::logit());

struct IterationOptions {
  double tol = 1e-10;        // L-infinity step size declaring convergence
  int max_iter = 200000;
  int cycle_window = 1000;   // iterates kept for cycle matching
  double cycle_tol = 1e-8;
};

enum class IterationStatus { converged, cycle_detected, budget_exhausted };
std::string to_string(IterationStatus status);

struct IterationOutcome {
  IterationStatus status = IterationStatus::budget_exhausted;
  MixedProfile final_profile;
  int iterations_used = 0;
  double residual = 0.0;  // L-infinity of the last step p' - p
  std::optional<int> cycle_period;

  bool converged() const { return status == IterationStatus::converged; }
};

// Applies phi_beta repeatedly from p0. Converges when a step moves the
// profile by at most tol. A cycle is reported when the current iterate
// returns to within cycle_tol of one of the last cycle_window iterates
// (lag >= 2) while single steps are still large.
IterationOutcome iterate(const BimatrixGame& game, const MixedProfile& p0, double beta,
                         const ChoiceModel& model = ChoiceModel::logit(),
                         const IterationOptions& options = {});

// Damped iteration p <- (1 - d) p + d phi_beta(p). Finds fixed points that
// the undamped dynamic is repelled from. Convergence is judged on the
// fixed-point residual |phi_beta(p) - p|, not on the damped step.
IterationOutcome solve_qre_damped(const BimatrixGame& game, const MixedProfile& p0,
                                  double beta, const ChoiceModel& model, double damping,
                                  const IterationOptions& options = {});

// L-infinity residual |phi_beta(p) - p|.
double fixed_point_residual(const BimatrixGame& game, const MixedProfile& p, double beta,
                            const ChoiceModel& model = ChoiceModel::logit());

// Analytic Jacobian of the logit response at p, ordered (p1, p2). The
// diagonal blocks vanish since phi_i only reads p_{-i}:
//   d phi_1^k / d p_2^h = beta q1_k (A[k,h] - sum_m q1_m A[m,h]),  q = phi_beta(p).
// Each off-diagonal block has zero column sums, so J maps any vector into
// the tangent space of the product of simplices; evaluating the spectrum of
// the full matrix therefore needs no explicit projection.
// Throws for non-logit models.
Matrix jacobian(const BimatrixGame& game, const MixedProfile& p, double beta,
                const ChoiceModel& model = ChoiceModel::logit());

// Central finite-difference Jacobian of phi_beta, any choice model.
Matrix numeric_jacobian(const BimatrixGame& game, const MixedProfile& p, double beta,
                        const ChoiceModel& model, double step = 1e-6);

// Largest eigenvalue modulus, from a dense nonsymmetric eigensolver.
double spectral_radius(const Matrix& m);

inline constexpr double kStabilityMargin = 1e-6;

struct StabilityReport {
  double spectral_radius = 0.0;
  bool stable = false;
  bool marginal = false;       // radius within the margin band around 1
  double residual = 0.0;       // fixed-point residual at the classified point
  std::string eigen_method;
  double margin = kStabilityMargin;
};

// stable <=> spectral radius < 1 - margin. Throws std::invalid_argument if
// p is not a fixed point (residual above 10 * tol).
StabilityReport classify_stability(const BimatrixGame& game, const MixedProfile& p,
                                   double beta, const ChoiceModel& model = ChoiceModel::logit(),
                                   double tol = 1e-10, double margin = kStabilityMargin);

// Sequence of most-weighted actions along the path phi_beta^(n)(p_start),
// n = 1..horizon, and the periodic tail it settles into if any. Orbits that
// only nearly repeat (a pattern drifting by a label now and then) get the
// approximate cycle, with exact = false.
struct BestResponseCycle {
  std::vector<std::size_t> trace_1;
  std::vector<std::size_t> trace_2;
  std::vector<std::size_t> cycle_1;  // empty when no periodic tail was found
  std::vector<std::size_t> cycle_2;
  bool exact = true;

  bool found() const { return !cycle_1.empty(); }
};

BestResponseCycle best_response_cycle(const BimatrixGame& game, const MixedProfile& p_start,
                                      double beta, int horizon,
                                      const ChoiceModel& model = ChoiceModel::logit());

// Alternating pure best responses k_{n+1} = BR(k_n), starting from player 1
// playing start_action; returns the action cycle (as visited, both players
// interleaved) that the sequence ends in.
std::vector<std::size_t> pure_best_response_cycle(const BimatrixGame& game,
                                                  std::size_t start_action, int horizon);

// Smallest period of the tail of `seq`, rotated so it begins right after its
// largest index jump; empty if the tail is not periodic.
std::vector<std::size_t> periodic_tail(const std::vector<std::size_t>& seq);

// Smallest period P whose tail mismatch mean |seq[n] - seq[n - P]| is at most
// max_mean_gap index units; returns the elementwise median of the tail's
// windows of length P, each rotated as canonical_rotation does. Empty if none.
std::vector<std::size_t> approximate_periodic_tail(const std::vector<std::size_t>& seq,
                                                   double max_mean_gap = 1.0);

// Rotates a cycle to begin right after its largest index jump.
std::vector<std::size_t> canonical_rotation(std::vector<std::size_t> cycle);

// Index of the largest entry (first one on ties).
std::size_t mode_index(const Vector& p);

}  // namespace lqre
