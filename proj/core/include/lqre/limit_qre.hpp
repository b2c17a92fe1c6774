#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqre/dynamics.hpp"

namespace lqre {

// Precision increments per path when no cap is given.
inline constexpr int kDefaultCapSteps = 5000;

struct QrePoint {
  double beta = 0.0;
  MixedProfile profile;
  double spectral_radius = 0.0;
  bool stable = true;
};

enum class Termination { instability, nonconvergence, beta_cap_reached };
std::string to_string(Termination t);

struct PathOptions {
  std::optional<double> nu;        // auto_nu(game) when empty
  std::optional<double> beta_cap;  // kDefaultCapSteps * nu when empty
  IterationOptions iteration;
  double stability_margin = kStabilityMargin;
  bool keep_points = true;         // false keeps only the first and last point
};

struct EvolutionaryPathResult {
  std::vector<QrePoint> points;
  double beta_star = 0.0;   // last accepted precision (the cap when unbounded)
  bool unbounded = false;   // reached the cap while stable
  MixedProfile p_star;
  Termination termination = Termination::beta_cap_reached;
  double nu = 0.0;
  double beta_cap = 0.0;
  int steps = 0;            // accepted increments, so beta_star = steps * nu

  // The step that ended the path (absent when the cap was reached).
  double failed_beta = 0.0;
  std::optional<double> failed_radius;
  std::optional<IterationStatus> failed_status;
};

// Increment used when none is given: 1% of the largest absolute payoff.
double auto_nu(const BimatrixGame& game);

// Raises precision from 0 in steps of nu, re-running the logit-response
// dynamic from the previous limit each time, and stops at the first step that
// fails to converge to a spectrally stable QRE.
EvolutionaryPathResult evolutionary_path(const BimatrixGame& game,
                                         const ChoiceModel& model = ChoiceModel::logit(),
                                         const PathOptions& options = {});

struct BarrierScanPoint {
  double beta = 0.0;
  IterationStatus status = IterationStatus::budget_exhausted;
  std::optional<double> radius;         // at the point the dynamic reached, if it converged
  std::optional<double> damped_radius;  // at the damped fixed point, if requested
};

struct BarrierScanOptions {
  double beta_max = 0.0;
  double step = 0.0;                     // nu of the path when <= 0
  IterationOptions iteration;
  bool damped_diagnostics = false;
  double damping = 0.2;
};

struct BarrierScan {
  std::optional<double> restabilization_beta;
  std::vector<BarrierScanPoint> points;
};

// Restabilization precision above a finite limit precision: the smallest beta
// on the grid beta* + step, beta* + 2 step, ... at which the undamped dynamic
// started from p* converges to a stable QRE.
BarrierScan thick_barrier_scan(const BimatrixGame& game, const ChoiceModel& model,
                               const EvolutionaryPathResult& path,
                               const BarrierScanOptions& options);

struct NuRobustnessRow {
  double nu = 0.0;
  double beta_star = 0.0;
  Termination termination = Termination::beta_cap_reached;
  double distance_to_finest = 0.0;  // L-infinity distance of p* to the finest-nu p*
};

std::vector<NuRobustnessRow> nu_robustness(const BimatrixGame& game, const ChoiceModel& model,
                                           double nu0, int halvings,
                                           const PathOptions& base = {});

// QRE along a precision grid by damped continuation from the uniform profile.
// Unlike the evolutionary path, unstable points are kept (stable = false).
std::vector<QrePoint> trace_branch(const BimatrixGame& game, const ChoiceModel& model,
                                   const std::vector<double>& betas, double damping = 0.2,
                                   const IterationOptions& iteration = {});

}  // namespace lqre
