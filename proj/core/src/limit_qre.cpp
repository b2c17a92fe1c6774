#include "lqre/limit_qre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lqre {

namespace {

// For logit the Jacobian is [[0, J12], [J21, 0]], whose nonzero eigenvalues
// are the square roots of those of J12 J21, so a smaller problem suffices.
double radius_at(const BimatrixGame& game, const MixedProfile& p, double beta,
                 const ChoiceModel& model) {
  if (!model.is_logit()) return spectral_radius(numeric_jacobian(game, p, beta, model));
  const Matrix j = jacobian(game, p, beta, model);
  const Eigen::Index n1 = p.p1.size();
  const Eigen::Index n2 = p.p2.size();
  const Matrix j12 = j.topRightCorner(n1, n2);
  const Matrix j21 = j.bottomLeftCorner(n2, n1);
  const Matrix prod = n1 <= n2 ? Matrix(j12 * j21) : Matrix(j21 * j12);
  return std::sqrt(spectral_radius(prod));
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::instability: return "instability";
    case Termination::nonconvergence: return "nonconvergence";
    case Termination::beta_cap_reached: return "beta_cap_reached";
  }
  return "unknown";
}

double auto_nu(const BimatrixGame& game) {
  const double m = game.max_abs_payoff();
  if (!(m > 0.0)) throw std::invalid_argument("auto_nu: game has all-zero payoffs");
  return 0.01 * m;
}

EvolutionaryPathResult evolutionary_path(const BimatrixGame& game, const ChoiceModel& model,
                                         const PathOptions& options) {
  EvolutionaryPathResult r;
  r.nu = options.nu ? *options.nu : auto_nu(game);
  if (!(r.nu > 0.0) || !std::isfinite(r.nu))
    throw std::invalid_argument("evolutionary_path: nu must be positive and finite");
  r.beta_cap = options.beta_cap ? *options.beta_cap : kDefaultCapSteps * r.nu;
  if (!(r.beta_cap >= 0.0) || !std::isfinite(r.beta_cap))
    throw std::invalid_argument("evolutionary_path: beta_cap must be finite and >= 0");

  MixedProfile p = uniform_profile(game);
  QrePoint last{0.0, p, 0.0, true};
  r.points.push_back(last);

  for (int k = 1;; ++k) {
    const double beta = k * r.nu;
    if (beta > r.beta_cap * (1.0 + 1e-12)) {
      r.termination = Termination::beta_cap_reached;
      r.unbounded = true;
      break;
    }
    const IterationOutcome out = iterate(game, p, beta, model, options.iteration);
    if (!out.converged()) {
      r.termination = Termination::nonconvergence;
      r.failed_beta = beta;
      r.failed_status = out.status;
      break;
    }
    const double rho = radius_at(game, out.final_profile, beta, model);
    if (!(rho < 1.0 - options.stability_margin)) {
      r.termination = Termination::instability;
      r.failed_beta = beta;
      r.failed_radius = rho;
      r.failed_status = out.status;
      break;
    }
    p = out.final_profile;
    last = {beta, p, rho, true};
    r.steps = k;
    if (options.keep_points) r.points.push_back(last);
  }
  if (!options.keep_points && r.steps > 0) r.points.push_back(last);
  r.beta_star = last.beta;
  r.p_star = last.profile;
  return r;
}

BarrierScan thick_barrier_scan(const BimatrixGame& game, const ChoiceModel& model,
                               const EvolutionaryPathResult& path,
                               const BarrierScanOptions& options) {
  if (path.unbounded) throw std::invalid_argument("thick_barrier_scan: path has no finite beta*");
  const double step = options.step > 0.0 ? options.step : path.nu;
  if (!(step > 0.0)) throw std::invalid_argument("thick_barrier_scan: step must be positive");

  BarrierScan scan;
  for (int k = 1;; ++k) {
    const double beta = path.beta_star + k * step;
    if (beta > options.beta_max * (1.0 + 1e-12)) break;
    BarrierScanPoint pt;
    pt.beta = beta;
    const IterationOutcome out = iterate(game, path.p_star, beta, model, options.iteration);
    pt.status = out.status;
    if (out.converged()) pt.radius = radius_at(game, out.final_profile, beta, model);
    if (options.damped_diagnostics) {
      const IterationOutcome d =
          solve_qre_damped(game, path.p_star, beta, model, options.damping, options.iteration);
      if (d.converged()) pt.damped_radius = radius_at(game, d.final_profile, beta, model);
    }
    scan.points.push_back(pt);
    if (pt.radius && *pt.radius < 1.0 - kStabilityMargin) {
      scan.restabilization_beta = beta;
      break;
    }
  }
  return scan;
}

std::vector<NuRobustnessRow> nu_robustness(const BimatrixGame& game, const ChoiceModel& model,
                                           double nu0, int halvings, const PathOptions& base) {
  if (!(nu0 > 0.0)) throw std::invalid_argument("nu_robustness: nu0 must be positive");
  if (halvings < 0) throw std::invalid_argument("nu_robustness: halvings must be >= 0");
  std::vector<NuRobustnessRow> rows;
  std::vector<MixedProfile> limits;
  for (int i = 0; i <= halvings; ++i) {
    PathOptions opt = base;
    opt.nu = nu0 / std::ldexp(1.0, i);
    opt.keep_points = false;
    const EvolutionaryPathResult r = evolutionary_path(game, model, opt);
    rows.push_back({r.nu, r.beta_star, r.termination, 0.0});
    limits.push_back(r.p_star);
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].distance_to_finest = max_abs_diff(limits[i], limits.back());
  return rows;
}

std::vector<QrePoint> trace_branch(const BimatrixGame& game, const ChoiceModel& model,
                                   const std::vector<double>& betas, double damping,
                                   const IterationOptions& iteration) {
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("trace_branch: damping must lie in (0, 1]");
  std::vector<QrePoint> out;
  MixedProfile p = uniform_profile(game);
  double prev = 0.0;
  for (const double beta : betas) {
    if (beta < prev) throw std::invalid_argument("trace_branch: betas must be nondecreasing");
    prev = beta;
    const IterationOutcome d = solve_qre_damped(game, p, beta, model, damping, iteration);
    if (!d.converged()) break;
    p = d.final_profile;
    const double rho = radius_at(game, p, beta, model);
    out.push_back({beta, p, rho, rho < 1.0 - kStabilityMargin});
  }
  return out;
}

}  // namespace lqre
