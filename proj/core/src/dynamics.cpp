#include "lqre/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lqre {

namespace {

Vector stack(const MixedProfile& p) {
  Vector x(p.p1.size() + p.p2.size());
  x << p.p1, p.p2;
  return x;
}

MixedProfile unstack(const Vector& x, Eigen::Index n1) {
  return {x.head(n1), x.tail(x.size() - n1)};
}

// Ring buffer of stacked iterates used for cycle matching.
class History {
 public:
  explicit History(int capacity) : capacity_(std::max(capacity, 0)) {}

  void push(const Vector& x) {
    if (capacity_ == 0) return;
    if (static_cast<int>(buf_.size()) < capacity_) {
      buf_.push_back(x);
    } else {
      buf_[static_cast<std::size_t>(next_)] = x;
    }
    next_ = (next_ + 1) % capacity_;
  }

  // Smallest lag >= 2 whose stored iterate lies within tol of x.
  std::optional<int> match(const Vector& x, double tol) const {
    const int n = static_cast<int>(buf_.size());
    for (int lag = 2; lag <= n; ++lag) {
      const int idx = ((next_ - lag) % capacity_ + capacity_) % capacity_;
      if ((buf_[static_cast<std::size_t>(idx)] - x).cwiseAbs().maxCoeff() <= tol) return lag;
    }
    return std::nullopt;
  }

 private:
  int capacity_;
  int next_ = 0;
  std::vector<Vector> buf_;
};

// Cycle matching scans the whole window, so it runs every few steps only.
constexpr int kCycleCheckStride = 16;

IterationOutcome run_iteration(const BimatrixGame& game, const MixedProfile& p0, double beta,
                               const ChoiceModel& model, double damping,
                               const IterationOptions& opt) {
  validate_profile(game, p0);
  if (!(opt.tol > 0.0)) throw std::invalid_argument("iterate: tol must be positive");
  if (opt.max_iter < 1) throw std::invalid_argument("iterate: max_iter must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("damping must lie in (0, 1]");

  const bool damped = damping < 1.0;
  const Eigen::Index n1 = p0.p1.size();
  History history(damped ? 0 : opt.cycle_window);
  IterationOutcome out;
  Vector x = stack(p0);
  history.push(x);

  for (int it = 1; it <= opt.max_iter; ++it) {
    MixedProfile p = unstack(x, n1);
    const MixedProfile q = logit_response(game, p, beta, model);
    Vector next = stack(q);
    const double fp_residual = (next - x).cwiseAbs().maxCoeff();
    if (damped) next = (1.0 - damping) * x + damping * next;
    x = std::move(next);
    out.iterations_used = it;
    out.residual = fp_residual;
    if (fp_residual <= opt.tol) {
      // The residual was measured at the previous point; for the damped map
      // that point is the better fixed-point estimate.
      out.status = IterationStatus::converged;
      out.final_profile = damped ? p : q;
      return out;
    }
    if (!damped && it % kCycleCheckStride == 0 && fp_residual > 100.0 * opt.cycle_tol) {
      if (auto lag = history.match(x, opt.cycle_tol)) {
        out.status = IterationStatus::cycle_detected;
        out.cycle_period = *lag;
        out.final_profile = unstack(x, n1);
        return out;
      }
    }
    history.push(x);
  }
  out.status = IterationStatus::budget_exhausted;
  out.final_profile = unstack(x, n1);
  return out;
}

}  // namespace

std::string to_string(IterationStatus status) {
  switch (status) {
    case IterationStatus::converged: return "converged";
    case IterationStatus::cycle_detected: return "cycle_detected";
    case IterationStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

MixedProfile logit_response(const BimatrixGame& game, const MixedProfile& p, double beta,
                            const ChoiceModel& model) {
  const auto u = expected_payoff_vectors(game, p);
  return {choice_distribution(u.u1, beta, model), choice_distribution(u.u2, beta, model)};
}

IterationOutcome iterate(const BimatrixGame& game, const MixedProfile& p0, double beta,
                         const ChoiceModel& model, const IterationOptions& options) {
  return run_iteration(game, p0, beta, model, 1.0, options);
}

IterationOutcome solve_qre_damped(const BimatrixGame& game, const MixedProfile& p0,
                                  double beta, const ChoiceModel& model, double damping,
                                  const IterationOptions& options) {
  return run_iteration(game, p0, beta, model, damping, options);
}

double fixed_point_residual(const BimatrixGame& game, const MixedProfile& p, double beta,
                            const ChoiceModel& model) {
  return max_abs_diff(logit_response(game, p, beta, model), p);
}

Matrix jacobian(const BimatrixGame& game, const MixedProfile& p, double beta,
                const ChoiceModel& model) {
  if (!model.is_logit())
    throw std::invalid_argument("jacobian: analytic form is logit-only, use numeric_jacobian");
  const MixedProfile q = logit_response(game, p, beta, model);
  const Matrix& a = game.payoff_1();
  const Matrix& b = game.payoff_2();
  const Eigen::Index n1 = a.rows();
  const Eigen::Index n2 = a.cols();

  Matrix j = Matrix::Zero(n1 + n2, n1 + n2);
  // Player 1 reacts to p2 through the rows of A.
  const Eigen::RowVectorXd mean_row_1 = q.p1.transpose() * a;
  j.topRightCorner(n1, n2) =
      beta * (q.p1.asDiagonal() * (a.rowwise() - mean_row_1));
  // Player 2 reacts to p1 through the columns of B.
  const Matrix bt = b.transpose();
  const Eigen::RowVectorXd mean_row_2 = q.p2.transpose() * bt;
  j.bottomLeftCorner(n2, n1) =
      beta * (q.p2.asDiagonal() * (bt.rowwise() - mean_row_2));
  return j;
}

Matrix numeric_jacobian(const BimatrixGame& game, const MixedProfile& p, double beta,
                        const ChoiceModel& model, double step) {
  const Eigen::Index n1 = p.p1.size();
  const Vector x = stack(p);
  const Eigen::Index n = x.size();
  Matrix j(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Vector up = x;
    Vector down = x;
    up(c) += step;
    down(c) -= step;
    // phi is defined off the simplex too (payoffs are linear), so no projection.
    const auto u_up = expected_payoff_vectors(game, unstack(up, n1));
    const auto u_dn = expected_payoff_vectors(game, unstack(down, n1));
    Vector f_up(n), f_dn(n);
    f_up << choice_distribution(u_up.u1, beta, model), choice_distribution(u_up.u2, beta, model);
    f_dn << choice_distribution(u_dn.u1, beta, model), choice_distribution(u_dn.u2, beta, model);
    j.col(c) = (f_up - f_dn) / (2.0 * step);
  }
  return j;
}

double spectral_radius(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) throw std::invalid_argument("spectral_radius: non-finite entries");
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral_radius: eigenvalue iteration did not converge");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

StabilityReport classify_stability(const BimatrixGame& game, const MixedProfile& p, double beta,
                                   const ChoiceModel& model, double tol, double margin) {
  validate_profile(game, p);
  StabilityReport report;
  report.margin = margin;
  report.residual = fixed_point_residual(game, p, beta, model);
  if (report.residual > 10.0 * tol)
    throw std::invalid_argument("classify_stability: profile is not a fixed point (residual " +
                                std::to_string(report.residual) + ")");
  const Matrix j = model.is_logit() ? jacobian(game, p, beta, model)
                                    : numeric_jacobian(game, p, beta, model);
  report.eigen_method = model.is_logit() ? "analytic Jacobian, dense Hessenberg-QR eigenvalues"
                                         : "central-difference Jacobian (h=1e-6), dense "
                                           "Hessenberg-QR eigenvalues";
  report.spectral_radius = spectral_radius(j);
  report.stable = report.spectral_radius < 1.0 - margin;
  report.marginal = std::abs(report.spectral_radius - 1.0) <= margin;
  return report;
}

std::size_t mode_index(const Vector& p) {
  Eigen::Index idx = 0;
  p.maxCoeff(&idx);
  return static_cast<std::size_t>(idx);
}

std::vector<std::size_t> canonical_rotation(std::vector<std::size_t> cycle) {
  const std::size_t period = cycle.size();
  if (period < 2) return cycle;
  std::size_t start = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < period; ++i) {
    const std::size_t prev = cycle[(i + period - 1) % period];
    const std::size_t jump = cycle[i] > prev ? cycle[i] - prev : prev - cycle[i];
    if (jump > best) {
      best = jump;
      start = i;
    }
  }
  std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(start), cycle.end());
  return cycle;
}

std::vector<std::size_t> periodic_tail(const std::vector<std::size_t>& seq) {
  const std::size_t n = seq.size();
  const std::size_t tail = n / 2;
  if (tail < 2) return {};
  for (std::size_t period = 1; period <= tail / 2; ++period) {
    bool ok = true;
    for (std::size_t i = n - tail; i < n && ok; ++i) ok = seq[i] == seq[i - period];
    if (!ok) continue;
    std::vector<std::size_t> cycle(seq.end() - static_cast<std::ptrdiff_t>(period), seq.end());
    return canonical_rotation(std::move(cycle));
  }
  return {};
}

std::vector<std::size_t> approximate_periodic_tail(const std::vector<std::size_t>& seq,
                                                   double max_mean_gap) {
  const std::size_t n = seq.size();
  const std::size_t tail = n / 2;
  if (tail < 4) return {};
  auto gap = [](std::size_t a, std::size_t b) {
    return a > b ? static_cast<double>(a - b) : static_cast<double>(b - a);
  };
  for (std::size_t period = 2; period <= tail / 4; ++period) {
    double total = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) total += gap(seq[i], seq[i - period]);
    if (total / static_cast<double>(tail) > max_mean_gap) continue;

    // Elementwise median over all aligned windows of the tail.
    std::vector<std::vector<std::size_t>> columns(period);
    for (std::size_t start = n - tail; start + period <= n; ++start) {
      const auto window = canonical_rotation(
          std::vector<std::size_t>(seq.begin() + static_cast<std::ptrdiff_t>(start),
                                   seq.begin() + static_cast<std::ptrdiff_t>(start + period)));
      for (std::size_t k = 0; k < period; ++k) columns[k].push_back(window[k]);
    }
    std::vector<std::size_t> cycle(period);
    for (std::size_t k = 0; k < period; ++k) {
      auto& c = columns[k];
      std::nth_element(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.end());
      cycle[k] = c[c.size() / 2];
    }
    return cycle;
  }
  return {};
}

BestResponseCycle best_response_cycle(const BimatrixGame& game, const MixedProfile& p_start,
                                      double beta, int horizon, const ChoiceModel& model) {
  if (horizon < 1) throw std::invalid_argument("best_response_cycle: horizon must be >= 1");
  validate_profile(game, p_start);
  BestResponseCycle out;
  out.trace_1.reserve(static_cast<std::size_t>(horizon));
  out.trace_2.reserve(static_cast<std::size_t>(horizon));
  MixedProfile p = p_start;
  for (int n = 0; n < horizon; ++n) {
    p = logit_response(game, p, beta, model);
    out.trace_1.push_back(mode_index(p.p1));
    out.trace_2.push_back(mode_index(p.p2));
  }
  out.cycle_1 = periodic_tail(out.trace_1);
  out.cycle_2 = periodic_tail(out.trace_2);
  if (out.cycle_1.empty() || out.cycle_2.empty()) {
    out.exact = false;
    if (out.cycle_1.empty()) out.cycle_1 = approximate_periodic_tail(out.trace_1);
    if (out.cycle_2.empty()) out.cycle_2 = approximate_periodic_tail(out.trace_2);
  }
  return out;
}

std::vector<std::size_t> pure_best_response_cycle(const BimatrixGame& game,
                                                  std::size_t start_action, int horizon) {
  if (start_action >= game.num_actions_1())
    throw std::invalid_argument("pure_best_response_cycle: start action out of range");
  // In a symmetric game the roles are interchangeable and only the action
  // matters; otherwise the state also records who moved last.
  const bool symmetric = game.is_symmetric();
  auto key = [&](int mover, std::size_t action) {
    return std::make_pair(symmetric ? 0 : mover, action);
  };
  std::map<std::pair<int, std::size_t>, std::size_t> seen;
  std::vector<std::size_t> seq{start_action};
  int mover = 1;
  seen[key(mover, start_action)] = 0;
  for (int n = 1; n <= horizon; ++n) {
    const auto last = static_cast<Eigen::Index>(seq.back());
    Eigen::Index reply = 0;
    if (mover == 1) {
      game.payoff_2().row(last).maxCoeff(&reply);
    } else {
      game.payoff_1().col(last).maxCoeff(&reply);
    }
    mover = 3 - mover;
    const auto action = static_cast<std::size_t>(reply);
    auto [it, inserted] = seen.emplace(key(mover, action), seq.size());
    if (!inserted) {
      std::vector<std::size_t> cycle(seq.begin() + static_cast<std::ptrdiff_t>(it->second),
                                     seq.end());
      return canonical_rotation(std::move(cycle));
    }
    seq.push_back(action);
  }
  return {};
}

}  // namespace lqre
