#include "lqre/game_library.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lqre {

namespace {

void check_dates(const std::vector<double>& dates, const char* who) {
  if (dates.size() < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 dates");
  for (std::size_t k = 0; k < dates.size(); ++k) {
    if (!std::isfinite(dates[k]) || dates[k] < 0.0)
      throw std::invalid_argument(std::string(who) + ": dates must be finite and >= 0");
    if (k > 0 && !(dates[k] > dates[k - 1]))
      throw std::invalid_argument(std::string(who) + ": dates must be strictly increasing");
  }
}

const char* pie_name(CentipedeSpec::Pie pie) {
  switch (pie) {
    case CentipedeSpec::Pie::linear: return "linear";
    case CentipedeSpec::Pie::exponential: return "exponential";
    case CentipedeSpec::Pie::constant: return "constant";
  }
  return "?";
}

const char* version_name(MoneyRequestSpec::Version v) {
  switch (v) {
    case MoneyRequestSpec::Version::basic: return "basic";
    case MoneyRequestSpec::Version::cycle: return "cycle";
    case MoneyRequestSpec::Version::costless: return "costless";
    case MoneyRequestSpec::Version::fine: return "fine";
  }
  return "?";
}

int top_claim(MoneyRequestSpec::Version v) {
  return v == MoneyRequestSpec::Version::fine ? 200 : 20;
}

}  // namespace

BimatrixGame four_action_game(double theta) {
  if (!(theta < 1.0) || !std::isfinite(theta))
    throw std::invalid_argument("four_action_game: theta must be finite and < 1");
  Matrix a(4, 4);
  a << 0, 0, 2, theta,
       2, 0, 0, 0,
       0, 2, 0, 0,
       0, 0, 2, 1;
  return symmetric_game(integer_labels(1, 4), a, {{"family", "four_action"}, {"theta", theta}});
}

BimatrixGame rock_paper_scissors() {
  Matrix a(3, 3);
  a << 0, -1, 1,
       1, 0, -1,
       -1, 1, 0;
  return BimatrixGame({"rock", "paper", "scissors"}, {"rock", "paper", "scissors"}, a, -a,
                      {{"family", "rock_paper_scissors"}});
}

// ---------------------------------------------------------------- centipede

CentipedeSpec linear_centipede_spec(double a, int tau_bar) {
  CentipedeSpec s;
  for (int t = 1; t <= tau_bar; ++t) s.dates_1.push_back(t);
  s.dates_2 = s.dates_1;
  s.pie = CentipedeSpec::Pie::linear;
  s.tau_bar = tau_bar;
  s.a = a;
  return s;
}

CentipedeSpec exponential_centipede_spec(double a, double b, double s0, int n, double tau_bar) {
  if (n < 1) throw std::invalid_argument("exponential_centipede_spec: n must be >= 1");
  CentipedeSpec s;
  const double rho = tau_bar / n;
  for (int k = 0; k <= n; ++k) s.dates_1.push_back(k * rho);
  s.dates_2 = s.dates_1;
  s.pie = CentipedeSpec::Pie::exponential;
  s.s0 = s0;
  s.b = b;
  s.tau_bar = tau_bar;
  s.a = a;
  return s;
}

CentipedeSpec constant_centipede_spec(double alpha, double s0, int n, double tau_bar) {
  CentipedeSpec s = exponential_centipede_spec(0.75, 0.0, s0, n, tau_bar);
  s.pie = CentipedeSpec::Pie::constant;
  s.share = CentipedeSpec::Share::decaying;
  s.alpha = alpha;
  return s;
}

std::pair<std::vector<double>, std::vector<double>> alternating_dates(int n, double tau_bar) {
  if (n < 1) throw std::invalid_argument("alternating_dates: n must be >= 1");
  if (!(tau_bar > 0.0)) throw std::invalid_argument("alternating_dates: tau_bar must be > 0");
  const double rho = tau_bar / (2 * n - 1);
  std::vector<double> d1, d2;
  for (int j = 0; j < 2 * n; ++j) (j % 2 == 0 ? d1 : d2).push_back(j * rho);
  return {d1, d2};
}

double centipede_pie(const CentipedeSpec& spec, double tau) {
  switch (spec.pie) {
    case CentipedeSpec::Pie::linear: return tau;
    case CentipedeSpec::Pie::exponential: return spec.s0 * std::exp(spec.b * tau / spec.tau_bar);
    case CentipedeSpec::Pie::constant: return spec.s0;
  }
  return 0.0;
}

double centipede_share(const CentipedeSpec& spec, double tau) {
  if (spec.share == CentipedeSpec::Share::constant) return spec.a;
  return 1.0 - 0.5 * std::exp(-spec.alpha * tau / 100.0);
}

BimatrixGame centipede(const CentipedeSpec& spec) {
  check_dates(spec.dates_1, "centipede");
  check_dates(spec.dates_2, "centipede");
  if (spec.share == CentipedeSpec::Share::constant && !(spec.a > 0.5 && spec.a <= 1.0))
    throw std::invalid_argument("centipede: share a must lie in (1/2, 1]");
  if (spec.share == CentipedeSpec::Share::decaying && !(spec.alpha >= 0.0))
    throw std::invalid_argument("centipede: alpha must be >= 0");
  if (spec.pie != CentipedeSpec::Pie::linear && !(spec.s0 > 0.0))
    throw std::invalid_argument("centipede: s0 must be > 0");
  if (!(spec.tau_bar > 0.0)) throw std::invalid_argument("centipede: tau_bar must be > 0");

  const auto n1 = static_cast<Eigen::Index>(spec.dates_1.size());
  const auto n2 = static_cast<Eigen::Index>(spec.dates_2.size());
  Matrix u1(n1, n2), u2(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n2; ++j) {
      const double t1 = spec.dates_1[static_cast<std::size_t>(i)];
      const double t2 = spec.dates_2[static_cast<std::size_t>(j)];
      const double tau = std::min(t1, t2);
      const double s = centipede_pie(spec, tau);
      const double a = centipede_share(spec, tau);
      if (t1 < t2) {
        u1(i, j) = a * s;
        u2(i, j) = (1.0 - a) * s;
      } else if (t1 > t2) {
        u1(i, j) = (1.0 - a) * s;
        u2(i, j) = a * s;
      } else {
        u1(i, j) = u2(i, j) = s / 2.0;
      }
    }
  }
  nlohmann::json meta = {{"family", "centipede"}, {"pie", pie_name(spec.pie)},
                         {"tau_bar", spec.tau_bar}};
  if (spec.pie == CentipedeSpec::Pie::exponential) meta["b"] = spec.b;
  if (spec.pie != CentipedeSpec::Pie::linear) meta["s0"] = spec.s0;
  if (spec.share == CentipedeSpec::Share::constant) {
    meta["a"] = spec.a;
  } else {
    meta["alpha"] = spec.alpha;
  }
  return BimatrixGame(numeric_labels(spec.dates_1), numeric_labels(spec.dates_2), u1, u2, meta);
}

CentipedeTree mp6_tree() {
  return {"mp6", {{4, 1}, {2, 8}, {16, 4}, {8, 32}, {64, 16}, {32, 128}}, {256, 64}};
}

CentipedeTree nt12_tree() {
  return {"nt12",
          {{4, 1}, {2, 5}, {8, 2}, {3, 11}, {16, 4}, {6, 22},
           {32, 8}, {11, 45}, {64, 16}, {22, 90}, {128, 32}, {44, 180}},
          {256, 64}};
}

BimatrixGame centipede_from_tree(const CentipedeTree& tree, bool constrain_last_exit) {
  const int n = static_cast<int>(tree.leaves.size());
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("centipede_from_tree: need an even number of nodes >= 2");
  const int never = n + 1;
  std::vector<double> d1, d2;
  for (int k = 1; k <= n; ++k) (k % 2 == 1 ? d1 : d2).push_back(k);
  d1.push_back(never);
  if (!constrain_last_exit) d2.push_back(never);

  const auto n1 = static_cast<Eigen::Index>(d1.size());
  const auto n2 = static_cast<Eigen::Index>(d2.size());
  Matrix u1(n1, n2), u2(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n2; ++j) {
      const int tau = static_cast<int>(std::min(d1[static_cast<std::size_t>(i)],
                                                d2[static_cast<std::size_t>(j)]));
      const auto& leaf =
          tau == never ? tree.terminal : tree.leaves[static_cast<std::size_t>(tau - 1)];
      u1(i, j) = leaf.first;
      u2(i, j) = leaf.second;
    }
  }
  return BimatrixGame(numeric_labels(d1), numeric_labels(d2), u1, u2,
                      {{"family", "centipede_tree"},
                       {"tree", tree.name},
                       {"nodes", n},
                       {"never_label", never},
                       {"constrain_last_exit", constrain_last_exit}});
}

BimatrixGame centipede_mp6(bool constrain_last_exit) {
  return centipede_from_tree(mp6_tree(), constrain_last_exit);
}

BimatrixGame centipede_nt12(bool constrain_last_exit) {
  return centipede_from_tree(nt12_tree(), constrain_last_exit);
}

NodeDistribution terminal_node_distribution(const BimatrixGame& game, const MixedProfile& p) {
  validate_profile(game, p);
  std::map<double, std::pair<double, double>> at;  // label -> (P1 = x, P2 = x)
  for (std::size_t k = 0; k < game.num_actions_1(); ++k)
    at[game.labels_1()[k].value()].first += p.p1(static_cast<Eigen::Index>(k));
  for (std::size_t k = 0; k < game.num_actions_2(); ++k)
    at[game.labels_2()[k].value()].second += p.p2(static_cast<Eigen::Index>(k));

  NodeDistribution out;
  out.probability.resize(static_cast<Eigen::Index>(at.size()));
  double below_1 = 0.0, below_2 = 0.0;  // P(t_i < x)
  Eigen::Index idx = 0;
  for (const auto& [x, pr] : at) {
    // min = x: player 1 at x with player 2 not earlier, or player 2 at x and player 1 later.
    const double m = pr.first * (1.0 - below_2) + pr.second * (1.0 - below_1 - pr.first);
    out.labels.push_back(x);
    out.probability(idx++) = std::max(m, 0.0);
    below_1 += pr.first;
    below_2 += pr.second;
  }
  return out;
}

MixedProfile exit_distributions_from_nodes(const CentipedeTree& tree,
                                           const std::vector<double>& node_mass) {
  const std::size_t n = tree.leaves.size();
  if (node_mass.size() != n + 1)
    throw std::invalid_argument("exit_distributions_from_nodes: need one mass per node plus terminal");
  double total = 0.0;
  for (double m : node_mass) {
    if (!(m >= 0.0)) throw std::invalid_argument("exit_distributions_from_nodes: negative mass");
    total += m;
  }
  if (!(total > 0.0)) throw std::invalid_argument("exit_distributions_from_nodes: zero total mass");

  Vector p1 = Vector::Zero(static_cast<Eigen::Index>(n / 2 + 1));
  Vector p2 = Vector::Zero(static_cast<Eigen::Index>(n / 2 + 1));
  double survive_1 = 1.0, survive_2 = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double m = node_mass[k - 1] / total;
    const bool first = k % 2 == 1;
    const double other = first ? survive_2 : survive_1;
    double share = 0.0;
    if (m > 0.0) {
      if (!(other > 1e-15))
        throw std::invalid_argument("exit_distributions_from_nodes: masses are inconsistent");
      share = m / other;
    }
    const auto slot = static_cast<Eigen::Index>((k - 1) / 2);
    if (first) {
      p1(slot) = share;
      survive_1 -= share;
    } else {
      p2(slot) = share;
      survive_2 -= share;
    }
  }
  if (survive_1 < -1e-12 || survive_2 < -1e-12)
    throw std::invalid_argument("exit_distributions_from_nodes: masses are inconsistent");
  p1(p1.size() - 1) = std::max(survive_1, 0.0);
  p2(p2.size() - 1) = std::max(survive_2, 0.0);
  return {p1 / p1.sum(), p2 / p2.sum()};
}

// ---------------------------------------------------------------- traveler

std::vector<Label> traveler_claims(int low, int high, int step) {
  return integer_labels(low, high, step);
}

BimatrixGame travelers_dilemma(double delta, std::vector<Label> claims) {
  if (!std::isfinite(delta)) throw std::invalid_argument("travelers_dilemma: delta must be finite");
  const auto n = static_cast<Eigen::Index>(claims.size());
  for (Eigen::Index k = 1; k < n; ++k)
    if (!(claims[static_cast<std::size_t>(k)].value() > claims[static_cast<std::size_t>(k - 1)].value()))
      throw std::invalid_argument("travelers_dilemma: claims must be increasing");
  Matrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ti = claims[static_cast<std::size_t>(i)].value();
      const double tj = claims[static_cast<std::size_t>(j)].value();
      const double tau = std::min(ti, tj);
      u(i, j) = ti < tj ? tau + delta : (ti > tj ? tau - delta : tau);
    }
  }
  return symmetric_game(std::move(claims), u, {{"family", "travelers_dilemma"}, {"delta", delta}});
}

// ---------------------------------------------------------------- 11-20

std::vector<int> money_request_claims(MoneyRequestSpec::Version version) {
  std::vector<int> c;
  if (version == MoneyRequestSpec::Version::fine) {
    for (int t = 110; t <= 200; ++t) c.push_back(t);
  } else {
    for (int t = 11; t <= 20; ++t) c.push_back(t);
  }
  return c;
}

double money_request_payoff(const MoneyRequestSpec& spec, int t_i, int t_j) {
  switch (spec.version) {
    case MoneyRequestSpec::Version::basic:
      return t_i + (t_i == t_j - 1 ? 20.0 : 0.0);
    case MoneyRequestSpec::Version::cycle:
      return t_i + ((t_i == t_j - 1 || (t_i == 20 && t_j == 11)) ? 20.0 : 0.0);
    case MoneyRequestSpec::Version::costless:
      if (t_i == 20) return 20.0;
      return t_j == t_i + 1 ? 37.0 : 17.0;
    case MoneyRequestSpec::Version::fine:
      if (t_i == 200) return 20.0;
      if (t_j - 10 <= t_i && t_i < t_j) return 17.0 + 20.0 * (1.0 - spec.alpha * (t_j - t_i - 1));
      return 17.0;
  }
  return 0.0;
}

BimatrixGame money_request(const MoneyRequestSpec& spec) {
  if (!(spec.pi >= 0.0 && spec.pi < 1.0))
    throw std::invalid_argument("money_request: pi must lie in [0, 1)");
  if (spec.variant != 1 && spec.variant != 2)
    throw std::invalid_argument("money_request: variant must be 1 or 2");
  if (!std::isfinite(spec.alpha)) throw std::invalid_argument("money_request: alpha must be finite");
  const int top = top_claim(spec.version);
  std::vector<int> claims = money_request_claims(spec.version);
  if (spec.variant == 2) claims.pop_back();

  const auto n = static_cast<Eigen::Index>(claims.size());
  Matrix u(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int ti = claims[static_cast<std::size_t>(i)];
    const double vs_top = money_request_payoff(spec, ti, top);
    for (Eigen::Index j = 0; j < n; ++j) {
      const int tj = claims[static_cast<std::size_t>(j)];
      u(i, j) = (1.0 - spec.pi) * money_request_payoff(spec, ti, tj) + spec.pi * vs_top;
    }
  }
  std::vector<Label> labels(claims.begin(), claims.end());
  return symmetric_game(std::move(labels), u,
                        {{"family", "money_request"},
                         {"version", version_name(spec.version)},
                         {"pi", spec.pi},
                         {"variant", spec.variant},
                         {"alpha", spec.alpha}});
}

std::pair<std::vector<int>, Vector> money_request_population(const MoneyRequestSpec& spec,
                                                             const BimatrixGame& game,
                                                             const Vector& strategic) {
  const std::vector<int> claims = money_request_claims(spec.version);
  if (static_cast<std::size_t>(strategic.size()) != game.num_actions_1())
    throw std::invalid_argument("money_request_population: size mismatch");
  Vector pop = Vector::Zero(static_cast<Eigen::Index>(claims.size()));
  for (std::size_t k = 0; k < game.num_actions_1(); ++k) {
    const int t = static_cast<int>(game.labels_1()[k].value());
    pop(t - claims.front()) += (1.0 - spec.pi) * strategic(static_cast<Eigen::Index>(k));
  }
  pop(pop.size() - 1) += spec.pi;
  return {claims, pop};
}

// ---------------------------------------------------------------- statistics

double mean_label(const std::vector<Label>& labels, const Vector& p) {
  if (static_cast<std::size_t>(p.size()) != labels.size())
    throw std::invalid_argument("mean_label: size mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < labels.size(); ++k)
    m += p(static_cast<Eigen::Index>(k)) * labels[k].value();
  return m;
}

Label mode_label(const std::vector<Label>& labels, const Vector& p) {
  if (static_cast<std::size_t>(p.size()) != labels.size() || p.size() == 0)
    throw std::invalid_argument("mode_label: size mismatch");
  Eigen::Index idx = 0;
  p.maxCoeff(&idx);
  return labels[static_cast<std::size_t>(idx)];
}

double expected_payoff(const BimatrixGame& game, const MixedProfile& p, int player) {
  validate_profile(game, p);
  if (player != 1 && player != 2) throw std::invalid_argument("expected_payoff: player must be 1 or 2");
  const Matrix& u = player == 1 ? game.payoff_1() : game.payoff_2();
  return p.p1.dot(u * p.p2);
}

// ---------------------------------------------------------------- data

std::vector<EmpiricalDataset> six_node_datasets() {
  return {
      {"MP", "McKelvey and Palfrey (1992)",
       {0, 11.5, 63.2, 25.3}, {10.4, 35.1, 40.9, 13.6},
       {40, 145, 379, 510}, {80, 287, 429, 267}},
      {"KT", "Kawagoe and Takizawa (2012)",
       {2.3, 2.3, 62.7, 32.6}, {2.3, 7.1, 69.7, 20.9},
       {40, 156, 585, 764}, {78, 306, 519, 310}},
      {"PVHs", "Palacios-Huerta and Volij (2009), students",
       {7.5, 41.8, 40.6, 10.1}, {16.2, 59.1, 24.6, 0},
       {40, 137, 208, 129}, {74, 179, 212, 147}},
      {"SLS", "Levitt, List and Sadoff (2011)",
       {3.9, 18.6, 45.5, 32}, {10.2, 31.6, 36.8, 21.4},
       {40, 145, 400, 693}, {77, 256, 490, 285}},
  };
}

std::vector<double> mp6_node_counts() { return {0, 3, 3, 9, 10, 3, 1}; }

MixedProfile nt12_choice_distribution() {
  Vector p1(7), p2(7);
  p1 << 0.005, 0.016, 0.054, 0.261, 0.331, 0.225, 0.108;
  p2 << 0.009, 0.017, 0.113, 0.331, 0.311, 0.143, 0.076;
  return {p1 / p1.sum(), p2 / p2.sum()};
}

std::pair<EmpiricalPayoffRow, EmpiricalPayoffRow> empirical_payoff_table(
    const BimatrixGame& game, const MixedProfile& empirical, double scale) {
  const PayoffVectors u = expected_payoff_vectors(game, empirical);
  return {{game.labels_1(), scale * u.u1}, {game.labels_2(), scale * u.u2}};
}

}  // namespace lqre
