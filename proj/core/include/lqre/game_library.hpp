#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lqre/game.hpp"

namespace lqre {

// Symmetric four-action game with a single parameter theta < 1 in the
// top-right cell; theta below 1/2 gives a pure equilibrium at (4, 4).
BimatrixGame four_action_game(double theta);

// Standard zero-sum rock-paper-scissors with win 1, loss -1.
BimatrixGame rock_paper_scissors();

// ---------------------------------------------------------------- centipede

struct CentipedeSpec {
  enum class Pie { linear, exponential, constant };
  enum class Share { constant, decaying };

  std::vector<double> dates_1;
  std::vector<double> dates_2;

  Pie pie = Pie::linear;
  double s0 = 1.0;         // exponential/constant pie level
  double b = 0.0;          // exponential growth over the horizon
  double tau_bar = 100.0;  // horizon

  Share share = Share::constant;
  double a = 0.7;          // constant share of the early exiter
  double alpha = 0.0;      // decaying share a(t) = 1 - exp(-alpha t / 100) / 2
};

// Both players exit at 1..tau_bar, S(t) = t, share a.
CentipedeSpec linear_centipede_spec(double a, int tau_bar = 100);
// Dates 0, rho, .., n rho with rho = tau_bar / n, S(t) = s0 exp(b t / tau_bar).
CentipedeSpec exponential_centipede_spec(double a, double b, double s0 = 1.0, int n = 100,
                                         double tau_bar = 100.0);
// Constant pie s0 with the decaying share rule.
CentipedeSpec constant_centipede_spec(double alpha, double s0 = 1.0, int n = 100,
                                      double tau_bar = 100.0);

// Alternating timing: 2n dates j rho (j = 0..2n-1, rho = tau_bar / (2n - 1)),
// player 1 on even j and player 2 on odd j, so player 1 moves first at 0 and
// player 2 last at tau_bar.
std::pair<std::vector<double>, std::vector<double>> alternating_dates(int n, double tau_bar);

double centipede_pie(const CentipedeSpec& spec, double tau);
double centipede_share(const CentipedeSpec& spec, double tau);

BimatrixGame centipede(const CentipedeSpec& spec);

// Centipede given as an explicit alternating tree. Node k = 1..N is player
// 1's when k is odd; leaf k is the payoff pair when the mover exits at k.
// Exit dates are node numbers, "never" is N + 1.
struct CentipedeTree {
  std::string name;
  std::vector<std::pair<double, double>> leaves;  // one per node
  std::pair<double, double> terminal;             // nobody exits
};

CentipedeTree mp6_tree();
CentipedeTree nt12_tree();

// With constrain_last_exit, player 2 may not continue at the last node.
BimatrixGame centipede_from_tree(const CentipedeTree& tree, bool constrain_last_exit = false);
BimatrixGame centipede_mp6(bool constrain_last_exit = false);
BimatrixGame centipede_nt12(bool constrain_last_exit = false);

// Distribution of the earliest exit min(t1, t2) over the sorted union of the
// players' numeric labels. For tree games the last entry ("never") is the
// terminal node.
struct NodeDistribution {
  std::vector<double> labels;
  Vector probability;
};
NodeDistribution terminal_node_distribution(const BimatrixGame& game, const MixedProfile& p);

// Inverse of terminal_node_distribution for a tree game: per-player exit-date
// distributions (independent draws) reproducing the given node masses.
// `node_mass` has N + 1 entries and is normalized internally.
MixedProfile exit_distributions_from_nodes(const CentipedeTree& tree,
                                           const std::vector<double>& node_mass);

// ---------------------------------------------------------------- traveler

std::vector<Label> traveler_claims(int low = 80, int high = 200, int step = 1);
BimatrixGame travelers_dilemma(double delta, std::vector<Label> claims = traveler_claims());

// ---------------------------------------------------------------- 11-20

struct MoneyRequestSpec {
  enum class Version { basic, cycle, costless, fine };

  Version version = Version::basic;
  double pi = 0.0;      // mass of stubborn opponents on the top claim
  int variant = 1;      // 2 drops the top claim from the strategic set
  double alpha = 0.01;  // bonus slope of the fine version
};

// Claim set of the version, 11..20 or 110..200.
std::vector<int> money_request_claims(MoneyRequestSpec::Version version);
// Raw payoff to the claimant of t_i against t_j.
double money_request_payoff(const MoneyRequestSpec& spec, int t_i, int t_j);
BimatrixGame money_request(const MoneyRequestSpec& spec);

// Claim distribution of the whole population: strategic play p weighted by
// 1 - pi, plus pi on the top claim. Labels cover the full claim set.
std::pair<std::vector<int>, Vector> money_request_population(const MoneyRequestSpec& spec,
                                                             const BimatrixGame& game,
                                                             const Vector& strategic);

// ---------------------------------------------------------------- statistics

// sum_k p_k label_k over numeric labels.
double mean_label(const std::vector<Label>& labels, const Vector& p);
// Label of the largest entry of p.
Label mode_label(const std::vector<Label>& labels, const Vector& p);
// p1' payoff_i p2 for player i.
double expected_payoff(const BimatrixGame& game, const MixedProfile& p, int player);

// ---------------------------------------------------------------- data

struct EmpiricalDataset {
  std::string name;
  std::string citation;
  std::vector<double> exit_1;  // percent on player 1's dates 1, 3, 5, never
  std::vector<double> exit_2;  // percent on player 2's dates 2, 4, 6, never
  std::vector<double> printed_payoffs_1;
  std::vector<double> printed_payoffs_2;
};

// Six-node experiments, payoffs printed in cents (ten times the tree units).
std::vector<EmpiricalDataset> six_node_datasets();
inline constexpr double kSixNodePayoffScale = 10.0;

// Observed terminal-node counts for the six-node game (29 games).
std::vector<double> mp6_node_counts();
// Per-player choice frequencies for the twelve-node game.
MixedProfile nt12_choice_distribution();

struct EmpiricalPayoffRow {
  std::vector<Label> dates;
  Vector payoffs;
};
// Expected payoff of each own exit date against the opponent's empirical
// exit distribution, for both players.
std::pair<EmpiricalPayoffRow, EmpiricalPayoffRow> empirical_payoff_table(
    const BimatrixGame& game, const MixedProfile& empirical, double scale = 1.0);

}  // namespace lqre
