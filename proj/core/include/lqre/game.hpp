#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace lqre {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Absolute tolerance used when collecting payoff-argmax ties.
inline constexpr double kTieTolerance = 1e-9;

// An action label: either a numeric value carrying the action's meaning
// (exit date, claim, shading coefficient) or a plain name ("b_S").
class Label {
 public:
  Label(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Label(int value) : value_(static_cast<double>(value)) {}  // NOLINT
  Label(std::string name) : value_(std::move(name)) {}  // NOLINT
  Label(const char* name) : value_(std::string(name)) {}  // NOLINT

  bool is_numeric() const { return std::holds_alternative<double>(value_); }
  // Throws std::invalid_argument for named labels.
  double value() const;
  std::string str() const;

  friend bool operator==(const Label& a, const Label& b) { return a.value_ == b.value_; }

 private:
  std::variant<double, std::string> value_;
};

std::vector<Label> numeric_labels(const std::vector<double>& values);
std::vector<Label> integer_labels(int first, int last, int step = 1);

// Finite two-player game in dense bimatrix form. payoff_1(k1, k2) and
// payoff_2(k1, k2) are indexed by (player-1 action, player-2 action).
// Immutable once constructed.
class BimatrixGame {
 public:
  BimatrixGame(std::vector<Label> labels_1, std::vector<Label> labels_2, Matrix payoff_1,
               Matrix payoff_2, nlohmann::json metadata = nlohmann::json::object());

  const std::vector<Label>& labels_1() const { return labels_1_; }
  const std::vector<Label>& labels_2() const { return labels_2_; }
  const std::vector<Label>& labels(int player) const;
  const Matrix& payoff_1() const { return payoff_1_; }
  const Matrix& payoff_2() const { return payoff_2_; }
  const nlohmann::json& metadata() const { return metadata_; }

  std::size_t num_actions_1() const { return labels_1_.size(); }
  std::size_t num_actions_2() const { return labels_2_.size(); }
  std::size_t num_actions(int player) const { return labels(player).size(); }

  double max_abs_payoff() const;
  bool is_symmetric(double tol = 0.0) const;

  // Index of `label` in the player's action list; throws if absent.
  std::size_t index_of(int player, const Label& label) const;

 private:
  std::vector<Label> labels_1_;
  std::vector<Label> labels_2_;
  Matrix payoff_1_;
  Matrix payoff_2_;
  nlohmann::json metadata_;
};

struct MixedProfile {
  Vector p1;
  Vector p2;

  const Vector& player(int i) const { return i == 1 ? p1 : p2; }
};

struct PayoffVectors {
  Vector u1;
  Vector u2;
};

struct BestResponses {
  std::vector<std::size_t> player_1;
  std::vector<std::size_t> player_2;
};

// Throws std::invalid_argument unless `p` is a probability profile matching
// the game's dimensions (entries >= 0, sums within 1e-12 of one).
void validate_profile(const BimatrixGame& game, const MixedProfile& p);
bool is_probability_vector(const Vector& v, double tol = 1e-12);

MixedProfile uniform_profile(const BimatrixGame& game);
MixedProfile point_mass_profile(const BimatrixGame& game, std::size_t k1, std::size_t k2);

// u1[k] = sum_h payoff_1[k,h] p2[h];  u2[h] = sum_k payoff_2[k,h] p1[k].
PayoffVectors expected_payoff_vectors(const BimatrixGame& game, const MixedProfile& p);

std::vector<std::size_t> argmax_set(const Vector& u, double tie_tol = kTieTolerance);
BestResponses best_response_set(const BimatrixGame& game, const MixedProfile& p,
                                double tie_tol = kTieTolerance);

// Pure profiles (k1, k2) where each action is a best response to the other.
std::vector<std::pair<std::size_t, std::size_t>> pure_nash_equilibria(
    const BimatrixGame& game, double tie_tol = kTieTolerance);

BimatrixGame rescale_payoffs(const BimatrixGame& game, double alpha_1, double alpha_2);

// Symmetric game with payoff_2 = payoff_1^T and identical labels.
BimatrixGame symmetric_game(std::vector<Label> labels, Matrix payoff,
                            nlohmann::json metadata = nlohmann::json::object());

// L-infinity distance between two profiles of the same shape.
double max_abs_diff(const MixedProfile& a, const MixedProfile& b);

}  // namespace lqre
