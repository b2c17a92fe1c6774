#include "lqre/game.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lqre {

double Label::value() const {
  if (const auto* v = std::get_if<double>(&value_)) return *v;
  throw std::invalid_argument("label '" + std::get<std::string>(value_) + "' is not numeric");
}

std::string Label::str() const {
  if (const auto* s = std::get_if<std::string>(&value_)) return *s;
  std::ostringstream os;
  os.precision(12);
  os << std::get<double>(value_);
  return os.str();
}

std::vector<Label> numeric_labels(const std::vector<double>& values) {
  return {values.begin(), values.end()};
}

std::vector<Label> integer_labels(int first, int last, int step) {
  if (step <= 0) throw std::invalid_argument("integer_labels: step must be positive");
  std::vector<Label> out;
  for (int v = first; v <= last; v += step) out.emplace_back(v);
  return out;
}

BimatrixGame::BimatrixGame(std::vector<Label> labels_1, std::vector<Label> labels_2,
                           Matrix payoff_1, Matrix payoff_2, nlohmann::json metadata)
    : labels_1_(std::move(labels_1)),
      labels_2_(std::move(labels_2)),
      payoff_1_(std::move(payoff_1)),
      payoff_2_(std::move(payoff_2)),
      metadata_(std::move(metadata)) {
  if (labels_1_.size() < 2 || labels_2_.size() < 2)
    throw std::invalid_argument("BimatrixGame: each player needs at least two actions");
  const auto n1 = static_cast<Eigen::Index>(labels_1_.size());
  const auto n2 = static_cast<Eigen::Index>(labels_2_.size());
  if (payoff_1_.rows() != n1 || payoff_1_.cols() != n2 || payoff_2_.rows() != n1 ||
      payoff_2_.cols() != n2)
    throw std::invalid_argument("BimatrixGame: payoff matrices must be |A1| x |A2|");
  if (!payoff_1_.allFinite() || !payoff_2_.allFinite())
    throw std::invalid_argument("BimatrixGame: payoffs must be finite");
}

const std::vector<Label>& BimatrixGame::labels(int player) const {
  if (player == 1) return labels_1_;
  if (player == 2) return labels_2_;
  throw std::invalid_argument("player must be 1 or 2");
}

double BimatrixGame::max_abs_payoff() const {
  return std::max(payoff_1_.cwiseAbs().maxCoeff(), payoff_2_.cwiseAbs().maxCoeff());
}

bool BimatrixGame::is_symmetric(double tol) const {
  if (payoff_1_.rows() != payoff_1_.cols()) return false;
  if (!(labels_1_ == labels_2_)) return false;
  return (payoff_1_ - payoff_2_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

std::size_t BimatrixGame::index_of(int player, const Label& label) const {
  const auto& ls = labels(player);
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == label) return i;
  throw std::invalid_argument("label '" + label.str() + "' not in player " +
                              std::to_string(player) + "'s action set");
}

bool is_probability_vector(const Vector& v, double tol) {
  if (v.size() == 0 || !v.allFinite()) return false;
  if ((v.array() < 0.0).any()) return false;
  return std::abs(v.sum() - 1.0) <= tol;
}

void validate_profile(const BimatrixGame& game, const MixedProfile& p) {
  if (static_cast<std::size_t>(p.p1.size()) != game.num_actions_1() ||
      static_cast<std::size_t>(p.p2.size()) != game.num_actions_2())
    throw std::invalid_argument("profile dimensions do not match the game");
  if (!is_probability_vector(p.p1) || !is_probability_vector(p.p2))
    throw std::invalid_argument("profile entries must be nonnegative and sum to one");
}

MixedProfile uniform_profile(const BimatrixGame& game) {
  const auto n1 = static_cast<Eigen::Index>(game.num_actions_1());
  const auto n2 = static_cast<Eigen::Index>(game.num_actions_2());
  return {Vector::Constant(n1, 1.0 / static_cast<double>(n1)),
          Vector::Constant(n2, 1.0 / static_cast<double>(n2))};
}

MixedProfile point_mass_profile(const BimatrixGame& game, std::size_t k1, std::size_t k2) {
  if (k1 >= game.num_actions_1() || k2 >= game.num_actions_2())
    throw std::invalid_argument("point_mass_profile: action index out of range");
  MixedProfile p{Vector::Zero(static_cast<Eigen::Index>(game.num_actions_1())),
                 Vector::Zero(static_cast<Eigen::Index>(game.num_actions_2()))};
  p.p1(static_cast<Eigen::Index>(k1)) = 1.0;
  p.p2(static_cast<Eigen::Index>(k2)) = 1.0;
  return p;
}

PayoffVectors expected_payoff_vectors(const BimatrixGame& game, const MixedProfile& p) {
  if (static_cast<std::size_t>(p.p1.size()) != game.num_actions_1() ||
      static_cast<std::size_t>(p.p2.size()) != game.num_actions_2())
    throw std::invalid_argument("expected_payoff_vectors: dimension mismatch");
  return {game.payoff_1() * p.p2, game.payoff_2().transpose() * p.p1};
}

std::vector<std::size_t> argmax_set(const Vector& u, double tie_tol) {
  const double top = u.maxCoeff();
  std::vector<std::size_t> out;
  for (Eigen::Index k = 0; k < u.size(); ++k)
    if (u(k) >= top - tie_tol) out.push_back(static_cast<std::size_t>(k));
  return out;
}

BestResponses best_response_set(const BimatrixGame& game, const MixedProfile& p,
                                double tie_tol) {
  const auto u = expected_payoff_vectors(game, p);
  return {argmax_set(u.u1, tie_tol), argmax_set(u.u2, tie_tol)};
}

BimatrixGame rescale_payoffs(const BimatrixGame& game, double alpha_1, double alpha_2) {
  if (!(alpha_1 > 0.0) || !(alpha_2 > 0.0))
    throw std::invalid_argument("rescale_payoffs: factors must be positive");
  auto meta = game.metadata();
  meta["rescaled"] = {alpha_1, alpha_2};
  return {game.labels_1(), game.labels_2(), alpha_1 * game.payoff_1(), alpha_2 * game.payoff_2(),
          std::move(meta)};
}

BimatrixGame symmetric_game(std::vector<Label> labels, Matrix payoff, nlohmann::json metadata) {
  Matrix transposed = payoff.transpose();
  auto labels_2 = labels;
  return {std::move(labels), std::move(labels_2), std::move(payoff), std::move(transposed),
          std::move(metadata)};
}

double max_abs_diff(const MixedProfile& a, const MixedProfile& b) {
  return std::max((a.p1 - b.p1).cwiseAbs().maxCoeff(), (a.p2 - b.p2).cwiseAbs().maxCoeff());
}

std::vector<std::pair<std::size_t, std::size_t>> pure_nash_equilibria(const BimatrixGame& game,
                                                                     double tie_tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const Matrix& a = game.payoff_1();
  const Matrix& b = game.payoff_2();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < a.col(j).maxCoeff() - tie_tol) continue;
      if (b(i, j) < b.row(i).maxCoeff() - tie_tol) continue;
      out.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return out;
}

}  // namespace lqre
