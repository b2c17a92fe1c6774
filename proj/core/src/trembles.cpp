#include "lqre/trembles.hpp"

#include <cmath>
#include <stdexcept>

namespace lqre {

namespace {

double distance(const std::vector<Label>& labels, std::size_t a, std::size_t b,
                TrembleModel::Distance rule) {
  if (rule == TrembleModel::Distance::index)
    return std::abs(static_cast<double>(a) - static_cast<double>(b));
  return std::abs(labels[a].value() - labels[b].value());
}

const char* distance_name(TrembleModel::Distance d) {
  return d == TrembleModel::Distance::index ? "index" : "label";
}

}  // namespace

void validate_tremble(const TrembleModel& model) {
  if (!(model.q >= 0.0 && model.q < 1.0))
    throw std::invalid_argument("tremble q must lie in [0, 1)");
}

Vector tremble_kernel(const std::vector<Label>& labels, std::size_t target,
                      const TrembleModel& model) {
  validate_tremble(model);
  if (target >= labels.size()) throw std::invalid_argument("tremble_kernel: target out of range");
  if (model.distance == TrembleModel::Distance::label)
    for (const Label& l : labels)
      if (!l.is_numeric())
        throw std::invalid_argument("tremble_kernel: label distance needs numeric labels");
  Vector w(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k)
    w(static_cast<Eigen::Index>(k)) = std::pow(model.q, distance(labels, k, target, model.distance));
  return w / w.sum();
}

Vector tremble_kernel(const std::vector<Label>& labels, const Label& target,
                      const TrembleModel& model) {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == target) return tremble_kernel(labels, k, model);
  throw std::invalid_argument("tremble_kernel: target " + target.str() + " is not an action");
}

Matrix tremble_matrix(const std::vector<Label>& labels, const TrembleModel& model) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Matrix pi(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    pi.row(k) = tremble_kernel(labels, static_cast<std::size_t>(k), model).transpose();
  return pi;
}

BimatrixGame target_game(const BimatrixGame& game, const TrembleModel& model) {
  return target_game(game, model, model);
}

BimatrixGame target_game(const BimatrixGame& game, const TrembleModel& model_1,
                         const TrembleModel& model_2) {
  const Matrix pi_1 = tremble_matrix(game.labels_1(), model_1);
  const Matrix pi_2 = tremble_matrix(game.labels_2(), model_2);
  nlohmann::json meta = game.metadata();
  meta["tremble"] = {{"q_1", model_1.q},
                     {"q_2", model_2.q},
                     {"distance_1", distance_name(model_1.distance)},
                     {"distance_2", distance_name(model_2.distance)}};
  return BimatrixGame(game.labels_1(), game.labels_2(), pi_1 * game.payoff_1() * pi_2.transpose(),
                      pi_1 * game.payoff_2() * pi_2.transpose(), std::move(meta));
}

MixedProfile induced_alternative_distribution(const BimatrixGame& game,
                                              const MixedProfile& target_profile,
                                              const TrembleModel& model) {
  return induced_alternative_distribution(game, target_profile, model, model);
}

MixedProfile induced_alternative_distribution(const BimatrixGame& game,
                                              const MixedProfile& target_profile,
                                              const TrembleModel& model_1,
                                              const TrembleModel& model_2) {
  validate_profile(game, target_profile);
  const Matrix pi_1 = tremble_matrix(game.labels_1(), model_1);
  const Matrix pi_2 = tremble_matrix(game.labels_2(), model_2);
  return {pi_1.transpose() * target_profile.p1, pi_2.transpose() * target_profile.p2};
}

}  // namespace lqre
