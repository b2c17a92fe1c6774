#pragma once

#include <vector>

#include "lqre/game.hpp"

namespace lqre {

// Implementation noise around an intended (target) action: alternative k is
// played with weight q^d(k, target), normalized over the feasible labels.
struct TrembleModel {
  enum class Distance { label, index };

  double q = 0.0;
  Distance distance = Distance::label;  // |label difference| or |index difference|

  static TrembleModel none() { return {}; }
};

void validate_tremble(const TrembleModel& model);

// Row vector over `labels` for the given target index; q = 0 is a point mass.
Vector tremble_kernel(const std::vector<Label>& labels, std::size_t target,
                      const TrembleModel& model);
Vector tremble_kernel(const std::vector<Label>& labels, const Label& target,
                      const TrembleModel& model);

// Row-stochastic matrix, row kappa = tremble_kernel(labels, kappa).
Matrix tremble_matrix(const std::vector<Label>& labels, const TrembleModel& model);

// Game whose actions are targets: payoff_i = Pi_1 payoff_i Pi_2^T, so each
// player's expectation includes her own tremble as well as the opponent's.
BimatrixGame target_game(const BimatrixGame& game, const TrembleModel& model);
BimatrixGame target_game(const BimatrixGame& game, const TrembleModel& model_1,
                         const TrembleModel& model_2);

// Distribution over alternatives generated by a profile over targets.
MixedProfile induced_alternative_distribution(const BimatrixGame& game,
                                              const MixedProfile& target_profile,
                                              const TrembleModel& model);
MixedProfile induced_alternative_distribution(const BimatrixGame& game,
                                              const MixedProfile& target_profile,
                                              const TrembleModel& model_1,
                                              const TrembleModel& model_2);

}  // namespace lqre
