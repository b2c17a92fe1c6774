#pragma once

#include <string>

#include "lqre/game.hpp"

namespace lqre {

// Stochastic choice rule mapping a payoff vector to choice probabilities.
//
//   logit:        p_k ~ exp(beta * u_k)
//   satisficing:  p_k ~ exp(-(beta * (u_max - u_k))^c),  c >= 1
//
// Satisficing with c = 1 is logit. Larger c flattens the weights among
// actions within 1/beta of the best and cuts off the rest sharply.
struct ChoiceModel {
  enum class Kind { logit, satisficing };

  Kind kind = Kind::logit;
  double c = 1.0;

  static ChoiceModel logit() { return {}; }
  static ChoiceModel satisficing(double exponent);

  bool is_logit() const { return kind == Kind::logit; }
  std::string name() const;
};

// Probability vector over actions. Computed relative to the best payoff so
// that beta * range(u) up to ~700 cannot overflow. Throws on beta < 0 or
// non-finite payoffs.
Vector choice_distribution(const Vector& u, double beta, const ChoiceModel& model);

}  // namespace lqre
