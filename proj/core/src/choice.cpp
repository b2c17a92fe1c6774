#include "lqre/choice.hpp"

#include <cmath>
#include <stdexcept>

namespace lqre {

ChoiceModel ChoiceModel::satisficing(double exponent) {
  if (!(exponent >= 1.0)) throw std::invalid_argument("satisficing exponent c must be >= 1");
  return {Kind::satisficing, exponent};
}

std::string ChoiceModel::name() const {
  if (kind == Kind::logit) return "logit";
  return "satisficing(c=" + std::to_string(c) + ")";
}

Vector choice_distribution(const Vector& u, double beta, const ChoiceModel& model) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("choice_distribution: beta must be finite and >= 0");
  if (u.size() == 0 || !u.allFinite())
    throw std::invalid_argument("choice_distribution: payoffs must be finite");
  if (model.kind == ChoiceModel::Kind::satisficing && !(model.c >= 1.0))
    throw std::invalid_argument("choice_distribution: satisficing exponent must be >= 1");

  const double top = u.maxCoeff();
  Vector w(u.size());
  if (model.kind == ChoiceModel::Kind::logit) {
    w = (beta * (u.array() - top)).exp();
  } else {
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      const double gap = beta * (top - u(k));
      // gap == 0 must give weight exactly 1, pow(0, c) does that for c >= 1.
      w(k) = std::exp(-std::pow(gap, model.c));
    }
  }
  return w / w.sum();
}

}  // namespace lqre
