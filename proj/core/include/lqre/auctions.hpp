#pragma once

#include <string>
#include <vector>

#include "lqre/game.hpp"

namespace lqre {

// Standard normal cdf and quantile.
double normal_cdf(double x);
double normal_quantile(double p);

// Values v = exp(sigma z), z standard normal (median value 1).
struct QuadratureNode {
  double z = 0.0;
  double value = 0.0;
  double weight = 0.0;
};

// Gauss-Hermite rule for the standard normal (Golub-Welsch), `nodes` odd and
// >= 3; weights sum to 1.
std::vector<QuadratureNode> value_quadrature(double sigma, int nodes);

// Bid as a function of value: linear shading b = lambda v, or the all-pay
// Bayesian equilibrium bid for log-sd sigma,
//   b(v) = int_0^v w f(w) dw = exp(sigma^2 / 2) Phi(ln v / sigma - sigma).
class BidFunction {
 public:
  enum class Kind { linear, bayesian_allpay };

  static BidFunction linear(double lambda);
  static BidFunction bayesian_allpay(double sigma, std::string name = "");

  Kind kind() const { return kind_; }
  double lambda() const { return param_; }
  double sigma() const { return param_; }
  const std::string& name() const { return name_; }

  double operator()(double v) const;
  // Largest bid approached as v grows (infinite for linear lambda > 0).
  double supremum() const;
  // Value at which the bid equals b, for 0 < b < supremum(); requires a
  // strictly increasing bid function.
  double inverse(double b) const;
  bool is_zero() const { return kind_ == Kind::linear && param_ == 0.0; }
  bool same_as(const BidFunction& other) const;

 private:
  BidFunction(Kind kind, double param, std::string name)
      : kind_(kind), param_(param), name_(std::move(name)) {}

  Kind kind_;
  double param_;
  std::string name_;
};

enum class AuctionFormat { first_price, all_pay };
std::string to_string(AuctionFormat f);

struct SigmaComponent {
  double sigma = 0.3;
  double weight = 1.0;
};

struct AuctionSpec {
  AuctionFormat format = AuctionFormat::all_pay;
  std::vector<SigmaComponent> sigma = {{0.3, 1.0}};
  double grid_delta = 0.05;
  std::vector<BidFunction> extra_strategies;
  int quadrature_nodes = 201;
};

// Linear grid {0, delta, 2 delta, ...} strictly below 1.
std::vector<double> shading_grid(double delta);

// P(own bid beats the opponent's | own value v) for values with log-sd
// sigma. When both bid functions coincide the higher value wins.
double win_probability(const BidFunction& own, const BidFunction& other, double own_value,
                       double own_z, double sigma);

// Ex ante payoff of `own` against `other` for one sigma component.
double auction_payoff(AuctionFormat format, const BidFunction& own, const BidFunction& other,
                      double sigma, int nodes = 201);

// Grid strategies first, then extras. Labels: shading factors for the grid,
// names for extras.
BimatrixGame auction_game(const AuctionSpec& spec);

// Closed-form payoffs of two linear strategies (u_1, u_2), using
//   E[e^{sigma z} 1{z - z' > c}] = e^{sigma^2/2} Phi((sigma - c) / sqrt 2),
// c = ln(lambda_2 / lambda_1) / sigma, c = 0 when lambda_1 = lambda_2.
std::pair<double, double> closed_form_linear_payoff(AuctionFormat format, double lambda_1,
                                                    double lambda_2, double sigma);

// sum_k p_k lambda_k; throws if a strategy with weight is not linear.
double expected_shading(const std::vector<Label>& labels, const Vector& p);

// Printed all-pay matrix for sigma = 0.3, delta = 0.1 plus b_S = the sigma = 0.3
// Bayesian bid (11 x 11, last row/column b_S).
Matrix allpay_reference_table();

}  // namespace lqre
