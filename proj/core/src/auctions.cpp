#include "lqre/auctions.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

namespace lqre {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("auction: sigma must be positive and finite");
}

std::string format_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

std::vector<QuadratureNode> value_quadrature(double sigma, int nodes) {
  check_sigma(sigma);
  if (nodes < 3 || nodes % 2 == 0)
    throw std::invalid_argument("value_quadrature: node count must be odd and >= 3");
  // Jacobi matrix of the probabilists' Hermite recurrence.
  Matrix j = Matrix::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Matrix> es(j);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("value_quadrature: eigen decomposition failed");

  std::vector<QuadratureNode> out(static_cast<std::size_t>(nodes));
  double total = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    out[static_cast<std::size_t>(k)].z = es.eigenvalues()(k);
    out[static_cast<std::size_t>(k)].weight = v0 * v0;
    total += v0 * v0;
  }
  // Symmetrize: exact zero at the middle node, mirrored abscissas and weights.
  const int mid = nodes / 2;
  for (int k = 0; k < mid; ++k) {
    auto& lo = out[static_cast<std::size_t>(k)];
    auto& hi = out[static_cast<std::size_t>(nodes - 1 - k)];
    const double z = 0.5 * (hi.z - lo.z);
    const double w = 0.5 * (hi.weight + lo.weight);
    lo.z = -z;
    hi.z = z;
    lo.weight = hi.weight = w;
  }
  out[static_cast<std::size_t>(mid)].z = 0.0;
  total = 0.0;
  for (const auto& n : out) total += n.weight;
  for (auto& n : out) {
    n.weight /= total;
    n.value = std::exp(sigma * n.z);
  }
  return out;
}

BidFunction BidFunction::linear(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("linear bid: lambda must be finite and >= 0");
  return {Kind::linear, lambda, format_double(lambda)};
}

BidFunction BidFunction::bayesian_allpay(double sigma, std::string name) {
  check_sigma(sigma);
  if (name.empty()) name = "beq(" + format_double(sigma) + ")";
  return {Kind::bayesian_allpay, sigma, std::move(name)};
}

double BidFunction::operator()(double v) const {
  if (!(v >= 0.0)) throw std::invalid_argument("bid: value must be >= 0");
  if (kind_ == Kind::linear) return param_ * v;
  if (v == 0.0) return 0.0;
  const double s = param_;
  return std::exp(0.5 * s * s) * normal_cdf(std::log(v) / s - s);
}

double BidFunction::supremum() const {
  if (kind_ == Kind::linear) return param_ > 0.0 ? kInf : 0.0;
  return std::exp(0.5 * param_ * param_);
}

double BidFunction::inverse(double b) const {
  if (!(b > 0.0 && b < supremum())) throw std::invalid_argument("bid inverse: out of range");
  if (kind_ == Kind::linear) return b / param_;
  const double s = param_;
  return std::exp(s * (s + normal_quantile(b * std::exp(-0.5 * s * s))));
}

bool BidFunction::same_as(const BidFunction& other) const {
  return kind_ == other.kind_ && param_ == other.param_;
}

std::string to_string(AuctionFormat f) {
  return f == AuctionFormat::first_price ? "first_price" : "all_pay";
}

std::vector<double> shading_grid(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("shading_grid: delta must lie in (0, 1)");
  std::vector<double> g;
  // Rounded to 12 decimals so 3 * 0.05 is the double nearest 0.15.
  for (int k = 0; k * delta < 1.0 - 1e-9; ++k) g.push_back(std::round(k * delta * 1e12) / 1e12);
  return g;
}

double win_probability(const BidFunction& own, const BidFunction& other, double own_value,
                       double own_z, double sigma) {
  if (own.same_as(other)) return normal_cdf(own_z);
  const double b = own(own_value);
  if (other.is_zero()) return b > 0.0 ? 1.0 : 0.0;
  if (b <= 0.0) return 0.0;
  if (b >= other.supremum()) return 1.0;
  const double threshold = other.inverse(b);
  return normal_cdf(std::log(threshold) / sigma);
}

namespace {

constexpr double kZLimit = 12.0;

double payoff_integrand(AuctionFormat format, const BidFunction& own, const BidFunction& other,
                        double sigma, double z) {
  const double v = std::exp(sigma * z);
  const double win = win_probability(own, other, v, z, sigma);
  const double bid = own(v);
  return format == AuctionFormat::first_price ? (v - bid) * win : v * win - bid;
}

// Cells with a nonlinear bid are integrated adaptively: against a bounded
// bid the win probability reaches 1 with a kink where the own bid meets the
// bound, and a steep nonlinear bid at small sigma is too sharp for the
// Hermite nodes.
std::optional<double> kink(const BidFunction& own, const BidFunction& other, double sigma) {
  const double cap = other.supremum();
  if (!std::isfinite(cap) || !(cap > 0.0) || own.is_zero() || !(own.supremum() > cap)) return std::nullopt;
  const double z = std::log(own.inverse(cap)) / sigma;
  if (std::abs(z) >= kZLimit) return std::nullopt;
  return z;
}

double payoff_on_rule(AuctionFormat format, const BidFunction& own, const BidFunction& other,
                      double sigma, const std::vector<QuadratureNode>& quad) {
  const bool linear = own.kind() == BidFunction::Kind::linear && other.kind() == BidFunction::Kind::linear;
  if (!linear && !own.same_as(other)) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double z) {
      return payoff_integrand(format, own, other, sigma, z) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    };
    const double mid = kink(own, other, sigma).value_or(0.0);
    return gauss_kronrod<double, 61>::integrate(f, -kZLimit, mid, 15, 1e-13) +
           gauss_kronrod<double, 61>::integrate(f, mid, kZLimit, 15, 1e-13);
  }
  double u = 0.0;
  for (const auto& n : quad) {
    const double win = win_probability(own, other, n.value, n.z, sigma);
    const double bid = own(n.value);
    u += n.weight * (format == AuctionFormat::first_price ? (n.value - bid) * win
                                                          : n.value * win - bid);
  }
  return u;
}

}  // namespace

double auction_payoff(AuctionFormat format, const BidFunction& own, const BidFunction& other,
                      double sigma, int nodes) {
  return payoff_on_rule(format, own, other, sigma, value_quadrature(sigma, nodes));
}

BimatrixGame auction_game(const AuctionSpec& spec) {
  if (spec.sigma.empty()) throw std::invalid_argument("auction_game: no sigma component");
  double wsum = 0.0;
  for (const auto& c : spec.sigma) {
    check_sigma(c.sigma);
    if (!(c.weight > 0.0)) throw std::invalid_argument("auction_game: weights must be positive");
    wsum += c.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("auction_game: sigma weights must sum to 1");

  std::vector<BidFunction> strategies;
  std::vector<Label> labels;
  for (double lambda : shading_grid(spec.grid_delta)) {
    strategies.push_back(BidFunction::linear(lambda));
    labels.emplace_back(lambda);
  }
  for (const auto& e : spec.extra_strategies) {
    strategies.push_back(e);
    labels.emplace_back(e.name());
  }

  const auto n = static_cast<Eigen::Index>(strategies.size());
  Matrix u = Matrix::Zero(n, n);
  for (const auto& c : spec.sigma) {
    const auto quad = value_quadrature(c.sigma, spec.quadrature_nodes);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        u(i, j) += c.weight * payoff_on_rule(spec.format, strategies[static_cast<std::size_t>(i)],
                                             strategies[static_cast<std::size_t>(j)], c.sigma,
                                             quad);
  }

  nlohmann::json sig = nlohmann::json::array();
  for (const auto& c : spec.sigma) sig.push_back({{"sigma", c.sigma}, {"weight", c.weight}});
  nlohmann::json extras = nlohmann::json::array();
  for (const auto& e : spec.extra_strategies) extras.push_back(e.name());
  return symmetric_game(std::move(labels), u,
                        {{"family", "auction"},
                         {"format", to_string(spec.format)},
                         {"sigma", sig},
                         {"grid_delta", spec.grid_delta},
                         {"extra_strategies", extras},
                         {"quadrature_nodes", spec.quadrature_nodes},
                         {"tremble_distance", "index"}});
}

std::pair<double, double> closed_form_linear_payoff(AuctionFormat format, double lambda_1,
                                                    double lambda_2, double sigma) {
  check_sigma(sigma);
  if (!(lambda_1 >= 0.0 && lambda_1 < 1.0 && lambda_2 >= 0.0 && lambda_2 < 1.0))
    throw std::invalid_argument("closed_form_linear_payoff: lambdas must lie in [0, 1)");
  const double mean = std::exp(0.5 * sigma * sigma);
  // E[v_i 1{i wins}] for the bidder with shading a against shading b.
  auto win_term = [&](double a, double b) {
    if (a == b) return mean * normal_cdf(sigma / std::sqrt(2.0));
    if (a == 0.0) return 0.0;
    if (b == 0.0) return mean;
    const double c = std::log(b / a) / sigma;
    return mean * normal_cdf((sigma - c) / std::sqrt(2.0));
  };
  auto payoff = [&](double a, double b) {
    const double w = win_term(a, b);
    return format == AuctionFormat::first_price ? (1.0 - a) * w : w - a * mean;
  };
  return {payoff(lambda_1, lambda_2), payoff(lambda_2, lambda_1)};
}

double expected_shading(const std::vector<Label>& labels, const Vector& p) {
  if (static_cast<std::size_t>(p.size()) != labels.size())
    throw std::invalid_argument("expected_shading: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const double w = p(static_cast<Eigen::Index>(k));
    if (w == 0.0) continue;
    if (!labels[k].is_numeric())
      throw std::invalid_argument("expected_shading: strategy " + labels[k].str() + " is not linear");
    s += w * labels[k].value();
  }
  return s;
}

Matrix allpay_reference_table() {
  Matrix t(11, 11);
  t << 0.61, 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.,
       0.94, 0.51, -0.01, -0.09, -0.09, -0.1, -0.1, -0.1, -0.1, -0.1, 0.08,
       0.84, 0.8, 0.4, 0.03, -0.12, -0.17, -0.19, -0.2, -0.2, -0.2, 0.12,
       0.73, 0.73, 0.6, 0.3, 0.02, -0.14, -0.22, -0.27, -0.29, -0.3, 0.14,
       0.63, 0.63, 0.59, 0.43, 0.19, -0.01, -0.17, -0.27, -0.33, -0.36, 0.16,
       0.52, 0.52, 0.51, 0.44, 0.28, 0.09, -0.08, -0.22, -0.32, -0.39, 0.16,
       0.42, 0.42, 0.41, 0.38, 0.29, 0.14, -0.01, -0.16, -0.28, -0.38, 0.15,
       0.31, 0.31, 0.31, 0.3, 0.25, 0.15, 0.02, -0.11, -0.24, -0.35, 0.12,
       0.21, 0.21, 0.21, 0.2, 0.17, 0.11, 0.01, -0.1, -0.22, -0.33, 0.07,
       0.1, 0.1, 0.1, 0.1, 0.09, 0.05, -0.01, -0.11, -0.21, -0.32, 0.01,
       0.61, 0.51, 0.4, 0.3, 0.19, 0.09, 0., -0.1, -0.18, -0.25, 0.18;
  return t;
}

}  // namespace lqre
