#include "lqre_app/tables.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lqre/auctions.hpp"
#include "lqre/game_library.hpp"
#include "lqre/io.hpp"
#include "lqre/limit_qre.hpp"

namespace lqre::app {

std::optional<double> TableCell::delta() const {
  if (!reference) return std::nullopt;
  if (std::isinf(computed) && computed == *reference) return 0.0;
  return std::abs(computed - *reference);
}

double Table::max_abs_delta() const {
  double m = 0.0;
  for (const auto& c : cells)
    if (auto d = c.delta()) m = std::max(m, std::isnan(*d) ? std::numeric_limits<double>::infinity() : *d);
  return m;
}

const TableCell& Table::at(const std::string& row, const std::string& column) const {
  for (const auto& c : cells)
    if (c.row == row && c.column == column) return c;
  throw std::invalid_argument(name + ": no cell (" + row + ", " + column + ")");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string label_text(const Label& l) {
  return l.is_numeric() ? format_number(l.value()) : l.str();
}

}  // namespace

Table table1(double theta) {
  const BimatrixGame g = four_action_game(theta);
  // Printed as (row payoff, column payoff) pairs.
  const double ref_1[4][4] = {{0, 0, 2, theta}, {2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 1}};
  const double ref_2[4][4] = {{0, 2, 0, 0}, {0, 0, 2, 1}, {2, 0, 0, 2}, {theta, 0, 0, 1}};
  Table t{"table1", {}};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const std::string row = std::to_string(i + 1);
      const std::string col = std::to_string(k + 1);
      t.cells.push_back({row, col + ":payoff_1", g.payoff_1()(i, k), ref_1[i][k]});
      t.cells.push_back({row, col + ":payoff_2", g.payoff_2()(i, k), ref_2[i][k]});
    }
  return t;
}

Table table2() {
  struct Row {
    double theta;
    double p[4];
    double beta_star;
    std::optional<double> restab;
  };
  const Row printed[] = {{0.49, {0, 0, 0, 1}, kInf, std::nullopt},
                         {0.5, {0.23, 0.19, 0.15, 0.43}, 3.02, 3.24},
                         {0.7, {0.26, 0.22, 0.18, 0.34}, 2.62, 7.24},
                         {0.9, {0.28, 0.23, 0.19, 0.3}, 2.42, 29.0}};
  Table t{"table2", {}};
  for (const Row& r : printed) {
    const BimatrixGame g = four_action_game(r.theta);
    PathOptions opt;
    opt.nu = 0.02;
    opt.keep_points = false;
    const auto path = evolutionary_path(g, ChoiceModel::logit(), opt);
    const std::string row = format_number(r.theta);
    for (int k = 0; k < 4; ++k)
      t.cells.push_back({row, "p" + std::to_string(k + 1), path.p_star.p1(k), r.p[k]});
    t.cells.push_back({row, "beta_star", path.unbounded ? kInf : path.beta_star, r.beta_star});
    if (path.unbounded) continue;

    BarrierScanOptions scan;
    scan.beta_max = 40.0;
    scan.iteration.max_iter = 20000;
    const auto barrier = thick_barrier_scan(g, ChoiceModel::logit(), path, scan);
    t.cells.push_back({row, "restabilization",
                       barrier.restabilization_beta.value_or(std::numeric_limits<double>::quiet_NaN()),
                       r.restab});
  }
  return t;
}

Table table3() {
  AuctionSpec spec;
  spec.format = AuctionFormat::all_pay;
  spec.sigma = {{0.3, 1.0}};
  spec.grid_delta = 0.1;
  spec.extra_strategies = {BidFunction::bayesian_allpay(0.3)};
  const BimatrixGame g = auction_game(spec);
  const Matrix ref = allpay_reference_table();
  if (g.num_actions_1() != static_cast<std::size_t>(ref.rows()))
    throw std::logic_error("table3: strategy count differs from the printed table");
  Table t{"table3", {}};
  for (Eigen::Index i = 0; i < ref.rows(); ++i)
    for (Eigen::Index k = 0; k < ref.cols(); ++k)
      t.cells.push_back({label_text(g.labels_1()[static_cast<std::size_t>(i)]),
                         label_text(g.labels_2()[static_cast<std::size_t>(k)]),
                         g.payoff_1()(i, k), ref(i, k)});
  return t;
}

Table tableT1() {
  const CentipedeTree tree = mp6_tree();
  const BimatrixGame g = centipede_from_tree(tree);
  Table t{"tableT1", {}};
  for (const auto& d : six_node_datasets()) {
    Vector e1 = Eigen::Map<const Vector>(d.exit_1.data(), static_cast<Eigen::Index>(d.exit_1.size()));
    Vector e2 = Eigen::Map<const Vector>(d.exit_2.data(), static_cast<Eigen::Index>(d.exit_2.size()));
    const MixedProfile emp{e1 / e1.sum(), e2 / e2.sum()};
    const auto [row_1, row_2] = empirical_payoff_table(g, emp, kSixNodePayoffScale);
    const auto n = tree.leaves.size() + 1;
    auto date = [&](const Label& l) {
      return l.value() == static_cast<double>(n) ? std::string("no") : label_text(l);
    };
    for (std::size_t k = 0; k < row_1.dates.size(); ++k)
      t.cells.push_back({d.name, "1:" + date(row_1.dates[k]), row_1.payoffs(static_cast<Eigen::Index>(k)),
                         d.printed_payoffs_1[k]});
    for (std::size_t k = 0; k < row_2.dates.size(); ++k)
      t.cells.push_back({d.name, "2:" + date(row_2.dates[k]), row_2.payoffs(static_cast<Eigen::Index>(k)),
                         d.printed_payoffs_2[k]});
  }
  return t;
}

Table make_table(const std::string& name) {
  if (name == "table1") return table1();
  if (name == "table2") return table2();
  if (name == "table3") return table3();
  if (name == "tableT1") return tableT1();
  throw std::invalid_argument("unknown table '" + name + "' (table1, table2, table3, tableT1)");
}

std::string table_csv(const Table& t) {
  std::ostringstream os;
  os << "row,column,computed,reference,delta\n";
  for (const auto& c : t.cells) {
    os << csv_field(c.row) << ',' << csv_field(c.column) << ',' << format_number(c.computed) << ',';
    if (c.reference) os << format_number(*c.reference);
    os << ',';
    if (auto d = c.delta()) os << format_number(*d);
    os << '\n';
  }
  os << "summary,max_abs_delta," << format_number(t.max_abs_delta()) << ",,\n";
  return os.str();
}

}  // namespace lqre::app
