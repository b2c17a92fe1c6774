#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lqre::app {

struct TableCell {
  std::string row;
  std::string column;
  double computed = 0.0;
  std::optional<double> reference;

  // |computed - reference|; 0 when both are the same infinity.
  std::optional<double> delta() const;
};

struct Table {
  std::string name;
  std::vector<TableCell> cells;

  double max_abs_delta() const;
  const TableCell& at(const std::string& row, const std::string& column) const;
};

// Four-action payoffs at theta next to the printed pattern.
Table table1(double theta = 0.9);
// Limit distribution, limit precision and restabilization precision for
// theta in {0.49, 0.5, 0.7, 0.9}.
Table table2();
// All-pay payoffs for sigma = 0.3 on the 0.1 grid plus the Bayesian bid.
Table table3();
// Six-node centipede: expected payoff of each exit date against four
// experimental exit distributions.
Table tableT1();

Table make_table(const std::string& name);

// "row,column,computed,reference,delta", then a max_abs_delta summary row.
std::string table_csv(const Table& t);

}  // namespace lqre::app
