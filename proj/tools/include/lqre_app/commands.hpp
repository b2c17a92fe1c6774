#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lqre/io.hpp"
#include "lqre/limit_qre.hpp"
#include "lqre/trembles.hpp"
#include "lqre_app/config.hpp"

namespace lqre::app {

struct Solution {
  BimatrixGame game;    // over alternatives
  BimatrixGame solved;  // the target game when q > 0, else the game itself
  TrembleModel tremble;
  ChoiceModel model;
  EvolutionaryPathResult path;
  MixedProfile alternatives;  // distribution over the game's actions at p*
  double mean_stat = 0.0;     // player 1's mean label, NaN for named labels
  std::string mode_label;     // player 1's modal label
};

Solution solve(const Params& p);
nlohmann::json solution_json(const Solution& s);
// Distribution over alternatives, "player,label,probability".
std::string solution_csv(const Solution& s);

// from, from + step, ... up to `to` inclusive.
std::vector<double> sweep_values(double from, double to, double step);

// One row per value, computed on up to `threads` workers; row order follows
// `values`. Failures land in the status column.
std::vector<SweepRow> sweep(const Params& p, const std::string& param,
                            const std::vector<double>& values, int threads = 1);

struct CycleResult {
  bool pure = false;
  double beta = 0.0;
  bool exact = true;
  // Logit mode: one cycle per player. Pure mode: the alternating best-reply
  // cycle of both players in cycle_1, cycle_2 empty.
  std::vector<std::size_t> cycle_1;
  std::vector<std::size_t> cycle_2;
  std::vector<Label> labels_1;
  std::vector<Label> labels_2;
};

// Logit mode starts the dynamic at p* of a fresh solve with the same
// parameters; pure mode starts player 1 at `start` (the first action if unset).
CycleResult cycle(const Params& p, double beta, int horizon, bool pure,
                  std::optional<std::string> start = std::nullopt);
// "player,position,index,label"; pure cycles use player "both".
std::string cycle_csv(const CycleResult& c);
nlohmann::json cycle_json(const CycleResult& c);

}  // namespace lqre::app
