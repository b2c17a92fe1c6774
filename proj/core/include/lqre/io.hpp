#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lqre/game.hpp"
#include "lqre/limit_qre.hpp"

namespace lqre {

// Fixed text form for reported numbers: 9 significant digits, "inf"/"nan".
std::string format_number(double x);

nlohmann::json label_to_json(const Label& label);
Label label_from_json(const nlohmann::json& j);

// {"labels_1", "labels_2", "payoff_1", "payoff_2", "metadata"}; payoffs are
// arrays of rows. Doubles keep full precision so a game round-trips exactly.
nlohmann::json game_to_json(const BimatrixGame& game);
BimatrixGame game_from_json(const nlohmann::json& j);

BimatrixGame read_game_file(const std::string& path);
void write_game_file(const BimatrixGame& game, const std::string& path);

nlohmann::json profile_to_json(const BimatrixGame& game, const MixedProfile& p);

// Path summary with p*, the per-step spectral radii and how the path ended.
nlohmann::json path_to_json(const BimatrixGame& game, const EvolutionaryPathResult& path);

// "player,label,probability", one row per action of each player.
std::string distribution_csv(const BimatrixGame& game, const MixedProfile& p);

struct SweepRow {
  std::string param;
  double value = 0.0;
  double beta_star = 0.0;
  std::string termination;
  double mean_stat = 0.0;
  std::string mode_label;
  std::string status = "ok";  // error message when the row failed
};

// "param,value,beta_star,termination,mean_stat,mode_label,status".
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows);

// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace lqre
