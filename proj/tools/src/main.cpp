#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lqre/io.hpp"
#include "lqre_app/commands.hpp"
#include "lqre_app/config.hpp"
#include "lqre_app/tables.hpp"

namespace {

using lqre::app::Params;

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Flags shared by the game commands, collected as text into a Params.
struct GameFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::string game;
  std::string kind;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("game,--game", game,
                    "game family (four-action, rps, centipede, centipede-tree, travelers, "
                    "money-request, auction, file)");
    cmd->add_option("kind", kind,
                    "family kind: centipede pie, tree, 11-20 version, auction rule, file path");
    cmd->add_option("--config", config, "JSON file of parameters; flags win on conflict");
    const std::vector<std::pair<std::string, std::string>> options = {
        {"nu", "precision increment (default: 1% of the largest absolute payoff)"},
        {"beta-cap", "precision cap (default: 5000 increments)"},
        {"tremble-q", "tremble decay q in [0, 1); solves the target game when > 0"},
        {"model", "choice model: logit or satisficing"},
        {"c", "satisficing exponent"},
        {"scale-1", "payoff factor for player 1"},
        {"scale-2", "payoff factor for player 2"},
        {"max-iter", "iteration budget per precision"},
        {"tol", "fixed-point tolerance (sup norm)"},
        {"theta", "four-action: top-right payoff"},
        {"pie", "centipede: linear, exponential or constant"},
        {"a", "centipede: share of the first to exit"},
        {"b", "centipede: exponential growth"},
        {"s0", "centipede: initial pie"},
        {"n", "centipede: number of dates"},
        {"tau-bar", "centipede: horizon"},
        {"alpha", "centipede: share decay; 11-20 fine: bonus slope"},
        {"timing", "centipede: simultaneous or alternating"},
        {"tree", "centipede-tree: mp6 or nt12"},
        {"delta", "travelers: penalty; auction: shading grid step"},
        {"low", "travelers: lowest claim"},
        {"high", "travelers: highest claim"},
        {"claim-step", "travelers: claim spacing"},
        {"version", "11-20: basic, cycle, costless or fine"},
        {"pi", "11-20: mass of stubborn types on the top claim"},
        {"variant", "11-20: 1 keeps the top claim, 2 drops it"},
        {"rule", "auction: first-price or all-pay"},
        {"sigma", "auction: value log-sd, or a comma list for a mixture"},
        {"weights", "auction: mixture weights"},
        {"extra", "auction: extra strategies, e.g. beq:0.3"},
        {"nodes", "auction: quadrature nodes (odd)"},
        {"path", "file: game JSON"},
    };
    for (const auto& [name, help] : options) cmd->add_option("--" + name, values[name], help);
    cmd->add_flag("--constrain-last", switches["constrain-last"],
                  "centipede-tree: player 2 must exit at the last node");
  }

  Params collect(CLI::App* cmd) const {
    Params flags;
    if (!game.empty()) flags.set("game", game);
    for (const auto& [name, value] : values)
      if (cmd->count("--" + name) > 0) flags.set(name, value);
    for (const auto& [name, on] : switches)
      if (on) flags.set(name, "true");
    Params p = config.empty() ? flags : Params::merged(Params::from_file(config), flags);
    if (!p.has("game")) throw ConfigError("no game given");
    if (!kind.empty()) {
      const auto& fam = lqre::app::family(p.str("game"));
      if (fam.kind_param.empty())
        throw ConfigError("game " + fam.name + " takes no second word ('" + kind + "')");
      p.set(fam.kind_param, kind);
    }
    return p;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void check_format(const std::string& f) {
  if (f != "csv" && f != "json") throw ConfigError("--format must be csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit logit QRE along the evolutionary precision path"};
  app.require_subcommand(1);

  std::string out;
  std::string format;
  int threads = 1;
  auto output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "output file (solve: path prefix for .json and .csv)");
    cmd->add_option("--format", format, "csv or json");
  };

  GameFlags solve_flags, sweep_flags, cycle_flags, dump_flags;

  auto* solve = app.add_subcommand("solve", "run the evolutionary path and report p*, beta*");
  solve_flags.attach(solve);
  output_flags(solve);

  auto* sweep = app.add_subcommand("sweep", "solve over a range of one parameter");
  sweep_flags.attach(sweep);
  output_flags(sweep);
  std::string sweep_param;
  double from = 0, to = 0, step = 0;
  std::vector<double> values;
  sweep->add_option("--param", sweep_param, "a, b, delta, theta, sigma, q or pi")->required();
  sweep->add_option("--from", from, "first value");
  sweep->add_option("--to", to, "last value (inclusive)");
  sweep->add_option("--step", step, "spacing");
  sweep->add_option("--values", values, "explicit values instead of a range")->delimiter(',');
  sweep->add_option("--threads", threads, "rows solved concurrently")->check(CLI::PositiveNumber);

  auto* cyc = app.add_subcommand("cycle", "best-response cycle above the limit precision");
  cycle_flags.attach(cyc);
  output_flags(cyc);
  double beta = 0.0;
  int horizon = 3000;
  bool pure = false;
  std::string start;
  cyc->add_option("--beta", beta, "precision of the logit dynamic");
  cyc->add_option("--horizon", horizon, "iterations recorded");
  cyc->add_flag("--pure", pure, "alternating pure best replies instead of the logit dynamic");
  cyc->add_option("--start", start, "pure mode: player 1's first action (label)");

  auto* table = app.add_subcommand("table", "recompute a reference table with per-cell deltas");
  std::string table_name;
  table->add_option("name", table_name, "table1, table2, table3 or tableT1")->required();
  output_flags(table);

  auto* dump = app.add_subcommand("dump-game", "write the game as JSON");
  dump_flags.attach(dump);
  dump->add_option("--out", out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (solve->parsed()) {
      Params p = solve_flags.collect(solve);
      lqre::app::validate_params(p);
      if (format.empty()) format = "json";
      check_format(format);
      const auto s = lqre::app::solve(p);
      if (out.empty()) {
        emit(format == "json" ? json_text(lqre::app::solution_json(s)) : lqre::app::solution_csv(s), "");
      } else {
        emit(json_text(lqre::app::solution_json(s)), out + ".json");
        emit(lqre::app::solution_csv(s), out + ".csv");
      }
    } else if (sweep->parsed()) {
      Params p = sweep_flags.collect(sweep);
      lqre::app::validate_params(p);
      lqre::app::sweep_key(sweep_param);
      if (format.empty()) format = "csv";
      check_format(format);
      if (values.empty()) {
        if (sweep->count("--from") == 0 || sweep->count("--to") == 0)
          throw ConfigError("sweep: give --values or --from/--to");
        if (sweep->count("--step") == 0 && from != to) throw ConfigError("sweep: --step is required");
        values = from == to ? std::vector<double>{from} : lqre::app::sweep_values(from, to, step);
      }
      const auto rows = lqre::app::sweep(p, sweep_param, values, threads);
      emit(format == "csv" ? lqre::sweep_csv(rows) : json_text(lqre::sweep_to_json(rows)), out);
    } else if (cyc->parsed()) {
      Params p = cycle_flags.collect(cyc);
      lqre::app::validate_params(p);
      if (format.empty()) format = "csv";
      check_format(format);
      if (!pure && cyc->count("--beta") == 0) throw ConfigError("cycle: --beta is required");
      const auto c = lqre::app::cycle(p, pure ? 1.0 : beta, horizon, pure,
                                      start.empty() ? std::nullopt : std::optional<std::string>(start));
      if (c.cycle_1.empty()) std::cerr << "no cycle found within the horizon\n";
      emit(format == "csv" ? lqre::app::cycle_csv(c) : json_text(lqre::app::cycle_json(c)), out);
    } else if (table->parsed()) {
      if (format.empty()) format = "csv";
      check_format(format);
      const auto t = lqre::app::make_table(table_name);
      if (format == "csv") {
        emit(lqre::app::table_csv(t), out);
      } else {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : t.cells) {
          nlohmann::json cell = {{"row", c.row}, {"column", c.column}, {"computed", c.computed}};
          if (c.reference) cell["reference"] = *c.reference;
          if (auto d = c.delta()) cell["delta"] = *d;
          cells.push_back(cell);
        }
        emit(json_text({{"table", t.name}, {"cells", cells}, {"max_abs_delta", t.max_abs_delta()}}), out);
      }
    } else if (dump->parsed()) {
      Params p = dump_flags.collect(dump);
      lqre::app::validate_params(p);
      emit(json_text(lqre::game_to_json(lqre::app::build_game(p))), out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
