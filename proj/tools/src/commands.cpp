#include "lqre_app/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lqre/game_library.hpp"

namespace lqre::app {

namespace {

double mean_or_nan(const std::vector<Label>& labels, const Vector& p) {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (p(static_cast<Eigen::Index>(k)) > 0.0 && !labels[k].is_numeric())
      return std::numeric_limits<double>::quiet_NaN();
  double m = 0.0;
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k].is_numeric()) m += p(static_cast<Eigen::Index>(k)) * labels[k].value();
  return m;
}

std::string label_text(const Label& l) {
  return l.is_numeric() ? format_number(l.value()) : l.str();
}

std::string exact_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Solution solve(const Params& p) {
  BimatrixGame game = build_game(p);
  const ChoiceModel model = choice_model(p);
  const TrembleModel tremble = tremble_model(p, game);
  const PathOptions options = path_options(p);
  BimatrixGame solved = tremble.q > 0.0 ? target_game(game, tremble) : game;
  EvolutionaryPathResult path = evolutionary_path(solved, model, options);
  MixedProfile alt = tremble.q > 0.0
                         ? induced_alternative_distribution(game, path.p_star, tremble)
                         : path.p_star;
  const double mean = mean_or_nan(game.labels_1(), alt.p1);
  const std::string mode = label_text(mode_label(game.labels_1(), alt.p1));
  return Solution{std::move(game), std::move(solved), tremble, model, std::move(path),
                  std::move(alt), mean, mode};
}

nlohmann::json solution_json(const Solution& s) {
  nlohmann::json j = path_to_json(s.solved, s.path);
  j["game"] = s.game.metadata();
  j["model"] = s.model.name();
  j["tremble_q"] = s.tremble.q;
  if (s.tremble.q > 0.0) j["alternatives"] = profile_to_json(s.game, s.alternatives);
  j["mean_stat"] = s.mean_stat;
  j["mode_label"] = s.mode_label;
  return j;
}

std::string solution_csv(const Solution& s) { return distribution_csv(s.game, s.alternatives); }

std::vector<double> sweep_values(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: --step must be positive");
  if (to < from) throw std::invalid_argument("sweep: --to is below --from");
  std::vector<double> v;
  const double span = (to - from) / step;
  const auto n = static_cast<long>(std::floor(span + 1e-9));
  for (long k = 0; k <= n; ++k) v.push_back(from + static_cast<double>(k) * step);
  return v;
}

std::vector<SweepRow> sweep(const Params& p, const std::string& param,
                            const std::vector<double>& values, int threads) {
  const std::string key = sweep_key(param);
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.param = param;
      row.value = values[i];
      try {
        Params q = p;
        q.set(key, exact_text(values[i]));
        const Solution s = solve(q);
        row.beta_star = s.path.beta_star;
        row.termination = to_string(s.path.termination);
        row.mean_stat = s.mean_stat;
        row.mode_label = s.mode_label;
      } catch (const std::exception& e) {
        row.beta_star = std::numeric_limits<double>::quiet_NaN();
        row.mean_stat = std::numeric_limits<double>::quiet_NaN();
        row.termination = "error";
        row.status = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(values.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

CycleResult cycle(const Params& p, double beta, int horizon, bool pure,
                  std::optional<std::string> start) {
  if (!(beta > 0.0)) throw std::invalid_argument("cycle: --beta must be positive");
  if (horizon <= 0) throw std::invalid_argument("cycle: --horizon must be positive");
  CycleResult out;
  out.pure = pure;
  out.beta = beta;
  if (pure) {
    const BimatrixGame game = build_game(p);
    std::size_t k = 0;
    if (start) {
      const auto& labels = game.labels_1();
      bool found = false;
      for (std::size_t i = 0; i < labels.size() && !found; ++i)
        if (label_text(labels[i]) == *start || labels[i].str() == *start) k = i, found = true;
      if (!found) throw std::invalid_argument("cycle: --start '" + *start + "' is not an action");
    }
    out.cycle_1 = pure_best_response_cycle(game, k, horizon);
    out.labels_1 = game.labels_1();
    out.labels_2 = game.labels_2();
    return out;
  }
  const Solution s = solve(p);
  const BestResponseCycle c = best_response_cycle(s.solved, s.path.p_star, beta, horizon, s.model);
  out.exact = c.exact;
  out.cycle_1 = c.cycle_1;
  out.cycle_2 = c.cycle_2;
  out.labels_1 = s.solved.labels_1();
  out.labels_2 = s.solved.labels_2();
  return out;
}

std::string cycle_csv(const CycleResult& c) {
  std::ostringstream os;
  os << "player,position,index,label\n";
  auto emit = [&](const std::string& player, const std::vector<std::size_t>& cyc,
                  const std::vector<Label>& labels) {
    for (std::size_t n = 0; n < cyc.size(); ++n)
      os << player << ',' << n << ',' << cyc[n] << ',' << csv_field(label_text(labels[cyc[n]]))
         << '\n';
  };
  if (c.pure) {
    emit("both", c.cycle_1, c.labels_1);
  } else {
    emit("1", c.cycle_1, c.labels_1);
    emit("2", c.cycle_2, c.labels_2);
  }
  return os.str();
}

nlohmann::json cycle_json(const CycleResult& c) {
  auto part = [](const std::vector<std::size_t>& cyc, const std::vector<Label>& labels) {
    nlohmann::json idx = nlohmann::json::array(), lab = nlohmann::json::array();
    for (auto k : cyc) {
      idx.push_back(k);
      lab.push_back(label_to_json(labels[k]));
    }
    return nlohmann::json{{"indices", idx}, {"labels", lab}};
  };
  nlohmann::json j = {{"mode", c.pure ? "pure" : "logit"}, {"exact", c.exact}};
  if (c.pure) {
    j["cycle"] = part(c.cycle_1, c.labels_1);
  } else {
    j["beta"] = c.beta;
    j["player_1"] = part(c.cycle_1, c.labels_1);
    j["player_2"] = part(c.cycle_2, c.labels_2);
  }
  return j;
}

}  // namespace lqre::app
