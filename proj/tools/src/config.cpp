#include "lqre_app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lqre/auctions.hpp"
#include "lqre/game_library.hpp"
#include "lqre/io.hpp"

namespace lqre::app {

namespace {

std::invalid_argument bad(const std::string& key, const std::string& value, const char* want) {
  return std::invalid_argument("--" + key + ": '" + value + "' is not " + want);
}

double parse_double(const std::string& key, const std::string& s) {
  double x = 0.0;
  std::size_t used = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw bad(key, s, "a number");
  }
  if (used != s.size()) throw bad(key, s, "a number");
  return x;
}

std::string exact_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return exact_text(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ',';
      out += json_text(e);
    }
    return out;
  }
  throw std::invalid_argument("config: unsupported value " + v.dump());
}

}  // namespace

std::string Params::str(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Params::num(const std::string& key, double fallback) const {
  auto v = num(key);
  return v ? *v : fallback;
}

std::optional<double> Params::num(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return parse_double(key, it->second);
}

int Params::integer(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  int x = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw bad(key, s, "an integer");
  return x;
}

bool Params::flag(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const auto& s = it->second;
  if (s == "true" || s == "1" || s == "yes" || s.empty()) return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw bad(key, s, "a boolean");
}

std::vector<double> Params::list(const std::string& key) const {
  std::vector<double> out;
  auto it = values_.find(key);
  if (it == values_.end()) return out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  return out;
}

Params Params::merged(const Params& base, const Params& over) {
  Params out = base;
  for (const auto& [k, v] : over.values_) out.values_[k] = v;
  return out;
}

Params Params::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  Params p;
  for (const auto& [k, v] : j.items()) p.set(k, json_text(v));
  return p;
}

Params Params::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  return from_json(j);
}

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> list = {
      {"four-action", {"theta"}, ""},
      {"rps", {}, ""},
      {"centipede", {"pie", "a", "b", "s0", "n", "tau-bar", "alpha", "timing"}, "pie"},
      {"centipede-tree", {"tree", "constrain-last"}, "tree"},
      {"travelers", {"delta", "low", "high", "claim-step"}, ""},
      {"money-request", {"version", "pi", "variant", "alpha"}, "version"},
      {"auction", {"rule", "sigma", "weights", "delta", "extra", "nodes"}, "rule"},
      {"file", {"path"}, "path"},
  };
  return list;
}

const FamilyInfo& family(const std::string& name) {
  for (const auto& f : families())
    if (f.name == name) return f;
  std::string known;
  for (const auto& f : families()) known += (known.empty() ? "" : ", ") + f.name;
  throw std::invalid_argument("unknown game '" + name + "' (known: " + known + ")");
}

const std::set<std::string>& common_params() {
  static const std::set<std::string> s = {"game",    "nu",      "beta-cap", "tremble-q",
                                          "model",   "c",       "scale-1",  "scale-2",
                                          "max-iter", "tol",    "threads",  "format",
                                          "out"};
  return s;
}

void validate_params(const Params& p, const std::set<std::string>& extra) {
  if (!p.has("game")) throw std::invalid_argument("no game given");
  const FamilyInfo& f = family(p.str("game"));
  for (const auto& [key, value] : p.values()) {
    if (common_params().count(key) || extra.count(key)) continue;
    if (std::find(f.params.begin(), f.params.end(), key) != f.params.end()) continue;
    throw std::invalid_argument("parameter '" + key + "' does not apply to game " + f.name);
  }
}

std::string sweep_key(const std::string& param) {
  static const std::map<std::string, std::string> keys = {
      {"a", "a"},         {"b", "b"},   {"delta", "delta"}, {"theta", "theta"},
      {"sigma", "sigma"}, {"q", "tremble-q"}, {"pi", "pi"}};
  auto it = keys.find(param);
  if (it == keys.end())
    throw std::invalid_argument("cannot sweep '" + param + "' (use a, b, delta, theta, sigma, q or pi)");
  return it->second;
}

namespace {

BimatrixGame build_centipede(const Params& p) {
  const std::string pie = p.str("pie", "linear");
  const double tau_bar = p.num("tau-bar", 100.0);
  const int n = p.integer("n", 100);
  CentipedeSpec spec;
  if (pie == "linear") {
    if (tau_bar != static_cast<int>(tau_bar))
      throw std::invalid_argument("--tau-bar must be an integer for the linear pie");
    spec = linear_centipede_spec(p.num("a", 0.7), static_cast<int>(tau_bar));
  } else if (pie == "exponential") {
    spec = exponential_centipede_spec(p.num("a", 0.7), p.num("b", 0.0), p.num("s0", 1.0), n,
                                      tau_bar);
  } else if (pie == "constant") {
    spec = constant_centipede_spec(p.num("alpha", 0.0), p.num("s0", 1.0), n, tau_bar);
  } else {
    throw std::invalid_argument("--pie must be linear, exponential or constant");
  }
  const std::string timing = p.str("timing", "simultaneous");
  if (timing == "alternating") {
    auto [d1, d2] = alternating_dates(n, tau_bar);
    spec.dates_1 = std::move(d1);
    spec.dates_2 = std::move(d2);
  } else if (timing != "simultaneous") {
    throw std::invalid_argument("--timing must be simultaneous or alternating");
  }
  return centipede(spec);
}

BimatrixGame build_money_request(const Params& p) {
  MoneyRequestSpec spec;
  const std::string v = p.str("version", "basic");
  if (v == "basic") spec.version = MoneyRequestSpec::Version::basic;
  else if (v == "cycle") spec.version = MoneyRequestSpec::Version::cycle;
  else if (v == "costless") spec.version = MoneyRequestSpec::Version::costless;
  else if (v == "fine") spec.version = MoneyRequestSpec::Version::fine;
  else throw std::invalid_argument("--version must be basic, cycle, costless or fine");
  spec.pi = p.num("pi", 0.0);
  spec.variant = p.integer("variant", 1);
  spec.alpha = p.num("alpha", spec.alpha);
  return money_request(spec);
}

BidFunction parse_extra(const std::string& token) {
  // beq:<sigma> is the Bayesian all-pay bid for that sigma.
  const std::string prefix = "beq:";
  if (token.rfind(prefix, 0) == 0) {
    const double s = parse_double("extra", token.substr(prefix.size()));
    return BidFunction::bayesian_allpay(s);
  }
  throw std::invalid_argument("--extra: '" + token + "' is not of the form beq:<sigma>");
}

BimatrixGame build_auction(const Params& p) {
  AuctionSpec spec;
  const std::string rule = p.str("rule", "all-pay");
  if (rule == "all-pay") spec.format = AuctionFormat::all_pay;
  else if (rule == "first-price") spec.format = AuctionFormat::first_price;
  else throw std::invalid_argument("--rule must be first-price or all-pay");

  std::vector<double> sigmas = p.has("sigma") ? p.list("sigma") : std::vector<double>{0.3};
  std::vector<double> weights = p.list("weights");
  if (sigmas.empty()) throw std::invalid_argument("--sigma: empty list");
  if (weights.empty()) weights.assign(sigmas.size(), 1.0 / static_cast<double>(sigmas.size()));
  if (weights.size() != sigmas.size())
    throw std::invalid_argument("--weights must give one weight per sigma");
  spec.sigma.clear();
  for (std::size_t k = 0; k < sigmas.size(); ++k) spec.sigma.push_back({sigmas[k], weights[k]});

  spec.grid_delta = p.num("delta", spec.grid_delta);
  spec.quadrature_nodes = p.integer("nodes", spec.quadrature_nodes);
  std::stringstream ss(p.str("extra"));
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) spec.extra_strategies.push_back(parse_extra(token));
  return auction_game(spec);
}

BimatrixGame build_tree(const Params& p) {
  const std::string tree = p.str("tree", "mp6");
  const bool constrain = p.flag("constrain-last", false);
  if (tree == "mp6") return centipede_mp6(constrain);
  if (tree == "nt12") return centipede_nt12(constrain);
  throw std::invalid_argument("--tree must be mp6 or nt12");
}

BimatrixGame build_base(const Params& p) {
  const std::string g = family(p.str("game")).name;
  if (g == "four-action") return four_action_game(p.num("theta", 0.9));
  if (g == "rps") return rock_paper_scissors();
  if (g == "centipede") return build_centipede(p);
  if (g == "centipede-tree") return build_tree(p);
  if (g == "travelers") {
    const auto claims =
        traveler_claims(p.integer("low", 80), p.integer("high", 200), p.integer("claim-step", 1));
    return travelers_dilemma(p.num("delta", 10.0), claims);
  }
  if (g == "money-request") return build_money_request(p);
  if (g == "auction") return build_auction(p);
  if (!p.has("path")) throw std::invalid_argument("game file: --path is required");
  return read_game_file(p.str("path"));
}

}  // namespace

BimatrixGame build_game(const Params& p) {
  BimatrixGame g = build_base(p);
  const double s1 = p.num("scale-1", 1.0);
  const double s2 = p.num("scale-2", 1.0);
  if (s1 != 1.0 || s2 != 1.0) return rescale_payoffs(g, s1, s2);
  return g;
}

ChoiceModel choice_model(const Params& p) {
  const std::string m = p.str("model", "logit");
  if (m == "logit") {
    if (p.has("c")) throw std::invalid_argument("--c applies to the satisficing model only");
    return ChoiceModel::logit();
  }
  if (m == "satisficing") return ChoiceModel::satisficing(p.num("c", 2.0));
  throw std::invalid_argument("--model must be logit or satisficing");
}

TrembleModel tremble_model(const Params& p, const BimatrixGame& game) {
  TrembleModel t;
  t.q = p.num("tremble-q", 0.0);
  t.distance = game.metadata().value("tremble_distance", std::string("label")) == "index"
                   ? TrembleModel::Distance::index
                   : TrembleModel::Distance::label;
  validate_tremble(t);
  return t;
}

IterationOptions iteration_options(const Params& p) {
  IterationOptions it;
  it.max_iter = p.integer("max-iter", it.max_iter);
  it.tol = p.num("tol", it.tol);
  if (it.max_iter <= 0) throw std::invalid_argument("--max-iter must be positive");
  if (!(it.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  return it;
}

PathOptions path_options(const Params& p) {
  PathOptions o;
  o.nu = p.num("nu");
  o.beta_cap = p.num("beta-cap");
  if (o.nu && !(*o.nu > 0.0)) throw std::invalid_argument("--nu must be positive");
  if (o.beta_cap && !(*o.beta_cap > 0.0)) throw std::invalid_argument("--beta-cap must be positive");
  o.iteration = iteration_options(p);
  return o;
}

}  // namespace lqre::app
