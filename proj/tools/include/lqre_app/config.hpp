#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lqre/choice.hpp"
#include "lqre/dynamics.hpp"
#include "lqre/game.hpp"
#include "lqre/limit_qre.hpp"
#include "lqre/trembles.hpp"

namespace lqre::app {

// Named run parameters as text, from flags or a config file. Typed getters
// throw std::invalid_argument on malformed values.
class Params {
 public:
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  void erase(const std::string& key) { values_.erase(key); }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string str(const std::string& key, const std::string& fallback = "") const;
  double num(const std::string& key, double fallback) const;
  std::optional<double> num(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback = false) const;
  // Comma-separated numbers.
  std::vector<double> list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  // Later sources win: merged(file, flags) keeps flag values on conflict.
  static Params merged(const Params& base, const Params& over);
  // Flat JSON object; numbers keep full precision, arrays become lists.
  static Params from_json(const nlohmann::json& j);
  static Params from_file(const std::string& path);

 private:
  std::map<std::string, std::string> values_;
};

struct FamilyInfo {
  std::string name;
  std::vector<std::string> params;
  std::string kind_param;  // set by the optional second positional word
};

const std::vector<FamilyInfo>& families();
const FamilyInfo& family(const std::string& name);

// Parameters every family accepts.
const std::set<std::string>& common_params();

// Throws unless every key is a common parameter, one of `extra`, or a
// parameter of the chosen family.
void validate_params(const Params& p, const std::set<std::string>& extra = {});

// Parameters a sweep may vary, with the key each one sets.
std::string sweep_key(const std::string& param);

BimatrixGame build_game(const Params& p);
ChoiceModel choice_model(const Params& p);
TrembleModel tremble_model(const Params& p, const BimatrixGame& game);
PathOptions path_options(const Params& p);
IterationOptions iteration_options(const Params& p);

}  // namespace lqre::app
