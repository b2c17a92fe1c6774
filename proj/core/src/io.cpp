#include "lqre/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lqre {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

nlohmann::json label_to_json(const Label& label) {
  if (label.is_numeric()) return label.value();
  return label.str();
}

Label label_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Label(j.get<double>());
  if (j.is_string()) return Label(j.get<std::string>());
  throw std::invalid_argument("label must be a number or a string");
}

namespace {

nlohmann::json matrix_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                   const char* field) {
  const auto fail = [&](const std::string& what) {
    return std::invalid_argument(std::string("game JSON: ") + field + " " + what);
  };
  if (!j.is_array()) throw fail("must be an array");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  if (j.size() == rows && (rows == 0 || j[0].is_array())) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (!j[i].is_array() || j[i].size() != cols) throw fail("has a row of the wrong length");
      for (std::size_t k = 0; k < cols; ++k) {
        if (!j[i][k].is_number()) throw fail("has a non-numeric entry");
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
      }
    }
    return m;
  }
  // Flat row-major list.
  if (j.size() != rows * cols) throw fail("has the wrong number of entries");
  for (std::size_t n = 0; n < j.size(); ++n) {
    if (!j[n].is_number()) throw fail("has a non-numeric entry");
    m(static_cast<Eigen::Index>(n / cols), static_cast<Eigen::Index>(n % cols)) =
        j[n].get<double>();
  }
  return m;
}

std::vector<Label> labels_from(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw std::invalid_argument(std::string("game JSON: ") + field + " must be an array");
  std::vector<Label> out;
  for (const auto& e : j) out.push_back(label_from_json(e));
  return out;
}

nlohmann::json labels_json(const std::vector<Label>& labels) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& l : labels) a.push_back(label_to_json(l));
  return a;
}

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

}  // namespace

nlohmann::json game_to_json(const BimatrixGame& game) {
  return {{"labels_1", labels_json(game.labels_1())},
          {"labels_2", labels_json(game.labels_2())},
          {"payoff_1", matrix_rows(game.payoff_1())},
          {"payoff_2", matrix_rows(game.payoff_2())},
          {"metadata", game.metadata()}};
}

BimatrixGame game_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("game JSON: expected an object");
  for (const char* key : {"labels_1", "labels_2", "payoff_1", "payoff_2"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("game JSON: missing ") + key);
  auto l1 = labels_from(j.at("labels_1"), "labels_1");
  auto l2 = labels_from(j.at("labels_2"), "labels_2");
  Matrix a = matrix_from(j.at("payoff_1"), l1.size(), l2.size(), "payoff_1");
  Matrix b = matrix_from(j.at("payoff_2"), l1.size(), l2.size(), "payoff_2");
  nlohmann::json meta = j.value("metadata", nlohmann::json::object());
  return BimatrixGame(std::move(l1), std::move(l2), std::move(a), std::move(b), std::move(meta));
}

BimatrixGame read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("game file " + path + ": " + e.what());
  }
  return game_from_json(j);
}

void write_game_file(const BimatrixGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << game_to_json(game).dump(2) << '\n';
}

nlohmann::json profile_to_json(const BimatrixGame& game, const MixedProfile& p) {
  return {{"player_1", {{"labels", labels_json(game.labels_1())}, {"probabilities", vector_json(p.p1)}}},
          {"player_2", {{"labels", labels_json(game.labels_2())}, {"probabilities", vector_json(p.p2)}}}};
}

nlohmann::json path_to_json(const BimatrixGame& game, const EvolutionaryPathResult& path) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& q : path.points)
    points.push_back({{"beta", q.beta}, {"spectral_radius", q.spectral_radius}, {"stable", q.stable}});
  nlohmann::json j = {{"beta_star", path.beta_star},
                      {"unbounded", path.unbounded},
                      {"termination", to_string(path.termination)},
                      {"nu", path.nu},
                      {"beta_cap", path.beta_cap},
                      {"steps", path.steps},
                      {"p_star", profile_to_json(game, path.p_star)},
                      {"points", points}};
  if (path.termination != Termination::beta_cap_reached) {
    j["failed_beta"] = path.failed_beta;
    j["failed_radius"] = path.failed_radius ? nlohmann::json(*path.failed_radius) : nlohmann::json();
    j["failed_status"] =
        path.failed_status ? nlohmann::json(to_string(*path.failed_status)) : nlohmann::json();
  }
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

namespace {

std::string label_text(const Label& l) {
  return l.is_numeric() ? format_number(l.value()) : csv_field(l.str());
}

}  // namespace

std::string distribution_csv(const BimatrixGame& game, const MixedProfile& p) {
  validate_profile(game, p);
  std::ostringstream os;
  os << "player,label,probability\n";
  for (int player : {1, 2}) {
    const auto& labels = game.labels(player);
    const Vector& v = p.player(player);
    for (std::size_t k = 0; k < labels.size(); ++k)
      os << player << ',' << label_text(labels[k]) << ','
         << format_number(v(static_cast<Eigen::Index>(k))) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "param,value,beta_star,termination,mean_stat,mode_label,status\n";
  for (const auto& r : rows)
    os << csv_field(r.param) << ',' << format_number(r.value) << ',' << format_number(r.beta_star)
       << ',' << csv_field(r.termination) << ',' << format_number(r.mean_stat) << ','
       << csv_field(r.mode_label) << ',' << csv_field(r.status) << '\n';
  return os.str();
}

nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows)
    a.push_back({{"param", r.param},
                 {"value", r.value},
                 {"beta_star", r.beta_star},
                 {"termination", r.termination},
                 {"mean_stat", r.mean_stat},
                 {"mode_label", r.mode_label},
                 {"status", r.status}});
  return a;
}

}  // namespace lqre
