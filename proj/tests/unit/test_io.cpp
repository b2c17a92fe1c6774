#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "lqre/game_library.hpp"
#include "lqre/io.hpp"

using namespace lqre;

TEST(Io, FormatNumber) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(3.02), "3.02");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Io, GameRoundTrip) {
  for (const auto& g : {four_action_game(0.7), rock_paper_scissors(), centipede_mp6(true)}) {
    const auto back = game_from_json(nlohmann::json::parse(game_to_json(g).dump()));
    EXPECT_EQ(back.payoff_1(), g.payoff_1());
    EXPECT_EQ(back.payoff_2(), g.payoff_2());
    EXPECT_TRUE(back.labels_1() == g.labels_1());
    EXPECT_TRUE(back.labels_2() == g.labels_2());
    EXPECT_EQ(back.metadata(), g.metadata());
  }
}

TEST(Io, FlatRowMajorPayoffs) {
  const auto j = nlohmann::json::parse(R"({"labels_1": [1, 2], "labels_2": ["L", "M", "R"],
    "payoff_1": [1, 2, 3, 4, 5, 6], "payoff_2": [[0, 0, 0], [1, 1, 1]]})");
  const auto g = game_from_json(j);
  EXPECT_EQ(g.payoff_1()(1, 0), 4.0);
  EXPECT_EQ(g.payoff_1()(0, 2), 3.0);
  EXPECT_EQ(g.labels_2()[1].str(), "M");
  EXPECT_TRUE(g.metadata().is_object());
}

TEST(Io, MalformedGames) {
  EXPECT_THROW(game_from_json(nlohmann::json::parse(R"({"labels_1": [1, 2]})")), std::invalid_argument);
  EXPECT_THROW(game_from_json(nlohmann::json::parse(
                   R"({"labels_1": [1, 2], "labels_2": [1, 2], "payoff_1": [1, 2, 3], "payoff_2": [1, 2, 3, 4]})")),
               std::invalid_argument);
  EXPECT_THROW(game_from_json(nlohmann::json::parse(
                   R"({"labels_1": [1, 2], "labels_2": [1, 2], "payoff_1": [[1, "x"], [3, 4]], "payoff_2": [1, 2, 3, 4]})")),
               std::invalid_argument);
  EXPECT_THROW(read_game_file("/nonexistent/game.json"), std::invalid_argument);
}

TEST(Io, GameFileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "lqre_io_game.json";
  write_game_file(travelers_dilemma(10, traveler_claims(80, 90)), path.string());
  const auto g = read_game_file(path.string());
  EXPECT_EQ(g.num_actions_1(), 11u);
  std::filesystem::remove(path);
}

TEST(Io, DistributionCsv) {
  const auto g = four_action_game(0.5);
  const std::string csv = distribution_csv(g, uniform_profile(g));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "player,label,probability");
  EXPECT_NE(csv.find("1,1,0.25\n"), std::string::npos);
  EXPECT_NE(csv.find("2,4,0.25\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(Io, SweepCsv) {
  SweepRow ok{"a", 0.55, 0.3, "instability", 51.97, "42", "ok"};
  SweepRow bad{"a", 0.6, std::nan(""), "error", std::nan(""), "", "bad, input"};
  const std::string csv = sweep_csv({ok, bad});
  EXPECT_EQ(csv,
            "param,value,beta_star,termination,mean_stat,mode_label,status\n"
            "a,0.55,0.3,instability,51.97,42,ok\n"
            "a,0.6,nan,error,nan,,\"bad, input\"\n");
}

TEST(Io, PathJson) {
  const auto g = four_action_game(0.5);
  PathOptions o;
  o.nu = 0.02;
  const auto r = evolutionary_path(g, ChoiceModel::logit(), o);
  const auto j = path_to_json(g, r);
  EXPECT_EQ(j.at("beta_star").get<double>(), r.beta_star);
  EXPECT_EQ(j.at("termination"), to_string(r.termination));
  EXPECT_EQ(j.at("p_star").at("player_1").at("probabilities").size(), 4u);
  EXPECT_EQ(j.at("points").size(), r.points.size());
  EXPECT_TRUE(j.contains("failed_beta"));
}
