#include <gtest/gtest.h>

#include <random>

#include "lqre/game_library.hpp"
#include "lqre/trembles.hpp"
#include "test_util.hpp"

using namespace lqre;

TEST(Trembles, KernelExample) {
  const Vector k = tremble_kernel(integer_labels(1, 3), Label(2), TrembleModel{0.5});
  EXPECT_NEAR(k(0), 0.25, 1e-15);
  EXPECT_NEAR(k(1), 0.5, 1e-15);
  EXPECT_NEAR(k(2), 0.25, 1e-15);
}

TEST(Trembles, ZeroDecayIsPointMass) {
  const Vector k = tremble_kernel(integer_labels(80, 90), std::size_t{4}, TrembleModel{0.0});
  EXPECT_EQ(k(4), 1.0);
  EXPECT_EQ(k.sum(), 1.0);
  const auto g = travelers_dilemma(10);
  const auto t = target_game(g, TrembleModel::none());
  EXPECT_EQ(t.payoff_1(), g.payoff_1());
}

TEST(Trembles, Validation) {
  EXPECT_THROW(validate_tremble(TrembleModel{1.0}), std::invalid_argument);
  EXPECT_THROW(validate_tremble(TrembleModel{-0.1}), std::invalid_argument);
  EXPECT_THROW(tremble_kernel(rock_paper_scissors().labels_1(), std::size_t{0}, TrembleModel{0.5}),
               std::invalid_argument);
  TrembleModel by_index{0.5, TrembleModel::Distance::index};
  EXPECT_NO_THROW(tremble_kernel(rock_paper_scissors().labels_1(), std::size_t{0}, by_index));
}

TEST(Trembles, LabelDistanceUsesLabelUnits) {
  const auto labels = numeric_labels({0.0, 0.5, 1.0});
  const Vector by_label = tremble_kernel(labels, std::size_t{0}, TrembleModel{0.25});
  const Vector by_index =
      tremble_kernel(labels, std::size_t{0}, TrembleModel{0.25, TrembleModel::Distance::index});
  EXPECT_NEAR(by_label(1) / by_label(0), 0.5, 1e-15);
  EXPECT_NEAR(by_index(1) / by_index(0), 0.25, 1e-15);
}

TEST(TremblesProperty, KernelRowsSumToOne) {
  const auto labels = integer_labels(80, 200);
  for (double q = 0.0; q <= 0.95 + 1e-12; q += 0.05) {
    const Matrix m = tremble_matrix(labels, TrembleModel{q});
    EXPECT_LT((m.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
    EXPECT_TRUE((m.array() >= 0).all());
  }
}

TEST(TremblesProperty, TargetGameCommutesWithScaling) {
  const auto g = travelers_dilemma(20, traveler_claims(80, 120));
  const TrembleModel t{0.6};
  for (double alpha : {0.5, 2.0, 3.0}) {
    const auto a = target_game(rescale_payoffs(g, alpha, alpha), t);
    const auto b = rescale_payoffs(target_game(g, t), alpha, alpha);
    EXPECT_LE((a.payoff_1() - b.payoff_1()).cwiseAbs().maxCoeff(), 1e-12 * g.max_abs_payoff());
    EXPECT_LE((a.payoff_2() - b.payoff_2()).cwiseAbs().maxCoeff(), 1e-12 * g.max_abs_payoff());
  }
}

TEST(TremblesProperty, PushForwardPreservesExpectedPayoff) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = travelers_dilemma(5 + trial, traveler_claims(80, 100));
    const TrembleModel t{0.1 + 0.025 * trial};
    const auto tg = target_game(g, t);
    const auto p = test::random_profile(rng, tg);
    const auto alt = induced_alternative_distribution(g, p, t);
    EXPECT_TRUE(is_probability_vector(alt.p1, 1e-12));
    for (int player : {1, 2})
      EXPECT_NEAR(expected_payoff(tg, p, player), expected_payoff(g, alt, player), 1e-10);
  }
}

TEST(Trembles, UniformTargetsGiveNearUniformAlternatives) {
  const auto g = travelers_dilemma(10);
  const TrembleModel t{0.5};
  const auto alt = induced_alternative_distribution(g, uniform_profile(g), t);
  const double u = 1.0 / static_cast<double>(g.num_actions_1());
  // Boundary renormalization decays as q^d into the interior.
  for (Eigen::Index k = 30; k < alt.p1.size() - 30; ++k) EXPECT_NEAR(alt.p1(k), u, 1e-10);
  EXPECT_LT((alt.p1.array() - u).abs().maxCoeff(), 0.5 * u);
}

TEST(Trembles, PerPlayerModels) {
  const auto g = travelers_dilemma(10, traveler_claims(80, 90));
  const auto one = target_game(g, TrembleModel{0.3}, TrembleModel{0.3});
  const auto same = target_game(g, TrembleModel{0.3});
  EXPECT_LT((one.payoff_1() - same.payoff_1()).cwiseAbs().maxCoeff(), 1e-12);
  const auto mixed = target_game(g, TrembleModel{0.3}, TrembleModel::none());
  EXPECT_GT((mixed.payoff_1() - same.payoff_1()).cwiseAbs().maxCoeff(), 1e-3);
}
