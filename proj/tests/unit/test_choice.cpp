#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lqre/choice.hpp"
#include "test_util.hpp"

using namespace lqre;

TEST(Choice, LogitTwoActions) {
  Vector u(2);
  u << 1.0, 0.0;
  const Vector p = choice_distribution(u, std::log(9.0), ChoiceModel::logit());
  EXPECT_NEAR(p(0), 0.9, 1e-15);
  EXPECT_NEAR(p(1), 0.1, 1e-15);
}

TEST(Choice, ZeroPrecisionIsUniform) {
  Vector u(3);
  u << 5.0, -2.0, 1.0;
  EXPECT_LT((choice_distribution(u, 0.0, ChoiceModel::logit()).array() - 1.0 / 3).abs().maxCoeff(), 1e-15);
  EXPECT_LT((choice_distribution(u, 0.0, ChoiceModel::satisficing(3)).array() - 1.0 / 3).abs().maxCoeff(),
            1e-15);
}

TEST(Choice, RejectsBadInput) {
  Vector u(2);
  u << 1.0, 0.0;
  EXPECT_THROW(choice_distribution(u, -1.0, ChoiceModel::logit()), std::invalid_argument);
  u(1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(choice_distribution(u, 1.0, ChoiceModel::logit()), std::invalid_argument);
  EXPECT_THROW(ChoiceModel::satisficing(0.5), std::invalid_argument);
}

TEST(Choice, HugePrecisionDoesNotOverflow) {
  Vector u(3);
  u << 1e6, -1e6, 0.0;
  const Vector p = choice_distribution(u, 100.0, ChoiceModel::logit());
  EXPECT_TRUE(p.allFinite());
  EXPECT_DOUBLE_EQ(p(0), 1.0);
}

TEST(Choice, SatisficingFlattensNearTop) {
  Vector u(3);
  u << 1.0, 0.9, 0.0;
  const Vector s = choice_distribution(u, 2.0, ChoiceModel::satisficing(4));
  const Vector l = choice_distribution(u, 2.0, ChoiceModel::logit());
  EXPECT_GT(s(1) / s(0), l(1) / l(0));
  EXPECT_LT(s(2) / s(0), l(2) / l(0));
}

TEST(ChoiceProperty, NormalizationMonotonicityShift) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> big(-1e6, 1e6), beta_d(0, 100);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 9;
    Vector u(n);
    for (int k = 0; k < n; ++k) u(k) = big(rng);
    const double beta = beta_d(rng);
    for (const auto& m : {ChoiceModel::logit(), ChoiceModel::satisficing(2.5)}) {
      const Vector p = choice_distribution(u, beta, m);
      EXPECT_NEAR(p.sum(), 1.0, 1e-12);
      EXPECT_TRUE((p.array() >= 0).all());
      const Vector shifted = choice_distribution(u.array() + 123.0, beta, m);
      EXPECT_LT((shifted - p).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    Vector u = test::random_matrix(rng, 6, 1, -3, 3);
    const Vector p = choice_distribution(u, 1.7, ChoiceModel::logit());
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        if (u(a) > u(b)) EXPECT_GT(p(a), p(b));
  }
}

TEST(ChoiceProperty, LargePrecisionConcentratesOnArgmax) {
  Vector u(4);
  u << 0.2, 1.0, 1.0, 0.5;
  const Vector p = choice_distribution(u, 1e4, ChoiceModel::logit());
  EXPECT_NEAR(p(1) + p(2), 1.0, 1e-12);
  EXPECT_NEAR(p(1), 0.5, 1e-12);
}

TEST(ChoiceProperty, UnitExponentSatisficingIsLogit) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector u = test::random_matrix(rng, 7, 1, -5, 5);
    const double beta = std::uniform_real_distribution<double>(0, 20)(rng);
    const Vector a = choice_distribution(u, beta, ChoiceModel::logit());
    const Vector b = choice_distribution(u, beta, ChoiceModel::satisficing(1.0));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}
