// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "qbench/analytics/analytics.hpp"

namespace qbench {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kLabels = {"BSEQ", "EPLG", "MC", "CLOPS", "QML", "LRQAOA", "WIT", "QFT"};
const std::vector<std::string> kQuality = {"BSEQ", "EPLG", "MC", "QML", "LRQAOA", "WIT", "QFT"};

ScoreMatrix published() {
  return ScoreMatrix::from_rows(
      load_subscore_csv(fs::path(QBENCH_DATA_DIR) / "fixtures" / "published_subscores.csv"), kLabels);
}

std::vector<double> column(const ScoreMatrix& m, const std::string& c) {
  std::vector<double> out;
  for (int i : m.complete_rows({c}, false)) out.push_back(m.values(i, m.column(c)));
  return out;
}

// ---------------------------------------------------------------- spearman

TEST(Spearman, MonotoneAndReversed) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {10, 20, 30}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {30, 20, 10}), -1.0);
  EXPECT_THROW(spearman({1, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(spearman({1, 1, 1}, {1, 2, 3}), std::invalid_argument);
}

TEST(Spearman, TiesUseMeanRanks) {
  EXPECT_EQ(average_ranks({5, 1, 5, 3}), (std::vector<double>{3.5, 1, 3.5, 2}));
  // reference from scipy.stats.spearmanr
  EXPECT_NEAR(spearman({1, 2, 2, 3, 5}, {2, 1, 4, 4, 9}), 0.7631578947368421, 1e-12);
}

TEST(Spearman, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(12), y(12);
    for (int i = 0; i < 12; ++i) {
      x[i] = g(rng);
      y[i] = x[i] + g(rng);
    }
    const double base = spearman(x, y);
    std::vector<double> fx = x, fy = y;
    for (double& v : fx) v = std::exp(3 * v) + 7;
    for (double& v : fy) v = std::atan(v) * 0.1 - 4;
    EXPECT_NEAR(spearman(fx, fy), base, 1e-12);
    for (double& v : fy) v = -v;
    EXPECT_NEAR(spearman(fx, fy), -base, 1e-12);
  }
}

TEST(Spearman, PublishedMirrorVsQml) {
  ScoreMatrix m = published();
  EXPECT_NEAR(spearman(column(m, "MC"), column(m, "QML")), 0.991, 0.02);
}

TEST(Spearman, MatrixIsSymmetricWithUnitDiagonal) {
  json j = spearman_matrix(published());
  ASSERT_EQ(j["rho"].size(), kLabels.size());
  for (std::size_t a = 0; a < kLabels.size(); ++a) {
    EXPECT_NEAR(j["rho"][a][a].get<double>(), 1.0, 1e-12);
    for (std::size_t b = 0; b < kLabels.size(); ++b) {
      EXPECT_EQ(j["rho"][a][b], j["rho"][b][a]);
    }
  }
  // CLOPS only exists on the six IBM rows
  EXPECT_EQ(j["pairs"][3][2], 6);
  // the failed EPLG run drops out
  EXPECT_EQ(j["pairs"][1][4], 10);
}

// ---------------------------------------------------------------- pca

TEST(Pca, RankOneIsFullyExplained) {
  Eigen::MatrixXd raw(8, 4);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 4; ++j) raw(i, j) = std::exp((i + 1) * (j + 0.5));
  }
  EXPECT_NEAR(pca_first_variance(raw).first_variance, 1.0, 1e-12);
}

TEST(Pca, WhiteNoiseIsIsotropic) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int k : {2, 4, 6}) {
    Eigen::MatrixXd raw(20000, k);
    for (int i = 0; i < raw.rows(); ++i) {
      for (int j = 0; j < k; ++j) raw(i, j) = std::exp(g(rng));
    }
    EXPECT_NEAR(pca_first_variance(raw).first_variance, 1.0 / k, 0.02) << k;
  }
}

TEST(Pca, InvariantUnderPermutationAndRescaling) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int t = 0; t < 30; ++t) {
    Eigen::MatrixXd raw(10, 5);
    for (int i = 0; i < 10; ++i) {
      double f = g(rng);
      for (int j = 0; j < 5; ++j) raw(i, j) = std::exp(f + 0.7 * g(rng));
    }
    const double base = pca_first_variance(raw).first_variance;
    Eigen::MatrixXd perm = raw;
    perm.col(0).swap(perm.col(3));
    perm.col(1).swap(perm.col(4));
    EXPECT_NEAR(pca_first_variance(perm).first_variance, base, 1e-12);
    Eigen::MatrixXd scaled = raw;
    for (int j = 0; j < 5; ++j) {
      // a positive scale and power are affine in log space
      scaled.col(j) = (scaled.col(j).array().pow(0.5 + j) * (3.0 + j)).matrix();
    }
    EXPECT_NEAR(pca_first_variance(scaled).first_variance, base, 1e-10);
  }
}

TEST(Pca, PublishedFirstComponent) {
  PcaSummary s = pca_first_variance(published(), kQuality);
  EXPECT_EQ(s.devices.size(), 10u);  // the failed EPLG row is not complete
  EXPECT_NEAR(s.first_variance, 0.88, 0.04);
  double sum = 0;
  for (double e : s.eigenvalues) sum += e;
  EXPECT_NEAR(sum, 7.0, 1e-9);  // trace of a correlation matrix
}

TEST(Pca, RejectsNonPositive) {
  Eigen::MatrixXd raw = Eigen::MatrixXd::Ones(3, 2);
  raw(1, 1) = 0;
  EXPECT_THROW(pca_first_variance(raw), std::invalid_argument);
}

// ---------------------------------------------------------------- ridge

TEST(Ridge, NoiselessLogLinearLimit) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.5, 50);
  Eigen::MatrixXd x(12, 3);
  Eigen::VectorXd y(12);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = u(rng);
    y(i) = std::exp(0.3 + 0.8 * std::log(x(i, 0)) - 0.5 * std::log(x(i, 1)) + 0.2 * std::log(x(i, 2)));
  }
  EXPECT_NEAR(ridge_loo_r2_log(x, y, 1e-10).r2_log, 1.0, 1e-8);
  EXPECT_LT(ridge_loo_r2_log(x, y, 5.0).r2_log, ridge_loo_r2_log(x, y, 1e-10).r2_log);
}

TEST(Ridge, IndependentNoiseHasNoSkill) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(30, 3);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = std::exp(g(rng));
    y(i) = std::exp(g(rng));
  }
  EXPECT_LE(ridge_loo_r2_log(x, y, kDefaultRidgeLambda).r2_log, 0.0);
}

TEST(Ridge, InvariantUnderPositiveColumnRescaling) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(1, 20);
  Eigen::MatrixXd x(9, 2);
  Eigen::VectorXd y(9);
  for (int i = 0; i < 9; ++i) {
    x(i, 0) = u(rng);
    x(i, 1) = u(rng);
    y(i) = u(rng) * x(i, 0);
  }
  RidgeReport a = ridge_loo_r2_log(x, y, 1.0);
  Eigen::MatrixXd xs = x;
  xs.col(0) *= 1000.0;
  xs.col(1) *= 0.001;
  RidgeReport b = ridge_loo_r2_log(xs, y, 1.0);
  EXPECT_NEAR(a.r2_log, b.r2_log, 1e-10);
  for (std::size_t i = 0; i < a.predicted_log.size(); ++i) {
    EXPECT_NEAR(a.predicted_log[i], b.predicted_log[i], 1e-10);
  }
}

TEST(Ridge, Preconditions) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(ridge_loo_r2_log(x, y), std::invalid_argument);
  x = Eigen::MatrixXd::Ones(5, 1);
  y = Eigen::VectorXd::Ones(5);
  y(2) = -1;
  EXPECT_THROW(ridge_loo_r2_log(x, y), std::invalid_argument);
}

TEST(Ridge, PublishedQmlFromSystemMetrics) {
  ScoreMatrix m = published();
  RidgeReport r = ridge_loo_r2_log(m, {"BSEQ", "EPLG", "MC"}, "QML", kDefaultRidgeLambda);
  EXPECT_EQ(r.devices.size(), 10u);
  ASSERT_EQ(r.excluded.size(), 1u);
  EXPECT_EQ(r.excluded[0], "wukong_72: EPLG non-positive");
  // Independent reference (numpy, same fold policy) at lambda = 0, 0.5, 1.
  EXPECT_NEAR(ridge_loo_r2_log(m, {"BSEQ", "EPLG", "MC"}, "QML", 0.0).r2_log, 0.9179390082348283, 1e-9);
  EXPECT_NEAR(ridge_loo_r2_log(m, {"BSEQ", "EPLG", "MC"}, "QML", 0.5).r2_log, 0.8506108711510436, 1e-9);
  EXPECT_NEAR(r.r2_log, 0.8415691239428682, 1e-9);
}

TEST(Ridge, SingleFeatureProxy) {
  RidgeReport r = ridge_loo_r2_log(published(), {"MC"}, "QML");
  EXPECT_EQ(r.devices.size(), 11u);
  EXPECT_GT(r.r2_log, 0.8);
  EXPECT_EQ(r.coefficients.size(), 1u);
  EXPECT_GT(r.coefficients[0], 0.0);
}

}  // namespace
}  // namespace qbench
