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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qbench/scoring/score.hpp"

namespace qbench {

using json = nlohmann::json;

inline constexpr double kDefaultRidgeLambda = 1.0;

/// Devices x benchmarks subscores with a presence mask.
struct ScoreMatrix {
  std::vector<std::string> devices;
  std::vector<std::string> benchmarks;
  Eigen::MatrixXd values;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> present;

  static ScoreMatrix from_rows(const std::vector<SubscoreRow>& rows,
                               const std::vector<std::string>& benchmarks);
  int column(const std::string& benchmark) const;
  /// Rows where every listed column is present (and > 0 when \p positive).
  std::vector<int> complete_rows(const std::vector<std::string>& columns, bool positive) const;
};

/// Ranks starting at 1; ties share their mean rank.
std::vector<double> average_ranks(const std::vector<double>& x);
double pearson(const std::vector<double>& x, const std::vector<double>& y);
/// Pearson correlation of average ranks. Needs >= 3 pairs and non-constant input.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct PcaSummary {
  double first_variance = 0.0;     // lambda_1 / sum(lambda)
  std::vector<double> eigenvalues;  // descending
  std::vector<double> first_loadings;
  std::vector<std::string> devices;
  std::vector<std::string> columns;

  json to_json() const;
};

/// Log, z-score each column, then the covariance spectrum. Entries must be > 0.
PcaSummary pca_first_variance(const Eigen::MatrixXd& raw);
/// Complete-case rows over \p columns (all benchmarks when empty).
PcaSummary pca_first_variance(const ScoreMatrix& m, std::vector<std::string> columns = {});

struct RidgeReport {
  double r2_log = 0.0;
  double lambda = kDefaultRidgeLambda;
  std::vector<std::string> features;
  std::string target;
  std::vector<std::string> devices;
  std::vector<double> actual_log;
  std::vector<double> predicted_log;
  std::vector<double> coefficients;  // full-data fit on z-scored features
  std::vector<std::string> excluded;  // "device: reason"

  json to_json() const;
};

/// Leave-one-out R^2 of a ridge model on log values. Each fold z-scores the
/// features with its training rows and fits an unpenalized intercept.
RidgeReport ridge_loo_r2_log(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             double lambda = kDefaultRidgeLambda);
/// Same over matrix columns; rows with missing or non-positive values are
/// dropped and listed in RidgeReport::excluded.
RidgeReport ridge_loo_r2_log(const ScoreMatrix& m, const std::vector<std::string>& features,
                             const std::string& target, double lambda = kDefaultRidgeLambda);

/// Pairwise-complete Spearman matrix over positive entries (a 0 subscore is a
/// failed run); null where fewer than 3 pairs remain.
json spearman_matrix(const ScoreMatrix& m);

}  // namespace qbench
