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

#include "qbench/analytics/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qbench/common/error.hpp"

namespace qbench {

ScoreMatrix ScoreMatrix::from_rows(const std::vector<SubscoreRow>& rows,
                                   const std::vector<std::string>& benchmarks) {
  ScoreMatrix m;
  m.benchmarks = benchmarks;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(benchmarks.size());
  m.values = Eigen::MatrixXd::Zero(n, k);
  m.present = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, k, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.devices.push_back(rows[i].device);
    for (Eigen::Index j = 0; j < k; ++j) {
      auto it = rows[i].subscores.find(benchmarks[j]);
      if (it != rows[i].subscores.end() && it->second) {
        m.values(i, j) = *it->second;
        m.present(i, j) = true;
      }
    }
  }
  return m;
}

int ScoreMatrix::column(const std::string& benchmark) const {
  auto it = std::find(benchmarks.begin(), benchmarks.end(), benchmark);
  if (it == benchmarks.end()) throw Error(ErrorKind::NotFound, "no benchmark column " + benchmark);
  return static_cast<int>(it - benchmarks.begin());
}

std::vector<int> ScoreMatrix::complete_rows(const std::vector<std::string>& columns, bool positive) const {
  std::vector<int> cols;
  for (const auto& c : columns) cols.push_back(column(c));
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(devices.size()); ++i) {
    bool ok = true;
    for (int j : cols) ok = ok && present(i, j) && (!positive || values(i, j) > 0.0);
    if (ok) out.push_back(i);
  }
  return out;
}

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double mean_rank = (i + j) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = mean_rank;
    i = j + 1;
  }
  return r;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("pearson: need equal lengths >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("spearman: need equal lengths >= 3");
  }
  return pearson(average_ranks(x), average_ranks(y));
}

namespace {

// Column-wise log then z-score (sample standard deviation). Constant columns
// map to zero.
Eigen::MatrixXd log_zscore(const Eigen::MatrixXd& raw) {
  if ((raw.array() <= 0.0).any()) throw std::invalid_argument("log transform needs positive entries");
  Eigen::MatrixXd z = raw.array().log().matrix();
  const double n = static_cast<double>(z.rows());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const double mean = z.col(j).mean();
    z.col(j).array() -= mean;
    const double sd = std::sqrt(z.col(j).squaredNorm() / (n - 1));
    if (sd > 0) z.col(j) /= sd;
  }
  return z;
}

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

json PcaSummary::to_json() const {
  return {{"first_variance", first_variance}, {"eigenvalues", eigenvalues},
          {"first_loadings", first_loadings}, {"devices", devices}, {"columns", columns}};
}

PcaSummary pca_first_variance(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 2 || raw.cols() < 1) throw std::invalid_argument("pca: need >= 2 rows and >= 1 column");
  Eigen::MatrixXd z = log_zscore(raw);
  Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(z.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::VectorXd ev = es.eigenvalues().reverse().cwiseMax(0.0);
  PcaSummary s;
  const double total = ev.sum();
  s.first_variance = total > 0 ? ev(0) / total : 0.0;
  s.eigenvalues = to_vec(ev);
  Eigen::VectorXd load = es.eigenvectors().col(es.eigenvectors().cols() - 1);
  if (load.sum() < 0) load = -load;
  s.first_loadings = to_vec(load);
  return s;
}

PcaSummary pca_first_variance(const ScoreMatrix& m, std::vector<std::string> columns) {
  if (columns.empty()) columns = m.benchmarks;
  auto rows = m.complete_rows(columns, true);
  Eigen::MatrixXd raw(rows.size(), columns.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) raw(i, j) = m.values(rows[i], m.column(columns[j]));
  }
  PcaSummary s = pca_first_variance(raw);
  for (int r : rows) s.devices.push_back(m.devices[r]);
  s.columns = columns;
  return s;
}

json RidgeReport::to_json() const {
  json preds = json::array();
  for (std::size_t i = 0; i < devices.size(); ++i) {
    preds.push_back({{"device", devices[i]}, {"actual_log", actual_log[i]},
                     {"predicted_log", predicted_log[i]}});
  }
  return {{"r2_log", r2_log},         {"lambda", lambda},
          {"features", features},     {"target", target},
          {"predictions", preds},     {"coefficients", coefficients},
          {"excluded", excluded}};
}

RidgeReport ridge_loo_r2_log(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda) {
  const Eigen::Index n = x.rows(), p = x.cols();
  if (n != y.size()) throw std::invalid_argument("ridge: X and y differ in rows");
  if (n < 4) throw std::invalid_argument("ridge: need at least 4 rows");
  if (lambda < 0) throw std::invalid_argument("ridge: lambda must be non-negative");
  if ((x.array() <= 0.0).any() || (y.array() <= 0.0).any()) {
    throw std::invalid_argument("ridge: values must be positive");
  }
  const Eigen::MatrixXd lx = x.array().log().matrix();
  const Eigen::VectorXd ly = y.array().log().matrix();

  auto fit = [&](const std::vector<Eigen::Index>& train, Eigen::VectorXd& mu, Eigen::VectorXd& sd,
                 double& intercept) {
    const double m = static_cast<double>(train.size());
    Eigen::MatrixXd xt(train.size(), p);
    Eigen::VectorXd yt(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
      xt.row(i) = lx.row(train[i]);
      yt(i) = ly(train[i]);
    }
    mu = xt.colwise().mean().transpose();
    xt.rowwise() -= mu.transpose();
    sd = (xt.colwise().squaredNorm().transpose() / (m - 1)).cwiseSqrt();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (sd(j) > 0) xt.col(j) /= sd(j);
      else sd(j) = 1.0;
    }
    intercept = yt.mean();
    Eigen::MatrixXd a = xt.transpose() * xt + lambda * Eigen::MatrixXd::Identity(p, p);
    return Eigen::VectorXd(a.ldlt().solve(xt.transpose() * (yt.array() - intercept).matrix()));
  };

  RidgeReport r;
  r.lambda = lambda;
  double ss_res = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    std::vector<Eigen::Index> train;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != k) train.push_back(i);
    }
    Eigen::VectorXd mu, sd;
    double b0 = 0;
    Eigen::VectorXd beta = fit(train, mu, sd, b0);
    const double pred = b0 + ((lx.row(k).transpose() - mu).cwiseQuotient(sd)).dot(beta);
    r.actual_log.push_back(ly(k));
    r.predicted_log.push_back(pred);
    ss_res += (ly(k) - pred) * (ly(k) - pred);
  }
  const double mean = ly.mean();
  const double ss_tot = (ly.array() - mean).square().sum();
  r.r2_log = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;

  std::vector<Eigen::Index> all(n);
  std::iota(all.begin(), all.end(), 0);
  Eigen::VectorXd mu, sd;
  double b0 = 0;
  r.coefficients = to_vec(fit(all, mu, sd, b0));
  return r;
}

RidgeReport ridge_loo_r2_log(const ScoreMatrix& m, const std::vector<std::string>& features,
                             const std::string& target, double lambda) {
  std::vector<std::string> cols = features;
  cols.push_back(target);
  auto rows = m.complete_rows(cols, true);
  std::vector<std::string> excluded;
  for (int i = 0; i < static_cast<int>(m.devices.size()); ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    std::string why;
    for (const auto& c : cols) {
      const int j = m.column(c);
      if (!m.present(i, j)) why += (why.empty() ? "" : ", ") + c + " missing";
      else if (m.values(i, j) <= 0.0) why += (why.empty() ? "" : ", ") + c + " non-positive";
    }
    excluded.push_back(m.devices[i] + ": " + why);
  }
  Eigen::MatrixXd x(rows.size(), features.size());
  Eigen::VectorXd y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < features.size(); ++j) x(i, j) = m.values(rows[i], m.column(features[j]));
    y(i) = m.values(rows[i], m.column(target));
  }
  RidgeReport r = ridge_loo_r2_log(x, y, lambda);
  r.features = features;
  r.target = target;
  r.excluded = std::move(excluded);
  for (int i : rows) r.devices.push_back(m.devices[i]);
  return r;
}

json spearman_matrix(const ScoreMatrix& m) {
  json out = {{"benchmarks", m.benchmarks}, {"rho", json::array()}, {"pairs", json::array()}};
  const auto k = m.benchmarks.size();
  for (std::size_t a = 0; a < k; ++a) {
    json rho = json::array(), pairs = json::array();
    for (std::size_t b = 0; b < k; ++b) {
      std::vector<double> x, y;
      for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        if (m.present(i, a) && m.present(i, b) && m.values(i, a) > 0 && m.values(i, b) > 0) {
          x.push_back(m.values(i, a));
          y.push_back(m.values(i, b));
        }
      }
      pairs.push_back(x.size());
      try {
        rho.push_back(spearman(x, y));
      } catch (const std::invalid_argument&) {
        rho.push_back(nullptr);
      }
    }
    out["rho"].push_back(rho);
    out["pairs"].push_back(pairs);
  }
  return out;
}

}  // namespace qbench
