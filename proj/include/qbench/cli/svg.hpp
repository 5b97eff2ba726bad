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
#include <utility>
#include <vector>

#include <json.hpp>

namespace qbench::svg {

using json = nlohmann::json;

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool line = false;  // connect points instead of drawing markers
};

/// Static XY plot with linear axes and a legend.
std::string xy_plot(const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<Series>& series);

/// Labelled points, e.g. one marker per device.
std::string labelled_scatter(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<std::pair<std::string, std::pair<double, double>>>& points);

/// Square matrix in [-1, 1] as a blue-white-red grid; null cells are grey.
std::string heatmap(const std::string& title, const std::vector<std::string>& labels,
                    const std::vector<std::vector<std::optional<double>>>& values);

/// Survival-vs-depth points and fitted a*alpha^l + b curves of an EPLG record.
std::string eplg_decay_plot(const json& eplg_results);

}  // namespace qbench::svg
