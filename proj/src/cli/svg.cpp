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
#include "qbench/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qbench::svg {

namespace {

constexpr double kW = 720, kH = 480, kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Axes {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); }
  double py(double y) const { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

Axes fit_axes(const std::vector<std::pair<double, double>>& pts) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (auto [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (pts.empty()) x0 = y0 = 0, x1 = y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  double mx = 0.05 * (x1 - x0), my = 0.08 * (y1 - y0);
  return {x0 - mx, x1 + mx, y0 - my, y1 + my};
}

void frame(std::ostringstream& o, const Axes& a, const std::string& title, const std::string& xl,
           const std::string& yl) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(title)
    << "</text>\n";
  double xa = a.py(a.y0), ya = a.px(a.x0);
  o << "<line x1=\"" << ya << "\" y1=\"" << xa << "\" x2=\"" << a.px(a.x1) << "\" y2=\"" << xa
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << ya << "\" y1=\"" << xa << "\" x2=\"" << ya << "\" y2=\"" << a.py(a.y1)
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double x = a.x0 + (a.x1 - a.x0) * i / 5, y = a.y0 + (a.y1 - a.y0) * i / 5;
    o << "<text x=\"" << a.px(x) << "\" y=\"" << xa + 16 << "\" text-anchor=\"middle\">" << num(x)
      << "</text>\n"
      << "<text x=\"" << ya - 6 << "\" y=\"" << a.py(y) + 4 << "\" text-anchor=\"end\">" << num(y)
      << "</text>\n"
      << "<line x1=\"" << ya << "\" y1=\"" << a.py(y) << "\" x2=\"" << a.px(a.x1) << "\" y2=\""
      << a.py(y) << "\" stroke=\"#eee\"/>\n";
  }
  o << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 18
    << "\" text-anchor=\"middle\">" << esc(xl) << "</text>\n"
    << "<text transform=\"translate(18," << (kTop + kH - kBottom) / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << esc(yl) << "</text>\n";
}

}  // namespace

std::string xy_plot(const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<Series>& series) {
  std::vector<std::pair<double, double>> all;
  for (const auto& s : series) all.insert(all.end(), s.points.begin(), s.points.end());
  Axes a = fit_axes(all);
  std::ostringstream o;
  frame(o, a, title, x_label, y_label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* col = kPalette[i % 10];
    if (s.line && s.points.size() > 1) {
      o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
      for (auto [x, y] : s.points) o << a.px(x) << "," << a.py(y) << " ";
      o << "\"/>\n";
    } else {
      for (auto [x, y] : s.points) {
        o << "<circle cx=\"" << a.px(x) << "\" cy=\"" << a.py(y) << "\" r=\"3.5\" fill=\"" << col
          << "\"/>\n";
      }
    }
    double ly = kTop + 10 + 16 * static_cast<double>(i);
    o << "<rect x=\"" << kW - kRight + 12 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
      << col << "\"/>\n<text x=\"" << kW - kRight + 28 << "\" y=\"" << ly << "\">" << esc(s.name)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string labelled_scatter(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<std::pair<std::string, std::pair<double, double>>>& points) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : points) pts.push_back(p.second);
  Axes a = fit_axes(pts);
  std::ostringstream o;
  frame(o, a, title, x_label, y_label);
  for (const auto& [name, xy] : points) {
    o << "<circle cx=\"" << a.px(xy.first) << "\" cy=\"" << a.py(xy.second)
      << "\" r=\"4\" fill=\"#1f77b4\"/>\n<text x=\"" << a.px(xy.first) + 6 << "\" y=\""
      << a.py(xy.second) - 6 << "\" font-size=\"11\">" << esc(name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string heatmap(const std::string& title, const std::vector<std::string>& labels,
                    const std::vector<std::vector<std::optional<double>>>& values) {
  const double cell = 56, left = 90, top = 50;
  const double n = static_cast<double>(labels.size());
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + cell * n + 20
    << "\" height=\"" << top + cell * n + 30 << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << left << "\" y=\"22\" font-size=\"15\">" << esc(title) << "</text>\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    o << "<text x=\"" << left - 6 << "\" y=\"" << top + cell * (i + 0.5) + 4
      << "\" text-anchor=\"end\">" << esc(labels[i]) << "</text>\n"
      << "<text x=\"" << left + cell * (i + 0.5) << "\" y=\"" << top - 6
      << "\" text-anchor=\"middle\">" << esc(labels[i]) << "</text>\n";
    for (std::size_t j = 0; j < labels.size(); ++j) {
      std::string fill = "#cccccc", text = "n/a";
      if (i < values.size() && j < values[i].size() && values[i][j]) {
        double v = std::clamp(*values[i][j], -1.0, 1.0);
        int r = v < 0 ? static_cast<int>(255 * (1 + v)) : 255;
        int b = v > 0 ? static_cast<int>(255 * (1 - v)) : 255;
        int g = static_cast<int>(255 * (1 - std::abs(v)));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        fill = buf;
        text = num(*values[i][j]);
      }
      o << "<rect x=\"" << left + cell * j << "\" y=\"" << top + cell * i << "\" width=\"" << cell
        << "\" height=\"" << cell << "\" fill=\"" << fill << "\" stroke=\"white\"/>\n"
        << "<text x=\"" << left + cell * (j + 0.5) << "\" y=\"" << top + cell * (i + 0.5) + 4
        << "\" text-anchor=\"middle\">" << text << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string eplg_decay_plot(const json& r) {
  std::vector<Series> series;
  const json& els = r.at("elements");
  for (std::size_t i = 0; i < els.size(); ++i) {
    const json& e = els[i];
    std::string name = "L" + std::to_string(e.at("sublayer").get<int>()) + " " + e.at("positions").dump();
    Series pts{name, {}, false};
    double lmax = 0;
    for (const auto& p : e.at("decay")) {
      pts.points.emplace_back(p[0].get<double>(), p[1].get<double>());
      lmax = std::max(lmax, p[0].get<double>());
    }
    const json& f = e.at("fit");
    Series curve{name + " fit", {}, true};
    for (int k = 0; k <= 60; ++k) {
      double l = lmax * k / 60.0;
      curve.points.emplace_back(l, f.at("a").get<double>() * std::pow(f.at("alpha").get<double>(), l) +
                                       f.at("b").get<double>());
    }
    series.push_back(std::move(pts));
    series.push_back(std::move(curve));
    if (series.size() >= 10) break;  // first few elements keep the legend readable
  }
  return xy_plot("Direct RB decay, EPLG = " + num(r.at("eplg").get<double>()), "layers",
                 "survival probability", series);
}

}  // namespace qbench::svg
