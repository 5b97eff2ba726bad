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
#include "qbench/circuit/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "qbench/common/error.hpp"

namespace qbench {

Graph::Graph(int num_vertices, std::vector<Edge> edges) : n_(num_vertices) {
  if (num_vertices < 0) throw Error(ErrorKind::Validation, "graph: negative size");
  for (auto& e : edges) {
    if (e.first == e.second) throw Error(ErrorKind::Validation, "graph: self-loop");
    if (e.first < 0 || e.second < 0 || e.first >= n_ || e.second >= n_) {
      throw Error(ErrorKind::Validation, "graph: vertex out of range");
    }
    e = make_edge(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adj_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> local(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> out;
  for (const auto& [u, v] : edges_) {
    if (local[u] >= 0 && local[v] >= 0) out.emplace_back(local[u], local[v]);
  }
  return Graph(static_cast<int>(vertices.size()), std::move(out));
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.num_vertices(), -1);
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adjacency()[u]) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          q.push(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

// Konig edge coloring: color (u,v) with a color free at u; if it is busy at v,
// swap the two colors along the alternating path that starts at v.
EdgeColoring bipartite_coloring(const Graph& g) {
  const int delta = g.max_degree();
  const int n = g.num_vertices();
  // at[v][c] = neighbour joined to v by an edge of color c, or -1
  std::vector<std::vector<int>> at(n, std::vector<int>(delta, -1));
  auto free_color = [&](int v) {
    for (int c = 0; c < delta; ++c) {
      if (at[v][c] < 0) return c;
    }
    return -1;
  };
  for (const auto& [u, v] : g.edges()) {
    int a = free_color(u);
    int b = free_color(v);
    if (at[v][a] >= 0) {
      // collect the a/b alternating path from v, then flip it
      std::vector<int> path{v};
      int cur = v;
      int col = a;
      while (at[cur][col] >= 0) {
        cur = at[cur][col];
        path.push_back(cur);
        col = (col == a) ? b : a;
      }
      std::vector<std::pair<Edge, int>> recolor;
      col = a;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        recolor.push_back({{path[i], path[i + 1]}, col});
        col = (col == a) ? b : a;
      }
      for (const auto& [e, c] : recolor) {
        at[e.first][c] = -1;
        at[e.second][c] = -1;
      }
      for (const auto& [e, c] : recolor) {
        int nc = (c == a) ? b : a;
        at[e.first][nc] = e.second;
        at[e.second][nc] = e.first;
      }
    }
    at[u][a] = v;
    at[v][a] = u;
  }
  EdgeColoring out;
  out.classes.assign(delta, {});
  for (const auto& [u, v] : g.edges()) {
    for (int c = 0; c < delta; ++c) {
      if (at[u][c] == v) {
        out.classes[c].push_back({u, v});
        break;
      }
    }
  }
  return out;
}

EdgeColoring greedy_coloring(const Graph& g) {
  std::vector<std::set<int>> used(g.num_vertices());
  EdgeColoring out;
  for (const auto& [u, v] : g.edges()) {  // already lexicographic
    int c = 0;
    while (used[u].count(c) || used[v].count(c)) ++c;
    used[u].insert(c);
    used[v].insert(c);
    if (c >= out.num_colors()) out.classes.resize(c + 1);
    out.classes[c].push_back({u, v});
  }
  return out;
}

// Misra-Gries: constructive Vizing coloring with at most max_degree + 1 colors.
EdgeColoring vizing_coloring(const Graph& g) {
  const int n = g.num_vertices();
  const int colors = g.max_degree() + 1;
  std::vector<std::vector<int>> at(n, std::vector<int>(colors, -1));
  std::map<Edge, int> color;
  auto color_of = [&](int u, int v) {
    auto it = color.find(make_edge(u, v));
    return it == color.end() ? -1 : it->second;
  };
  auto set_color = [&](int u, int v, int c) {
    int old = color_of(u, v);
    if (old >= 0) at[u][old] = at[v][old] = -1;
    if (c >= 0) {
      at[u][c] = v;
      at[v][c] = u;
      color[make_edge(u, v)] = c;
    } else {
      color.erase(make_edge(u, v));
    }
  };
  auto free_color = [&](int v) {
    for (int c = 0; c < colors; ++c) {
      if (at[v][c] < 0) return c;
    }
    return -1;
  };
  for (const auto& [u, v] : g.edges()) {
    // maximal fan of u starting at v
    std::vector<int> fan{v};
    std::vector<char> in_fan(n, 0);
    in_fan[v] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (int w : g.adjacency()[u]) {
        int cw = color_of(u, w);
        if (!in_fan[w] && cw >= 0 && at[fan.back()][cw] < 0) {
          fan.push_back(w);
          in_fan[w] = 1;
          grew = true;
          break;
        }
      }
    }
    const int c = free_color(u);
    const int d = free_color(fan.back());
    // invert the c/d path through u (it starts with a d edge since c is free at u)
    std::vector<std::pair<Edge, int>> path;
    for (int cur = u, col = d; at[cur][col] >= 0; col = (col == c) ? d : c) {
      int next = at[cur][col];
      path.push_back({{cur, next}, col});
      cur = next;
    }
    for (const auto& [e, col] : path) set_color(e.first, e.second, -1);
    for (const auto& [e, col] : path) set_color(e.first, e.second, col == c ? d : c);
    // shortest fan prefix ending at a vertex where d is free
    std::size_t w = 0;
    for (; w < fan.size(); ++w) {
      bool prefix_ok = true;
      for (std::size_t j = 1; j <= w && prefix_ok; ++j) {
        int cj = color_of(u, fan[j]);
        prefix_ok = cj >= 0 && at[fan[j - 1]][cj] < 0;
      }
      if (!prefix_ok) {
        w = fan.size();
        break;
      }
      if (at[fan[w]][d] < 0) break;
    }
    if (w == fan.size()) throw Error(ErrorKind::Execution, "edge coloring: fan rotation failed");
    for (std::size_t j = 0; j < w; ++j) {
      int next = color_of(u, fan[j + 1]);
      set_color(u, fan[j + 1], -1);
      set_color(u, fan[j], next);
    }
    set_color(u, fan[w], d);
  }
  EdgeColoring out;
  for (const auto& [e, c] : color) {
    if (c >= out.num_colors()) out.classes.resize(c + 1);
    out.classes[c].push_back(e);
  }
  std::erase_if(out.classes, [](const auto& cls) { return cls.empty(); });
  return out;
}

}  // namespace

EdgeColoring edge_coloring(const Graph& g, std::optional<int> max_colors) {
  EdgeColoring c;
  if (is_bipartite(g)) {
    c = bipartite_coloring(g);
  } else {
    c = greedy_coloring(g);
    // greedy can need up to 2 max_degree - 1 classes; fall back to Vizing's bound
    if (c.num_colors() > g.max_degree() + 1) c = vizing_coloring(g);
  }
  if (!is_valid_edge_coloring(g, c, true)) {
    throw Error(ErrorKind::Execution, "edge coloring produced an invalid result");
  }
  if (max_colors && *max_colors >= 0 && *max_colors < c.num_colors()) {
    c.classes.resize(*max_colors);
  }
  return c;
}

bool is_valid_edge_coloring(const Graph& g, const EdgeColoring& c, bool require_cover) {
  std::set<Edge> seen;
  for (const auto& cls : c.classes) {
    std::set<int> touched;
    for (const auto& e : cls) {
      Edge n = make_edge(e.first, e.second);
      if (!g.has_edge(n.first, n.second)) return false;
      if (!seen.insert(n).second) return false;
      if (!touched.insert(n.first).second || !touched.insert(n.second).second) return false;
    }
  }
  return !require_cover || seen.size() == g.edges().size();
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp(g.num_vertices(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int v : g.adjacency()[members[i]]) {
        if (comp[v] < 0) {
          comp[v] = comp[s];
          members.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Component largest_connected_component(const Graph& g) {
  Component best;
  for (auto& members : connected_components(g)) {
    if (static_cast<int>(members.size()) > best.size) {
      best.size = static_cast<int>(members.size());
      best.members = std::move(members);
    }
  }
  return best;
}

Graph make_line(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph make_grid(int rows, int cols) {
  std::vector<Edge> e;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, std::move(e));
}

// Rows of row_length qubits joined by bridge qubits every fourth column,
// alternating offset 0 and 2 between consecutive row gaps. Row qubits are
// numbered first, bridges after them.
Graph make_heavy_hex(int rows, int row_length) {
  std::vector<Edge> e;
  auto id = [row_length](int r, int c) { return r * row_length + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < row_length; ++c) e.emplace_back(id(r, c), id(r, c + 1));
  }
  int next = rows * row_length;
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = (r % 2 == 0) ? 0 : 2; c < row_length; c += 4) {
      e.emplace_back(id(r, c), next);
      e.emplace_back(next, id(r + 1, c));
      ++next;
    }
  }
  return Graph(next, std::move(e));
}

Graph make_all_to_all(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph(n, std::move(e));
}

Graph trim_connected(const Graph& g, int n) {
  if (n > g.num_vertices()) throw Error(ErrorKind::Validation, "trim: target larger than graph");
  std::vector<bool> alive(g.num_vertices(), true);
  int count = g.num_vertices();
  auto connected_without = [&](int drop) {
    int start = -1;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (alive[v] && v != drop) {
        start = v;
        break;
      }
    }
    if (start < 0) return true;
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.adjacency()[u]) {
        if (alive[v] && v != drop && !seen[v]) {
          seen[v] = true;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    return reached == count - 1;
  };
  while (count > n) {
    bool removed = false;
    for (int v = g.num_vertices() - 1; v >= 0; --v) {
      if (alive[v] && connected_without(v)) {
        alive[v] = false;
        --count;
        removed = true;
        break;
      }
    }
    if (!removed) throw Error(ErrorKind::Execution, "trim: cannot keep graph connected");
  }
  std::vector<int> keep;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (alive[v]) keep.push_back(v);
  }
  return g.induced(keep);
}

}  // namespace qbench
