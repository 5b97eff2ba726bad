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
#include <utility>
#include <vector>

namespace qbench {

/// Undirected edge stored as (min, max).
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Simple undirected graph over vertices 0..num_vertices-1.
class Graph {
 public:
  Graph() = default;
  /// Normalizes, sorts and de-duplicates \p edges; rejects loops and bad indices.
  Graph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  bool has_edge(int u, int v) const;

  /// Same vertex set, edges filtered to \p keep.
  Graph with_edges(std::vector<Edge> keep) const { return Graph(n_, std::move(keep)); }
  /// Subgraph induced by \p vertices, relabelled to 0..k-1 in the given order.
  Graph induced(const std::vector<int>& vertices) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

struct EdgeColoring {
  std::vector<std::vector<Edge>> classes;
  int num_colors() const { return static_cast<int>(classes.size()); }
};

bool is_bipartite(const Graph& g);

/// Delta colors on bipartite graphs (alternating-path recoloring), otherwise
/// greedy over lexicographically ordered edges, falling back to a Vizing
/// (Misra-Gries) coloring when greedy exceeds Delta+1 colors.
/// With \p max_colors only the first max_colors classes are returned.
EdgeColoring edge_coloring(const Graph& g, std::optional<int> max_colors = std::nullopt);

/// Structural check: disjoint classes, matchings, every class edge in \p g.
/// When \p require_cover is set, the union must equal the edge set.
bool is_valid_edge_coloring(const Graph& g, const EdgeColoring& c, bool require_cover);

struct Component {
  int size = 0;
  std::vector<int> members;  // sorted
};

std::vector<std::vector<int>> connected_components(const Graph& g);

/// Largest component; isolated vertices count as components of size 1,
/// an empty vertex set gives size 0. Ties go to the component with the
/// smallest vertex.
Component largest_connected_component(const Graph& g);

/// Line, grid, heavy-hex and complete graph generators used by the fixtures.
Graph make_line(int n);
Graph make_grid(int rows, int cols);
Graph make_heavy_hex(int rows, int row_length);
Graph make_all_to_all(int n);
/// Drops the highest-numbered removable vertices until \p n remain connected.
Graph trim_connected(const Graph& g, int n);

}  // namespace qbench
