#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace reconf {

// Undirected simple graph, adjacency-matrix backed. Small by design: the
// solvers enumerate cliques (n <= 64) and the spectral certifier factors a
// dense matrix (n up to a few hundred).
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<bool>> adj;

  Graph() = default;
  explicit Graph(std::size_t vertices)
      : n(vertices), adj(vertices, std::vector<bool>(vertices, false)) {}

  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const { return adj[u][v]; }
  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;
  bool is_regular(std::size_t* degree_out = nullptr) const;

  // Row bitmasks; requires n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

  // True iff all pairs within `mask` are adjacent.
  bool is_clique_mask(std::uint64_t mask) const;
};

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);

// JSON wire format: {n, edges:[[u,v],...]}.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
Graph graph_from_json_file(const std::string& path);

}  // namespace reconf
