#include "reconf/graph.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reconf/errors.hpp"

namespace reconf {

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n || v >= n) throw invalid_instance_error("edge endpoint out of range");
  if (u == v) throw invalid_instance_error("self-loops not allowed");
  adj[u][v] = adj[v][u] = true;
}

std::size_t Graph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < n; ++u) d += adj[v][u];
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (std::size_t v = 0; v < n; ++v) twice += degree(v);
  return twice / 2;
}

bool Graph::is_regular(std::size_t* degree_out) const {
  if (n == 0) return true;
  std::size_t d = degree(0);
  for (std::size_t v = 1; v < n; ++v)
    if (degree(v) != d) return false;
  if (degree_out) *degree_out = d;
  return true;
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (n > 64) throw capacity_error("bitmask adjacency needs n <= 64");
  std::vector<std::uint64_t> rows(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u)
      if (adj[v][u]) rows[v] |= (std::uint64_t{1} << u);
  return rows;
}

bool Graph::is_clique_mask(std::uint64_t mask) const {
  if (n > 64) throw capacity_error("bitmask adjacency needs n <= 64");
  for (std::size_t v = 0; v < n; ++v) {
    if (!((mask >> v) & 1u)) continue;
    for (std::size_t u = v + 1; u < n; ++u) {
      if (((mask >> u) & 1u) && !adj[v][u]) return false;
    }
  }
  return true;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw invalid_instance_error("cycle needs >= 3 vertices");
  Graph g(n);
  for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["edges"] = nlohmann::json::array();
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v)
      if (g.adj[u][v]) j["edges"].push_back({u, v});
  return j.dump(2);
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Graph g(j.at("n").get<std::size_t>());
  for (const auto& e : j.at("edges")) {
    g.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  }
  return g;
}

Graph graph_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

}  // namespace reconf
