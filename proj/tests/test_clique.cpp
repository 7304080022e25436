#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "reconf/clique.hpp"
#include "reconf/errors.hpp"
#include "reconf/graph.hpp"

using namespace reconf;

namespace {

// Independent oracle: BFS over the size-filtered clique family.
std::size_t bfs_clique_maxmin(const Graph& g, std::uint64_t start,
                              std::uint64_t goal) {
  auto cliques = enumerate_cliques(g);
  for (std::size_t level = g.n + 1; level-- > 0;) {
    if (std::popcount(start) < static_cast<int>(level) ||
        std::popcount(goal) < static_cast<int>(level))
      continue;
    std::vector<std::uint64_t> admitted;
    for (std::uint64_t c : cliques)
      if (std::popcount(c) >= static_cast<int>(level)) admitted.push_back(c);
    std::vector<char> seen(admitted.size(), 0);
    auto find_id = [&](std::uint64_t mask) -> std::size_t {
      for (std::size_t i = 0; i < admitted.size(); ++i)
        if (admitted[i] == mask) return i;
      return admitted.size();
    };
    std::vector<std::size_t> frontier{find_id(start)};
    seen[frontier[0]] = 1;
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t i : frontier) {
        for (std::size_t j = 0; j < admitted.size(); ++j) {
          if (seen[j]) continue;
          if (std::popcount(admitted[i] ^ admitted[j]) == 1) {
            seen[j] = 1;
            next.push_back(j);
          }
        }
      }
      frontier = std::move(next);
    }
    if (seen[find_id(goal)]) return level;
  }
  return 0;
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if ((rng() % 1000) < p * 1000) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("clique enumeration counts") {
  CHECK(enumerate_cliques(complete_graph(4)).size() == 16);  // full power set
  CHECK(enumerate_cliques(path_graph(3)).size() == 6);  // {},3x{v},2 edges
}

TEST_CASE("triangle: singleton to singleton keeps one token") {
  Graph k3 = complete_graph(3);
  CliqueInstance inst{k3, 0b001, 0b100};
  CHECK(clique_maxmin(inst) == 1);  // e.g. {a} -> {a,c} -> {c}
  CHECK(bfs_clique_maxmin(k3, 0b001, 0b100) == 1);
}

TEST_CASE("equal endpoints return their size") {
  Graph k4 = complete_graph(4);
  CliqueInstance inst{k4, 0b1011, 0b1011};
  CHECK(clique_maxmin(inst) == 3);
}

TEST_CASE("disjoint edges must pass through the empty clique") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  CliqueInstance inst{g, 0b0011, 0b1100};
  CHECK(clique_maxmin(inst) == 0);
  CHECK(bfs_clique_maxmin(g, 0b0011, 0b1100) == 0);
}

TEST_CASE("non-clique endpoints are rejected") {
  Graph g(3);
  g.add_edge(0, 1);
  CliqueInstance inst{g, 0b101, 0b001};  // {0,2} is not a clique
  CHECK_THROWS_AS(clique_maxmin(inst), invalid_instance_error);
}

TEST_CASE("clique maxmin properties on random graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = random_graph(rng, 6, 0.55);
    auto cliques = enumerate_cliques(g);
    std::uint64_t a = cliques[rng() % cliques.size()];
    std::uint64_t b = cliques[rng() % cliques.size()];
    CliqueInstance inst{g, a, b};
    std::size_t value = clique_maxmin(inst);
    CHECK(value == bfs_clique_maxmin(g, a, b));
    CHECK(value == clique_maxmin({g, b, a}));
    CHECK(value <= static_cast<std::size_t>(
                       std::min(std::popcount(a), std::popcount(b))));
    if ((a & b) == a || (a & b) == b) {
      // Nested endpoints: walk the chain inside the larger clique.
      CHECK(value == static_cast<std::size_t>(
                         std::min(std::popcount(a), std::popcount(b))));
    }
    auto wit = clique_witness(inst, value);
    REQUIRE(wit.has_value());
    CHECK(wit->front() == a);
    CHECK(wit->back() == b);
    for (std::size_t i = 0; i + 1 < wit->size(); ++i)
      CHECK(std::popcount((*wit)[i] ^ (*wit)[i + 1]) == 1);
    for (std::uint64_t c : *wit)
      CHECK(std::popcount(c) >= static_cast<int>(value));
  }
}

TEST_CASE("clique cap raises a capacity error") {
  CliqueCaps caps;
  caps.max_cliques = 4;
  CHECK_THROWS_AS(enumerate_cliques(complete_graph(4), caps), capacity_error);
}

TEST_CASE("vertex set parsing") {
  CHECK(parse_vertex_set("0,2", 3) == 0b101);
  CHECK(parse_vertex_set("-", 3) == 0);
  CHECK(vertex_set_str(0b101) == "0,2");
  CHECK_THROWS_AS(parse_vertex_set("7", 3), invalid_instance_error);
}
