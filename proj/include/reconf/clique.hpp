#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reconf/graph.hpp"

namespace reconf {

// Clique reconfiguration under token addition/removal: adjacent cliques
// satisfy |C delta C'| = 1. The empty set counts as a clique of size 0, so
// the solution space is always connected.
struct CliqueInstance {
  Graph g;
  std::uint64_t start = 0;  // vertex bitmask
  std::uint64_t goal = 0;

  void validate() const;  // both endpoints must induce cliques
};

struct CliqueCaps {
  std::uint64_t max_cliques = std::uint64_t{1} << 22;
};

// Every clique of g as a bitmask, including the empty set.
std::vector<std::uint64_t> enumerate_cliques(const Graph& g,
                                             const CliqueCaps& caps = {});

// Exact val_G(start <-> goal): max over reconfiguration sequences of the
// minimum clique size, by descending-threshold connectivity.
std::size_t clique_maxmin(const CliqueInstance& inst,
                          const CliqueCaps& caps = {});

// A sequence of cliques from start to goal all of size >= threshold, if any.
std::optional<std::vector<std::uint64_t>> clique_witness(
    const CliqueInstance& inst, std::size_t threshold,
    const CliqueCaps& caps = {});

std::size_t clique_number(const Graph& g, const CliqueCaps& caps = {});

std::uint64_t vertex_set_mask(const std::vector<std::size_t>& vertices,
                              std::size_t n);
std::vector<std::size_t> mask_vertices(std::uint64_t mask);
std::uint64_t parse_vertex_set(const std::string& csv, std::size_t n);
std::string vertex_set_str(std::uint64_t mask);

}  // namespace reconf
