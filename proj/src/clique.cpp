#include "reconf/clique.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "reconf/errors.hpp"

namespace reconf {

namespace {

std::uint64_t bit(std::size_t v) { return std::uint64_t{1} << v; }

void rec_enumerate(std::uint64_t cur, std::uint64_t candidates,
                   const std::vector<std::uint64_t>& adj,
                   std::vector<std::uint64_t>& out, std::uint64_t cap) {
  if (out.size() >= cap) throw capacity_error("clique count exceeds cap");
  out.push_back(cur);
  while (candidates) {
    std::size_t v = static_cast<std::size_t>(std::countr_zero(candidates));
    candidates &= candidates - 1;  // only vertices after v remain
    rec_enumerate(cur | bit(v), candidates & adj[v], adj, out, cap);
  }
}

}  // namespace

void CliqueInstance::validate() const {
  if (g.n > 64) throw capacity_error("clique solver needs n <= 64");
  if (!g.is_clique_mask(start))
    throw invalid_instance_error("start set does not induce a clique");
  if (!g.is_clique_mask(goal))
    throw invalid_instance_error("goal set does not induce a clique");
}

std::vector<std::uint64_t> enumerate_cliques(const Graph& g,
                                             const CliqueCaps& caps) {
  auto adj = g.adjacency_masks();
  std::uint64_t all = (g.n == 64) ? ~std::uint64_t{0}
                                  : (bit(g.n) - 1);
  std::vector<std::uint64_t> out;
  rec_enumerate(0, all, adj, out, caps.max_cliques);
  return out;
}

std::size_t clique_maxmin(const CliqueInstance& inst, const CliqueCaps& caps) {
  inst.validate();
  auto cliques = enumerate_cliques(inst.g, caps);
  auto adj = inst.g.adjacency_masks();
  std::unordered_map<std::uint64_t, std::uint32_t> id;
  id.reserve(cliques.size() * 2);
  for (std::uint32_t i = 0; i < cliques.size(); ++i) id.emplace(cliques[i], i);

  // Sort by size descending; process levels, merging each activated clique
  // with its already-active supersets C u {v}.
  std::vector<std::uint32_t> order(cliques.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(cliques[a]) > std::popcount(cliques[b]);
                   });

  std::vector<std::uint32_t> parent(cliques.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<char> active(cliques.size(), 0);

  std::uint32_t s = id.at(inst.start);
  std::uint32_t g = id.at(inst.goal);
  std::size_t pos = 0;
  for (std::size_t level = inst.g.n + 1; level-- > 0;) {
    for (; pos < order.size() &&
           static_cast<std::size_t>(std::popcount(cliques[order[pos]])) == level;
         ++pos) {
      std::uint32_t i = order[pos];
      active[i] = 1;
      std::uint64_t c = cliques[i];
      // Common neighbors of all members; every vertex for the empty clique.
      std::uint64_t cand = (inst.g.n == 64) ? ~std::uint64_t{0} : (bit(inst.g.n) - 1);
      std::uint64_t rest = c;
      while (rest) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
        rest &= rest - 1;
        cand &= adj[v];
      }
      cand &= ~c;
      while (cand) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(cand));
        cand &= cand - 1;
        auto it = id.find(c | bit(v));
        if (it != id.end() && active[it->second])
          parent[find(i)] = find(it->second);
      }
    }
    if (active[s] && active[g] && find(s) == find(g)) return level;
  }
  throw std::logic_error("clique space is connected through the empty set");
}

std::optional<std::vector<std::uint64_t>> clique_witness(
    const CliqueInstance& inst, std::size_t threshold, const CliqueCaps& caps) {
  inst.validate();
  if (std::popcount(inst.start) < static_cast<int>(threshold) ||
      std::popcount(inst.goal) < static_cast<int>(threshold))
    return std::nullopt;
  auto cliques = enumerate_cliques(inst.g, caps);
  auto adj = inst.g.adjacency_masks();
  std::unordered_map<std::uint64_t, std::uint32_t> id;
  std::vector<std::uint64_t> admitted;
  for (std::uint64_t c : cliques) {
    if (std::popcount(c) >= static_cast<int>(threshold)) {
      id.emplace(c, static_cast<std::uint32_t>(admitted.size()));
      admitted.push_back(c);
    }
  }
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> parent(admitted.size(), kNone);
  std::uint32_t s = id.at(inst.start), g = id.at(inst.goal);
  std::deque<std::uint32_t> queue{s};
  parent[s] = s;
  auto visit = [&](std::uint64_t next, std::uint32_t from) {
    auto it = id.find(next);
    if (it != id.end() && parent[it->second] == kNone) {
      parent[it->second] = from;
      queue.push_back(it->second);
    }
  };
  while (!queue.empty() && parent[g] == kNone) {
    std::uint32_t i = queue.front();
    queue.pop_front();
    std::uint64_t c = admitted[i];
    std::uint64_t rest = c;
    while (rest) {  // removals
      std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
      rest &= rest - 1;
      visit(c & ~bit(v), i);
    }
    std::uint64_t cand = (inst.g.n == 64) ? ~std::uint64_t{0} : (bit(inst.g.n) - 1);
    rest = c;
    while (rest) {
      std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
      rest &= rest - 1;
      cand &= adj[v];
    }
    cand &= ~c;
    while (cand) {  // additions
      std::size_t v = static_cast<std::size_t>(std::countr_zero(cand));
      cand &= cand - 1;
      visit(c | bit(v), i);
    }
  }
  if (parent[g] == kNone) return std::nullopt;
  std::vector<std::uint64_t> path;
  for (std::uint32_t cur = g;; cur = parent[cur]) {
    path.push_back(admitted[cur]);
    if (cur == s) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t clique_number(const Graph& g, const CliqueCaps& caps) {
  std::size_t best = 0;
  for (std::uint64_t c : enumerate_cliques(g, caps))
    best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(c)));
  return best;
}

std::uint64_t vertex_set_mask(const std::vector<std::size_t>& vertices,
                              std::size_t n) {
  std::uint64_t mask = 0;
  for (std::size_t v : vertices) {
    if (v >= n || v >= 64) throw invalid_instance_error("vertex out of range");
    mask |= bit(v);
  }
  return mask;
}

std::vector<std::size_t> mask_vertices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  while (mask) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t parse_vertex_set(const std::string& csv, std::size_t n) {
  std::vector<std::size_t> vs;
  if (!csv.empty() && csv != "-") {
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) vs.push_back(std::stoul(tok));
  }
  return vertex_set_mask(vs, n);
}

std::string vertex_set_str(std::uint64_t mask) {
  std::string out;
  for (std::size_t v : mask_vertices(mask)) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(v);
  }
  return out.empty() ? "-" : out;
}

}  // namespace reconf
