#pragma once

// Test-side oracles and instance generators. The oracles here are
// independent routes to quantities the library computes; expected values in
// the suites are frozen from these, not from the implementation under test.

#include <optional>
#include <random>
#include <vector>

#include "reconf/circuit.hpp"
#include "reconf/csp.hpp"
#include "reconf/rational.hpp"
#include "reconf/word.hpp"

namespace reconf::testing {

// Clause satisfaction straight off the literal list.
inline bool clause_satisfied(const std::vector<int>& clause, const Bits& a) {
  for (int lit : clause) {
    std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
    if ((a[v] == 1) == (lit > 0)) return true;
  }
  return false;
}

inline Rat clause_fraction(const CnfFormula& cnf, const Bits& a) {
  std::size_t sat = 0;
  for (const auto& clause : cnf.clauses) sat += clause_satisfied(clause, a);
  return rat(static_cast<std::int64_t>(sat),
             static_cast<std::int64_t>(cnf.clauses.size()));
}

// Independent maxmin oracle: descending threshold + plain BFS, no shared
// code with the solver's union-find route.
inline Rat bfs_maxmin(const ConstraintSystem& psi, const Word& start,
                      const Word& goal) {
  std::uint64_t states = 1;
  for (std::size_t i = 0; i < psi.num_vars; ++i) states *= psi.alphabet;
  auto index_of = [&](const Word& w) {
    std::uint64_t idx = 0;
    for (std::size_t i = psi.num_vars; i-- > 0;) idx = idx * psi.alphabet + w[i];
    return idx;
  };
  auto word_of = [&](std::uint64_t idx) {
    Word w(psi.num_vars);
    for (std::size_t i = 0; i < psi.num_vars; ++i) {
      w[i] = static_cast<Sym>(idx % psi.alphabet);
      idx /= psi.alphabet;
    }
    return w;
  };
  std::vector<std::size_t> counts(states);
  for (std::uint64_t i = 0; i < states; ++i)
    counts[i] = satisfied_count(psi, word_of(i));
  std::uint64_t s = index_of(start), g = index_of(goal);
  for (std::size_t level = psi.constraints.size() + 1; level-- > 0;) {
    if (counts[s] < level || counts[g] < level) continue;
    std::vector<char> seen(states, 0);
    std::vector<std::uint64_t> frontier{s};
    seen[s] = 1;
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (std::uint64_t u : frontier) {
        Word w = word_of(u);
        for (std::size_t pos = 0; pos < psi.num_vars; ++pos) {
          Word w2 = w;
          for (Sym sym = 0; sym < psi.alphabet; ++sym) {
            if (sym == w[pos]) continue;
            w2[pos] = sym;
            std::uint64_t v = index_of(w2);
            if (!seen[v] && counts[v] >= level) {
              seen[v] = 1;
              next.push_back(v);
            }
          }
          w2[pos] = w[pos];
        }
      }
      frontier = std::move(next);
    }
    if (seen[g])
      return rat(static_cast<std::int64_t>(level),
                 static_cast<std::int64_t>(psi.constraints.size()));
  }
  return 0;
}

// Orbit walk with an explicit visited table; the reachability oracle.
inline std::optional<std::uint64_t> orbit_reach(const BoolCircuit& s) {
  std::vector<char> visited(std::size_t{1} << s.n, 0);
  std::uint64_t ones = (std::uint64_t{1} << s.n) - 1;
  std::uint64_t cur = 0, steps = 0;
  while (true) {
    if (cur == ones) return steps;
    if (visited[cur]) return std::nullopt;
    visited[cur] = 1;
    cur = eval_circuit_u64(s, cur);
    ++steps;
  }
}

// Explicit function table as a circuit; the generator forces the promise.
inline BoolCircuit table_circuit(std::size_t n,
                                 const std::vector<std::uint64_t>& table) {
  CircuitBuilder b(n);
  std::vector<std::uint32_t> in;
  for (std::size_t i = 0; i < n; ++i)
    in.push_back(b.input(static_cast<std::uint32_t>(i)));
  std::vector<std::uint32_t> sel;
  for (std::uint64_t v = 0; v < table.size(); ++v)
    sel.push_back(b.eq_const(in, v));
  std::vector<std::uint32_t> outs;
  for (std::size_t bit = 0; bit < n; ++bit) {
    std::vector<std::uint32_t> hits;
    for (std::uint64_t v = 0; v < table.size(); ++v)
      if ((table[v] >> bit) & 1u) hits.push_back(sel[v]);
    outs.push_back(b.any_of(hits));
  }
  return std::move(b).build(outs);
}

inline BoolCircuit random_table_circuit(std::size_t n, std::mt19937_64& rng) {
  std::uint64_t states = std::uint64_t{1} << n;
  std::vector<std::uint64_t> table(states);
  for (auto& v : table) v = rng() % states;
  table[states - 1] = states - 1;  // the reachability promise
  return table_circuit(n, table);
}

inline BoolCircuit random_gate_circuit(std::size_t n, std::mt19937_64& rng) {
  CircuitBuilder b(n);
  std::vector<std::uint32_t> in, wires;
  for (std::size_t i = 0; i < n; ++i) {
    in.push_back(b.input(static_cast<std::uint32_t>(i)));
    wires.push_back(in.back());
  }
  std::size_t extra = 16 + rng() % 32;
  for (std::size_t k = 0; k < extra; ++k) {
    std::uint32_t a = wires[rng() % wires.size()];
    std::uint32_t c = wires[rng() % wires.size()];
    switch (rng() % 4) {
      case 0: wires.push_back(b.g_and(a, c)); break;
      case 1: wires.push_back(b.g_or(a, c)); break;
      case 2: wires.push_back(b.g_xor(a, c)); break;
      default: wires.push_back(b.g_not(a)); break;
    }
  }
  std::uint32_t at_ones = b.all_of(in);
  std::vector<std::uint32_t> outs;
  for (std::size_t i = 0; i < n; ++i)
    outs.push_back(b.g_or(at_ones, wires[rng() % wires.size()]));
  return std::move(b).build(outs);
}

}  // namespace reconf::testing
