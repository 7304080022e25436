#include "reconf/solve.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>

#include "reconf/errors.hpp"

namespace reconf {

namespace {

// Mixed-radix state index: position 0 is the least significant digit.
struct StateSpace {
  std::size_t num_vars;
  std::size_t alphabet;
  std::uint64_t count;

  StateSpace(const ConstraintSystem& psi, const SolveCaps& caps)
      : num_vars(psi.num_vars), alphabet(psi.alphabet) {
    count = 1;
    for (std::size_t i = 0; i < num_vars; ++i) {
      if (count > caps.max_states / alphabet + 1)
        throw capacity_error("state space exceeds cap");
      count *= alphabet;
    }
    if (count > caps.max_states) throw capacity_error("state space exceeds cap");
  }

  std::uint64_t index(const Word& w) const {
    std::uint64_t idx = 0;
    for (std::size_t i = num_vars; i-- > 0;) idx = idx * alphabet + w[i];
    return idx;
  }

  Word word(std::uint64_t idx) const {
    Word w(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) {
      w[i] = static_cast<Sym>(idx % alphabet);
      idx /= alphabet;
    }
    return w;
  }

  // Invokes fn for every state adjacent to idx (one symbol changed).
  template <typename Fn>
  void for_neighbors(std::uint64_t idx, const Word& w, Fn&& fn) const {
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < num_vars; ++i) {
      std::uint64_t base = idx - w[i] * stride;
      for (std::size_t s = 0; s < alphabet; ++s) {
        if (s != w[i]) fn(base + s * stride);
      }
      stride *= alphabet;
    }
  }
};

std::vector<std::uint32_t> all_satisfied_counts(const ConstraintSystem& psi,
                                                const StateSpace& space) {
  std::vector<std::uint32_t> counts(space.count);
  Word w(space.num_vars, 0);
  for (std::uint64_t idx = 0; idx < space.count; ++idx) {
    counts[idx] = static_cast<std::uint32_t>(satisfied_count(psi, w));
    // Advance w through the mixed-radix order.
    for (std::size_t i = 0; i < space.num_vars; ++i) {
      if (++w[i] < space.alphabet) break;
      w[i] = 0;
    }
  }
  return counts;
}

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

void check_endpoints(const ConstraintSystem& psi, const Word& start,
                     const Word& goal) {
  validate_assignment(psi, start);
  validate_assignment(psi, goal);
  if (psi.constraints.empty())
    throw invalid_instance_error("constraint system has no constraints");
}

}  // namespace

Rat maxmin_value(const ConstraintSystem& psi, const Word& start,
                 const Word& goal, const SolveCaps& caps) {
  check_endpoints(psi, start, goal);
  StateSpace space(psi, caps);
  auto counts = all_satisfied_counts(psi, space);
  std::uint64_t s = space.index(start);
  std::uint64_t g = space.index(goal);
  std::size_t m = psi.constraints.size();

  // Bucket states by satisfied count, then sweep thresholds downward,
  // activating states and merging with already-active neighbors.
  std::vector<std::vector<std::uint32_t>> buckets(m + 1);
  for (std::uint64_t idx = 0; idx < space.count; ++idx)
    buckets[counts[idx]].push_back(static_cast<std::uint32_t>(idx));

  Dsu dsu(space.count);
  std::vector<char> active(space.count, 0);
  for (std::size_t level = m + 1; level-- > 0;) {
    for (std::uint32_t idx : buckets[level]) {
      active[idx] = 1;
      Word w = space.word(idx);
      space.for_neighbors(idx, w, [&](std::uint64_t nb) {
        if (active[nb]) dsu.unite(idx, static_cast<std::uint32_t>(nb));
      });
    }
    if (active[s] && active[g] &&
        dsu.find(static_cast<std::uint32_t>(s)) ==
            dsu.find(static_cast<std::uint32_t>(g))) {
      return rat(static_cast<std::int64_t>(level), static_cast<std::int64_t>(m));
    }
  }
  throw std::logic_error("state space is connected at threshold 0");
}

Rat maxmin_value_bottleneck(const ConstraintSystem& psi, const Word& start,
                            const Word& goal, const SolveCaps& caps) {
  check_endpoints(psi, start, goal);
  StateSpace space(psi, caps);
  auto counts = all_satisfied_counts(psi, space);
  std::uint64_t s = space.index(start);
  std::uint64_t g = space.index(goal);
  std::size_t m = psi.constraints.size();

  constexpr std::int64_t kUnset = -1;
  std::vector<std::int64_t> width(space.count, kUnset);
  using Item = std::pair<std::uint32_t, std::uint64_t>;  // (width, state)
  std::priority_queue<Item> heap;
  width[s] = counts[s];
  heap.push({counts[s], s});
  while (!heap.empty()) {
    auto [w, u] = heap.top();
    heap.pop();
    if (w < width[u]) continue;
    if (u == g) break;
    Word word = space.word(u);
    space.for_neighbors(u, word, [&](std::uint64_t v) {
      std::int64_t cand = std::min<std::int64_t>(w, counts[v]);
      if (cand > width[v]) {
        width[v] = cand;
        heap.push({static_cast<std::uint32_t>(cand), v});
      }
    });
  }
  if (width[g] == kUnset) throw std::logic_error("state space is connected");
  return rat(width[g], static_cast<std::int64_t>(m));
}

std::optional<std::vector<Word>> witness_sequence(const ConstraintSystem& psi,
                                                  const Word& start,
                                                  const Word& goal,
                                                  const Rat& threshold,
                                                  const SolveCaps& caps) {
  check_endpoints(psi, start, goal);
  StateSpace space(psi, caps);
  auto counts = all_satisfied_counts(psi, space);
  std::uint64_t s = space.index(start);
  std::uint64_t g = space.index(goal);

  // Smallest satisfied count adequate for the threshold: count/m >= threshold.
  BigInt num = numerator(threshold), den = denominator(threshold);
  BigInt lhs = num * static_cast<std::int64_t>(psi.constraints.size());
  auto admissible = [&](std::uint64_t idx) {
    return BigInt(counts[idx]) * den >= lhs;
  };
  if (!admissible(s) || !admissible(g)) return std::nullopt;

  constexpr std::uint32_t kNoParent = UINT32_MAX;
  std::vector<std::uint32_t> parent(space.count, kNoParent);
  std::deque<std::uint64_t> queue;
  parent[s] = static_cast<std::uint32_t>(s);
  queue.push_back(s);
  bool found = (s == g);
  while (!queue.empty() && !found) {
    std::uint64_t u = queue.front();
    queue.pop_front();
    Word w = space.word(u);
    space.for_neighbors(u, w, [&](std::uint64_t v) {
      if (parent[v] == kNoParent && admissible(v)) {
        parent[v] = static_cast<std::uint32_t>(u);
        queue.push_back(v);
        if (v == g) found = true;
      }
    });
  }
  if (!found) return std::nullopt;
  std::vector<Word> path;
  for (std::uint64_t cur = g;; cur = parent[cur]) {
    path.push_back(space.word(cur));
    if (cur == s) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool decide_exact_reconfig(const ConstraintSystem& psi, const Word& start,
                           const Word& goal, const SolveCaps& caps) {
  if (value_of(psi, start) != 1 || value_of(psi, goal) != 1)
    throw invalid_instance_error("endpoints must satisfy the system");
  return maxmin_value(psi, start, goal, caps) == 1;
}

PaddedAverage pad_average_acceptance(const VerifierSpec& v,
                                     const std::vector<Word>& seq,
                                     std::uint64_t target_length,
                                     unsigned threads) {
  validate_sequence(seq);
  if (target_length < seq.size())
    throw invalid_instance_error("target_length shorter than the sequence");
  PaddedAverage out;
  out.padded = seq;
  out.padded.resize(target_length, seq.back());
  Rat total = 0;
  for (const Word& step : seq) total += verifier_acceptance(v, step, threads);
  total += Rat(static_cast<std::int64_t>(target_length - seq.size())) *
           verifier_acceptance(v, seq.back(), threads);
  out.average = total / Rat(BigInt(target_length));
  return out;
}

}  // namespace reconf
