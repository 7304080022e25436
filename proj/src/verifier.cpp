#include "reconf/verifier.hpp"

#include <algorithm>
#include <future>

#include "reconf/errors.hpp"

namespace reconf {

bool run_verifier(const VerifierSpec& v, const Word& proof, std::uint64_t seed) {
  if (proof.size() != v.proof_len)
    throw invalid_instance_error("proof length mismatch");
  VerifierQuery q = v.generate(seed);
  Word symbols;
  symbols.reserve(q.positions.size());
  for (std::size_t pos : q.positions) {
    if (pos >= proof.size())
      throw invalid_instance_error("verifier query out of range");
    symbols.push_back(proof[pos]);
  }
  return q.decide(symbols);
}

Rat verifier_acceptance(const VerifierSpec& v, const Word& proof,
                        unsigned threads) {
  if (v.num_seeds == 0) throw invalid_instance_error("empty seed space");
  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t acc = 0;
    for (std::uint64_t s = lo; s < hi; ++s) acc += run_verifier(v, proof, s);
    return acc;
  };
  std::uint64_t accepting = 0;
  if (threads <= 1 || v.num_seeds < 1024) {
    accepting = count_range(0, v.num_seeds);
  } else {
    std::uint64_t chunk = (v.num_seeds + threads - 1) / threads;
    std::vector<std::future<std::uint64_t>> parts;
    for (std::uint64_t lo = 0; lo < v.num_seeds; lo += chunk) {
      std::uint64_t hi = std::min(v.num_seeds, lo + chunk);
      parts.push_back(std::async(std::launch::async, count_range, lo, hi));
    }
    for (auto& p : parts) accepting += p.get();
  }
  return Rat(BigInt(accepting), BigInt(v.num_seeds));
}

std::vector<Rat> query_probabilities(const VerifierSpec& v) {
  std::vector<std::uint64_t> hits(v.proof_len, 0);
  std::vector<char> seen(v.proof_len, 0);
  for (std::uint64_t s = 0; s < v.num_seeds; ++s) {
    VerifierQuery q = v.generate(s);
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t pos : q.positions) {
      if (pos >= v.proof_len)
        throw invalid_instance_error("verifier query out of range");
      if (!seen[pos]) {
        seen[pos] = 1;
        ++hits[pos];
      }
    }
  }
  std::vector<Rat> probs;
  probs.reserve(v.proof_len);
  for (std::uint64_t h : hits)
    probs.emplace_back(BigInt(h), BigInt(v.num_seeds));
  return probs;
}

Rat smoothness_deviation(const VerifierSpec& v) {
  if (v.proof_len == 0) return 0;
  std::vector<Rat> probs = query_probabilities(v);
  Rat mean = 0;
  for (const Rat& p : probs) mean += p;
  mean /= static_cast<int>(v.proof_len);
  Rat worst = 0;
  for (const Rat& p : probs) {
    Rat dev = p > mean ? Rat(p - mean) : Rat(mean - p);
    if (dev > worst) worst = dev;
  }
  return worst;
}

}  // namespace reconf
