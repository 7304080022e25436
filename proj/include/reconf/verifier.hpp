#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "reconf/rational.hpp"
#include "reconf/word.hpp"

namespace reconf {

// One realized verifier run: nonadaptive query positions plus the decision
// predicate applied to the queried symbols (in position-list order).
struct VerifierQuery {
  std::vector<std::size_t> positions;
  std::function<bool(const Word& symbols)> decide;
};

// A verifier over a uniform finite seed space. The paper's "r random bits"
// is the special case num_seeds = 2^r; exact rational probabilities only
// need uniformity, not a power-of-two seed count.
struct VerifierSpec {
  std::uint64_t num_seeds = 1;
  std::size_t proof_len = 0;
  std::size_t alphabet = 2;
  std::function<VerifierQuery(std::uint64_t seed)> generate;
};

bool run_verifier(const VerifierSpec& v, const Word& proof, std::uint64_t seed);

// Exact acceptance probability by full seed enumeration.
Rat verifier_acceptance(const VerifierSpec& v, const Word& proof,
                        unsigned threads = 1);

// Smoothness: max over positions i of |Pr[i in I] - mean query probability|.
// Zero means every position is queried with equal probability.
Rat smoothness_deviation(const VerifierSpec& v);

// Per-position query probabilities Pr[i in I] (membership, not multiplicity).
std::vector<Rat> query_probabilities(const VerifierSpec& v);

}  // namespace reconf
