#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reconf/rational.hpp"
#include "reconf/word.hpp"

namespace reconf {

// Hadamard code over {0,1,bot}: message bits n, codeword length 2^n, true
// pairwise distance exactly 1/2. The declared rho stays strictly below 1/2
// so the "distance > rho" contract holds verbatim; parameter arithmetic
// downstream (delta = rho/4, epsilon <= rho/3) uses the declared value.
struct CodeSpec {
  std::size_t n = 0;
  std::size_t len = 0;  // 2^n
  Rat rho = rat(49, 100);
  std::size_t q_test = 3;
};

CodeSpec hadamard_spec(std::size_t n);
CodeSpec hadamard_spec(std::size_t n, const Rat& declared_rho);

// Position x (0..2^n-1, bits of x little-endian over message positions)
// holds <msg, x> mod 2.
Word hadamard_encode(const Bits& msg);

// All 2^n codewords, indexed by message value.
std::vector<Word> all_codewords(const CodeSpec& spec);

// BLR linearity test: seed in [0, 4^n) yields (x, y); queries x, y, x^y.
// Rejects when any queried symbol is bot or the linearity check fails.
bool local_test(const Word& f, std::uint64_t seed, const CodeSpec& spec);
std::uint64_t tester_seed_count(const CodeSpec& spec);

// Exact Pr over all 4^n seeds that the tester rejects f.
Rat tester_reject_probability(const Word& f, const CodeSpec& spec);

// Distance to the nearest codeword.
Rat distance_to_code(const Word& f, const CodeSpec& spec);

// min over enumerated non-codewords of Pr[reject] / distance. Enumerates
// all of {0,1,bot}^len (or {0,1}^len when bot_free). Throws capacity_error
// when the word count exceeds the cap; use measure_kappa_sampled beyond.
Rat measure_kappa(const CodeSpec& spec, bool bot_free = false,
                  std::uint64_t cap = std::uint64_t{1} << 22,
                  unsigned threads = 1);
Rat measure_kappa_sampled(const CodeSpec& spec, std::uint64_t samples,
                          std::uint64_t seed);

// Nearest-codeword message when f is eps-close to the code, nullopt ("*")
// otherwise. Requires eps < rho/2, which makes the decoding unique.
std::optional<Bits> decode_nearest(const Word& f, const Rat& eps,
                                   const CodeSpec& spec);

}  // namespace reconf
