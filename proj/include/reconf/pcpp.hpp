#pragma once

#include <cstdint>

#include "reconf/circuit.hpp"
#include "reconf/codes.hpp"
#include "reconf/rational.hpp"
#include "reconf/verifier.hpp"
#include "reconf/word.hpp"

namespace reconf {

// Region layout of the words a PCPP verifier reads: codeword halves f and g
// of length ell each, then a proof region of length p.
struct Regions {
  std::size_t ell = 0;
  std::size_t p = 0;
  std::size_t total() const { return 2 * ell + p; }
};

// Membership in the pair language: alpha = beta, S(alpha) = beta or
// S(beta) = alpha.
bool lckt_member(const BoolCircuit& s, const Bits& alpha, const Bits& beta);

// Distance from w (length 2*ell, ternary) to the set of encoded member
// pairs Enc(alpha) . Enc(beta).
Rat lckt_distance(const BoolCircuit& s, const Word& w, const CodeSpec& code);

struct PcppParams {
  Rat delta;   // proximity parameter, rho/4
  Rat s;       // soundness error
  bool smooth; // every position of f.g.pi queried with equal probability
  std::size_t q;
};

struct PcppVerifier {
  VerifierSpec spec;  // raw verifier over {0,1,bot}^{2 ell + p}
  PcppParams params;
  Regions regions;
};

// Honest proof for a member pair: alpha . beta repetition-coded to length p.
// p must be a multiple of 2n.
Bits pcpp_honest_proof(const Bits& alpha, const Bits& beta, std::size_t p);
std::size_t pcpp_proof_length(std::size_t n);  // 4n: two repetition blocks

// Exact verifier standing in for a full PCPP construction: reads the whole
// word, accepts iff f.g is delta-close to the encoded pair language. One
// seed, fully smooth, soundness error declared 1/100 (the test is exact).
PcppVerifier reference_pcpp(const BoolCircuit& s, const CodeSpec& code);

// Query-limited surrogate: reads one repetition block of the proof to
// recover the claimed pair, then k uniform positions of f.g compared against
// the claimed codewords. Smooth within each region separately.
PcppVerifier sampled_pcpp(const BoolCircuit& s, const CodeSpec& code,
                          std::size_t k);

// The bot-aware wrapper: accept when the queried part of f.g contains bot;
// otherwise accept iff the queried part of pi is bot-free and the inner
// decision accepts.
bool modified_run(const VerifierSpec& v, const Regions& regions, const Word& w,
                  std::uint64_t seed);

// Exact accept probability of the modified wrapper over v's seeds.
Rat modified_accept_probability(const VerifierSpec& v, const Regions& regions,
                                const Word& w);

// The wrapper packaged as a verifier (used when composing the full system).
VerifierSpec modified_verifier(const VerifierSpec& v, const Regions& regions);

}  // namespace reconf
