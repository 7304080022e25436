#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reconf/circuit.hpp"
#include "reconf/codes.hpp"
#include "reconf/csp.hpp"
#include "reconf/pcpp.hpp"
#include "reconf/rational.hpp"
#include "reconf/verifier.hpp"
#include "reconf/word.hpp"

namespace reconf {

enum class PcppKind { kReference, kSampled };

struct PcrpParams {
  Rat rho;        // declared code distance
  Rat kappa;      // measured tester soundness ratio
  bool kappa_exact = true;  // false when kappa was sampled, not enumerated
  std::size_t q = 0;        // PCPP query count
  Rat s_ckt;      // PCPP soundness error
  Rat delta_ckt;  // rho/4
  Rat eps;        // min{(1-s_ckt)/2q, rho/3}
  Rat bound;      // min{(kappa*eps)^2, (1-eps)^2 (1-s_ckt)/2}
  // Decoded values along adjacent proofs can only change by crossing *:
  // requires (rho - 2 eps) * ell > 1. Audits demand this.
  bool auditable = false;

  void validate() const;
};

// One verification instance: the circuit, the code, the PCPP instantiation
// and the derived parameter pack. Proofs are words f.g.pi over {0,1,bot}.
struct PcrpInstance {
  BoolCircuit s;
  CodeSpec code;
  PcppVerifier pcpp;
  PcppKind kind = PcppKind::kReference;
  std::size_t sample_k = 0;
  Regions regions;
  PcrpParams params;

  std::uint64_t tester_seeds() const;  // 4^n per tester
  std::uint64_t num_seeds() const;     // full product seed space
};

PcrpInstance make_pcrp_instance(const BoolCircuit& s, PcppKind kind,
                                std::size_t sample_k = 2,
                                unsigned threads = 1);

// sigma_start = Enc(0^n).Enc(0^n).Pi(0,0), sigma_goal likewise with 1^n.
Word canonical_start(const PcrpInstance& inst);
Word canonical_goal(const PcrpInstance& inst);

// One verifier run on the concatenated seed
// ((tf * 4^n + tg) * ell + i) * ell + j) * np + pcpp_seed.
bool pcrp_verify(const PcrpInstance& inst, const Word& w, std::uint64_t seed);

// Exact acceptance probability. Factorizes over the independent seed fields;
// equals the accepting-seed fraction of pcrp_verify (cross-checked in tests
// against full enumeration).
Rat acceptance_probability(const PcrpInstance& inst, const Word& w);
Rat acceptance_probability_enumerated(const PcrpInstance& inst, const Word& w,
                                      unsigned threads = 1);

// The composed system as a plain verifier (for CSP conversion, smoothness
// probes and enumeration cross-checks).
VerifierSpec pcrp_as_verifier(const PcrpInstance& inst);

// Completeness: realizes the vertex path as a proof sequence in which every
// element is accepted with probability 1. Per hop alpha -> beta: blank g,
// rewrite the proof, write Enc(beta), then the mirrored phases advancing f.
std::vector<Word> completeness_sequence(const PcrpInstance& inst,
                                        const std::vector<Bits>& path);

struct GammaExtraction {
  enum class Verdict { kValidPath, kViolation, kBothFar };
  Verdict verdict = Verdict::kValidPath;
  std::vector<Bits> gamma;
  std::size_t index = 0;        // violating / both-far step
  std::size_t token_moves = 0;  // bounded by 2 * (T + 1)
};

// Decodes each step to (alpha, beta) with * allowed and walks the token grid
// to recover a vertex sequence gamma from 0^n to 1^n. Returns the first step
// whose decoded pair violates the pair language, a both-far witness when the
// closeness precondition fails, or a valid path.
GammaExtraction extract_gamma(const PcrpInstance& inst,
                              const std::vector<Word>& seq, const Rat& eps);

struct AuditResult {
  std::size_t index = 0;
  Rat rejection;       // exact rejection probability of seq[index]
  Rat bound;           // params.bound
  Rat case_bound;      // the branch bound: (kappa eps)^2 or (1-eps)^2(1-s)/2
  bool both_far = false;
  std::vector<Bits> gamma;  // empty in the both-far case
};

// Lemma checker for NO instances: locates a proof rejected with probability
// exceeding params.bound. Throws audit_failure when the sequence defeats the
// bound (a counterexample).
AuditResult soundness_audit(const PcrpInstance& inst,
                            const std::vector<Word>& seq);

// Adversarial sequence families used to exercise the audit.
std::vector<Word> interpolation_sequence(const PcrpInstance& inst);
std::vector<Word> interleaved_interpolation_sequence(const PcrpInstance& inst);
std::vector<Word> random_walk_sequence(const PcrpInstance& inst,
                                       std::size_t walk_steps,
                                       std::uint64_t rng_seed);
std::vector<Word> blank_heavy_sequence(const PcrpInstance& inst);

// PCP <-> CSP bridge (both directions preserve the value exactly).
struct PcrpCsp {
  ConstraintSystem psi;
  Word start;
  Word goal;
};

PcrpCsp pcrp_to_csp(const VerifierSpec& v, const Word& start, const Word& goal,
                    std::uint64_t table_cap = std::uint64_t{1} << 23);
VerifierSpec csp_to_verifier(const ConstraintSystem& psi);

// Proof / sequence files: {"ell", "p", "word"} and {"ell", "p", "steps"}.
std::string proof_to_json(const Regions& regions, const Word& w);
std::pair<Regions, Word> proof_from_json_file(const std::string& path);
std::string sequence_to_json(const Regions& regions,
                             const std::vector<Word>& seq);
std::pair<Regions, std::vector<Word>> sequence_from_json_file(
    const std::string& path);

}  // namespace reconf
