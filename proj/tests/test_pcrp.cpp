#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "reconf/errors.hpp"
#include "reconf/pcrp.hpp"
#include "reconf/solve.hpp"

using namespace reconf;

namespace {

std::vector<Bits> dedup(const std::vector<Bits>& xs) {
  std::vector<Bits> out;
  for (const auto& x : xs)
    if (out.empty() || out.back() != x) out.push_back(x);
  return out;
}

BoolCircuit two_cycle_2() {
  // 0 <-> 1 with 2 and 3 fixed: a NO instance (the orbit never leaves {0,1}).
  return testing::table_circuit(2, {1, 0, 2, 3});
}

BoolCircuit stuck_cycle_3() {
  // 0 -> 2 -> 4 -> 2: a NO instance with a tail.
  std::vector<std::uint64_t> t{2, 1, 4, 3, 2, 5, 6, 7};
  return testing::table_circuit(3, t);
}

}  // namespace

TEST_CASE("parameter pack derivation") {
  for (PcppKind kind : {PcppKind::kReference, PcppKind::kSampled}) {
    PcrpInstance inst = make_pcrp_instance(increment_circuit(2), kind, 2);
    const PcrpParams& p = inst.params;
    CHECK(p.rho == rat(49, 100));
    CHECK(p.kappa > 0);
    CHECK(p.kappa_exact);
    CHECK(p.delta_ckt == p.rho / 4);
    CHECK(p.eps ==
          std::min(Rat((1 - p.s_ckt) / Rat(static_cast<std::int64_t>(2 * p.q))),
                   Rat(p.rho / 3)));
    CHECK(p.bound > 0);
    CHECK(p.bound < 1);
    CHECK(p.auditable);
  }
  // n = 1 is below the step-stability threshold (rho - 2eps) * ell > 1.
  PcrpInstance tiny =
      make_pcrp_instance(constant_ones_circuit(1), PcppKind::kReference);
  CHECK_FALSE(tiny.params.auditable);
}

TEST_CASE("canonical proofs are accepted with probability one") {
  for (PcppKind kind : {PcppKind::kReference, PcppKind::kSampled}) {
    for (std::size_t n : {2u, 3u}) {
      PcrpInstance inst = make_pcrp_instance(increment_circuit(n), kind, 2);
      CHECK(acceptance_probability(inst, canonical_start(inst)) == 1);
      CHECK(acceptance_probability(inst, canonical_goal(inst)) == 1);
    }
  }
}

TEST_CASE("verifier behavior on hand-built words") {
  PcrpInstance inst =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  std::size_t ell = inst.code.len;

  Word start = canonical_start(inst);

  SUBCASE("blanked second codeword accepts on every seed") {
    Word w = start;
    for (std::size_t k = 0; k < ell; ++k) w[ell + k] = kBot;
    CHECK(acceptance_probability(inst, w) == 1);
    for (std::uint64_t seed = 0; seed < 256; ++seed)
      CHECK(pcrp_verify(inst, w, seed));
  }

  SUBCASE("both codeword regions blank reject on every seed") {
    Word w = start;
    for (std::size_t k = 0; k < 2 * ell; ++k) w[k] = kBot;
    CHECK(acceptance_probability(inst, w) == 0);
    for (std::uint64_t seed = 0; seed < 256; ++seed)
      CHECK_FALSE(pcrp_verify(inst, w, seed));
  }

  SUBCASE("non-adjacent encoded pair scores below one") {
    Word w = hadamard_encode(parse_bits("00"));
    Word g = hadamard_encode(parse_bits("11"));
    w.insert(w.end(), g.begin(), g.end());
    Bits pi = pcpp_honest_proof(parse_bits("00"), parse_bits("11"),
                                inst.regions.p);
    w.insert(w.end(), pi.begin(), pi.end());
    PcrpInstance id = make_pcrp_instance(identity_circuit(2),
                                         PcppKind::kReference);
    Rat prob = acceptance_probability(id, w);
    CHECK(prob < 1);
    CHECK(prob == acceptance_probability_enumerated(id, w));
  }
}

TEST_CASE("factorized probability equals full seed enumeration") {
  std::mt19937_64 rng(29);
  for (PcppKind kind : {PcppKind::kReference, PcppKind::kSampled}) {
    PcrpInstance inst = make_pcrp_instance(increment_circuit(2), kind, 2);
    std::vector<Word> words{canonical_start(inst), canonical_goal(inst)};
    for (int trial = 0; trial < 4; ++trial) {
      Word w(inst.regions.total());
      for (auto& s : w) s = static_cast<Sym>(rng() % 3);
      words.push_back(w);
    }
    for (const Word& w : words)
      CHECK(acceptance_probability(inst, w) ==
            acceptance_probability_enumerated(inst, w, 2));
  }
}

TEST_CASE("the composed verifier spec mirrors pcrp_verify") {
  PcrpInstance inst =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  VerifierSpec v = pcrp_as_verifier(inst);
  CHECK(v.num_seeds == inst.num_seeds());
  std::mt19937_64 rng(31);
  std::vector<Word> words{canonical_start(inst)};
  for (int trial = 0; trial < 3; ++trial) {
    Word w(inst.regions.total());
    for (auto& s : w) s = static_cast<Sym>(rng() % 3);
    words.push_back(w);
  }
  for (const Word& w : words) {
    for (std::uint64_t seed = 0; seed < v.num_seeds; ++seed)
      CHECK(run_verifier(v, w, seed) == pcrp_verify(inst, w, seed));
  }
}

TEST_CASE("completeness: every proof in the sequence is perfect") {
  std::vector<BoolCircuit> yes = {increment_circuit(2), increment_circuit(3),
                                  constant_ones_circuit(2),
                                  constant_ones_circuit(3),
                                  testing::table_circuit(2, {3, 1, 2, 3})};
  for (PcppKind kind : {PcppKind::kReference, PcppKind::kSampled}) {
    for (const BoolCircuit& s : yes) {
      PcrpInstance inst = make_pcrp_instance(s, kind, 2);
      auto path = reachability_path(s);
      REQUIRE(path.has_value());
      std::vector<Word> seq = completeness_sequence(inst, *path);
      CHECK(seq.front() == canonical_start(inst));
      CHECK(seq.back() == canonical_goal(inst));
      for (std::size_t t = 0; t + 1 < seq.size(); ++t)
        CHECK(diff_positions(seq[t], seq[t + 1]) == 1);
      for (const Word& w : seq)
        CHECK(acceptance_probability(inst, w) == 1);
    }
  }
}

TEST_CASE("one-hop sequence length matches the three-phase count") {
  PcrpInstance inst =
      make_pcrp_instance(constant_ones_circuit(2), PcppKind::kReference);
  auto path = reachability_path(inst.s);
  REQUIRE(path.has_value());
  REQUIRE(path->size() == 2);  // a single hop 00 -> 11
  std::vector<Word> seq = completeness_sequence(inst, *path);
  std::size_t ell = inst.code.len;
  Bits pi_aa = pcpp_honest_proof(parse_bits("00"), parse_bits("00"),
                                 inst.regions.p);
  Bits pi_ab = pcpp_honest_proof(parse_bits("00"), parse_bits("11"),
                                 inst.regions.p);
  Bits pi_bb = pcpp_honest_proof(parse_bits("11"), parse_bits("11"),
                                 inst.regions.p);
  std::size_t d1 = diff_positions(pi_aa, pi_ab);
  std::size_t d2 = diff_positions(pi_ab, pi_bb);
  // blank g + rewrite pi + write g, then the mirrored f phases.
  CHECK(seq.size() == 1 + 4 * ell + d1 + d2);
}

TEST_CASE("single-hop degenerate path") {
  PcrpInstance inst =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  // A path that stutters: hops with alpha == beta add no elements.
  auto path = reachability_path(inst.s);
  REQUIRE(path.has_value());
  std::vector<Bits> stuttering;
  for (const Bits& v : *path) {
    stuttering.push_back(v);
    stuttering.push_back(v);
  }
  CHECK(completeness_sequence(inst, stuttering) ==
        completeness_sequence(inst, *path));
  CHECK_THROWS_AS(completeness_sequence(inst, {Bits(2, 0)}),
                  invalid_instance_error);
}

TEST_CASE("gamma extraction recovers the vertex path from completeness") {
  PcrpInstance inst =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  auto path = reachability_path(inst.s);
  REQUIRE(path.has_value());
  std::vector<Word> seq = completeness_sequence(inst, *path);
  GammaExtraction gx = extract_gamma(inst, seq, inst.params.eps);
  CHECK(gx.verdict == GammaExtraction::Verdict::kValidPath);
  CHECK(gx.gamma.front() == Bits(2, 0));
  CHECK(gx.gamma.back() == Bits(2, 1));
  CHECK(dedup(gx.gamma) == *path);
  CHECK(gx.token_moves <= 2 * (seq.size() + 1));
  for (std::size_t i = 0; i + 1 < gx.gamma.size(); ++i)
    CHECK(lckt_member(inst.s, gx.gamma[i], gx.gamma[i + 1]));
}

TEST_CASE("gamma extraction pinpoints a violating pair on NO instances") {
  PcrpInstance inst =
      make_pcrp_instance(identity_circuit(2), PcppKind::kReference);
  std::vector<Word> seq = interpolation_sequence(inst);
  GammaExtraction gx = extract_gamma(inst, seq, inst.params.eps);
  REQUIRE(gx.verdict == GammaExtraction::Verdict::kViolation);
  CHECK(gx.index < seq.size());
  // The flagged step decodes to an encoded non-member pair.
  std::size_t ell = inst.code.len;
  Word f(seq[gx.index].begin(), seq[gx.index].begin() + ell);
  Word g(seq[gx.index].begin() + ell, seq[gx.index].begin() + 2 * ell);
  auto a = decode_nearest(f, inst.params.eps, inst.code);
  auto b = decode_nearest(g, inst.params.eps, inst.code);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK_FALSE(lckt_member(inst.s, *a, *b));
}

TEST_CASE("soundness audit across circuits, families and instantiations") {
  std::vector<BoolCircuit> no = {identity_circuit(2), identity_circuit(3),
                                 two_cycle_2(), stuck_cycle_3()};
  for (PcppKind kind : {PcppKind::kReference, PcppKind::kSampled}) {
    for (const BoolCircuit& s : no) {
      PcrpInstance inst = make_pcrp_instance(s, kind, 2);
      std::vector<std::vector<Word>> families = {
          interpolation_sequence(inst),
          interleaved_interpolation_sequence(inst),
          random_walk_sequence(inst, 48, 1234),
          random_walk_sequence(inst, 64, 99),
          blank_heavy_sequence(inst),
      };
      for (const auto& seq : families) {
        AuditResult res = soundness_audit(inst, seq);
        CHECK(res.rejection > res.bound);
        CHECK(res.rejection > res.case_bound);
        CHECK(res.bound == inst.params.bound);
        CHECK(res.index < seq.size());
      }
    }
  }
}

TEST_CASE("audit case split: blank-heavy walks hit the tester-squared branch") {
  PcrpInstance inst =
      make_pcrp_instance(identity_circuit(2), PcppKind::kSampled, 2);
  AuditResult blanky = soundness_audit(inst, blank_heavy_sequence(inst));
  CHECK(blanky.both_far);
  CHECK(blanky.case_bound == rat_pow(inst.params.kappa * inst.params.eps, 2));

  AuditResult plain = soundness_audit(inst, interpolation_sequence(inst));
  CHECK_FALSE(plain.both_far);
  CHECK(plain.case_bound ==
        rat_pow(1 - inst.params.eps, 2) * (1 - inst.params.s_ckt) / 2);
  CHECK_FALSE(plain.gamma.empty());
}

TEST_CASE("violating steps defeat the modified verifier quantitatively") {
  // Claim-level check: once the decoded pair is outside the language and the
  // halves carry at most eps*ell bots, the modified wrapper rejects with
  // probability above 1 - s_ckt - eps*q.
  for (PcppKind kind : {PcppKind::kReference, PcppKind::kSampled}) {
    PcrpInstance inst = make_pcrp_instance(identity_circuit(2), kind, 2);
    std::vector<Word> seq = interpolation_sequence(inst);
    AuditResult res = soundness_audit(inst, seq);
    REQUIRE_FALSE(res.both_far);
    const Word& w = seq[res.index];
    std::size_t ell = inst.code.len;
    Word f(w.begin(), w.begin() + ell);
    Word g(w.begin() + ell, w.begin() + 2 * ell);
    Rat eps = inst.params.eps;
    REQUIRE(Rat(static_cast<std::int64_t>(count_bot(f))) <=
            eps * Rat(static_cast<std::int64_t>(ell)));
    REQUIRE(Rat(static_cast<std::int64_t>(count_bot(g))) <=
            eps * Rat(static_cast<std::int64_t>(ell)));
    Rat accept = modified_accept_probability(inst.pcpp.spec, inst.regions, w);
    Rat floor = 1 - inst.params.s_ckt -
                eps * Rat(static_cast<std::int64_t>(inst.params.q));
    CHECK(1 - accept > floor);
  }
}

TEST_CASE("audit rejects misuse") {
  PcrpInstance yes =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  auto path = reachability_path(yes.s);
  std::vector<Word> seq = completeness_sequence(yes, *path);
  CHECK_THROWS_AS(soundness_audit(yes, seq), invalid_instance_error);

  PcrpInstance no =
      make_pcrp_instance(identity_circuit(2), PcppKind::kReference);
  std::vector<Word> bad = interpolation_sequence(no);
  bad.pop_back();  // endpoint no longer sigma_goal
  CHECK_THROWS_AS(soundness_audit(no, bad), invalid_instance_error);
}

TEST_CASE("csp_to_verifier samples constraints uniformly") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  VerifierSpec v = csp_to_verifier(phi);
  CHECK(v.num_seeds == 3);
  CHECK(verifier_acceptance(v, parse_word_digits("110", 2)) == rat(2, 3));
  for (std::uint64_t a = 0; a < 8; ++a) {
    Word w = u64_to_bits(a, 3);
    CHECK(verifier_acceptance(v, w) == value_of(phi, w));
  }

  ConstraintSystem single;
  single.num_vars = 2;
  single.alphabet = 2;
  single.constraints = {phi.constraints[0]};
  single.constraints[0].scope = {0, 1};
  single.constraints[0].table = {0, 1, 1, 0};
  VerifierSpec sv = csp_to_verifier(single);
  CHECK(sv.num_seeds == 1);  // deterministic
  CHECK(verifier_acceptance(sv, Word{0, 1}) == 1);
  CHECK(verifier_acceptance(sv, Word{0, 0}) == 0);
}

TEST_CASE("pcrp_to_csp preserves the value exactly") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  VerifierSpec v = csp_to_verifier(phi);
  PcrpCsp bridge = pcrp_to_csp(v, parse_word_digits("100", 2),
                               parse_word_digits("111", 2));
  CHECK(bridge.psi.constraints.size() == 3);  // one per seed
  for (std::uint64_t a = 0; a < 8; ++a) {
    Word w = u64_to_bits(a, 3);
    CHECK(value_of(bridge.psi, w) == verifier_acceptance(v, w));
    CHECK(value_of(bridge.psi, w) == value_of(phi, w));  // round trip
  }

  // A two-random-bit toy verifier turns into exactly four constraints.
  VerifierSpec toy;
  toy.num_seeds = 4;
  toy.proof_len = 6;
  toy.alphabet = 2;
  toy.generate = [](std::uint64_t seed) {
    VerifierQuery q;
    q.positions = {static_cast<std::size_t>(seed), 5};
    q.decide = [](const Word& sym) { return sym[0] == sym[1]; };
    return q;
  };
  PcrpCsp toy_csp = pcrp_to_csp(toy, Word(6, 0), Word(6, 1));
  CHECK(toy_csp.psi.constraints.size() == 4);
  for (std::uint64_t a = 0; a < 64; ++a) {
    Word w = u64_to_bits(a, 6);
    CHECK(value_of(toy_csp.psi, w) == verifier_acceptance(toy, w));
  }
}

TEST_CASE("pcrp_to_csp on the full verifier at n = 1") {
  PcrpInstance inst =
      make_pcrp_instance(constant_ones_circuit(1), PcppKind::kReference);
  VerifierSpec v = pcrp_as_verifier(inst);
  PcrpCsp bridge =
      pcrp_to_csp(v, canonical_start(inst), canonical_goal(inst));
  CHECK(bridge.psi.num_vars == inst.regions.total());
  CHECK(bridge.psi.alphabet == 3);
  CHECK(bridge.psi.constraints.size() == v.num_seeds);
  // Exhaustive value equality over every ternary proof.
  std::size_t len = inst.regions.total();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= 3;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    Word w(len);
    for (auto& s : w) {
      s = static_cast<Sym>(rest % 3);
      rest /= 3;
    }
    CHECK(value_of(bridge.psi, w) == acceptance_probability(inst, w));
  }
  CHECK(value_of(bridge.psi, bridge.start) == 1);
  CHECK(value_of(bridge.psi, bridge.goal) == 1);
}

TEST_CASE("pcrp_to_csp on larger instances: sampled equality") {
  // A 20-variable random CNF gives 2^20 proofs; sampled value equality.
  std::mt19937_64 rng(47);
  CnfFormula cnf;
  cnf.num_vars = 20;
  for (int c = 0; c < 40; ++c) {
    std::vector<int> clause;
    for (int k = 0; k < 3; ++k) {
      int var = static_cast<int>(1 + rng() % 20);
      clause.push_back(rng() % 2 ? var : -var);
    }
    cnf.clauses.push_back(clause);
  }
  ConstraintSystem psi = cnf_to_csp(cnf);
  VerifierSpec v = csp_to_verifier(psi);
  PcrpCsp bridge = pcrp_to_csp(v, Word(20, 0), Word(20, 1));
  for (int trial = 0; trial < 10000; ++trial) {
    Word w(20);
    for (auto& s : w) s = static_cast<Sym>(rng() % 2);
    CHECK(value_of(bridge.psi, w) == value_of(psi, w));
  }

  // The full reference verifier at n = 2 reads whole words; its constraint
  // tables blow past the cap and must say so rather than thrash.
  PcrpInstance big =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  CHECK_THROWS_AS(pcrp_to_csp(pcrp_as_verifier(big), canonical_start(big),
                              canonical_goal(big)),
                  capacity_error);
}

TEST_CASE("padding the composed verifier approaches certain acceptance") {
  PcrpInstance inst =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  auto path = reachability_path(inst.s);
  std::vector<Word> seq = completeness_sequence(inst, *path);
  VerifierSpec v = pcrp_as_verifier(inst);
  auto res = pad_average_acceptance(v, seq, 1024);
  CHECK(res.average == 1);  // completeness sequences are all-accepting
  CHECK(res.padded.size() == 1024);

  // A sequence with imperfect steps still clears 1 - L/target.
  PcrpInstance no =
      make_pcrp_instance(identity_circuit(2), PcppKind::kReference);
  std::vector<Word> bad = interpolation_sequence(no);
  auto padded = pad_average_acceptance(pcrp_as_verifier(no), bad, 1024);
  CHECK(padded.average >=
        1 - rat(static_cast<std::int64_t>(bad.size()), 1024));
}

TEST_CASE("proof and sequence JSON round trips") {
  PcrpInstance inst =
      make_pcrp_instance(increment_circuit(2), PcppKind::kReference);
  std::vector<Word> seq = interpolation_sequence(inst);
  std::string path = "pcrp_seq_roundtrip.json";
  {
    std::ofstream out(path);
    out << sequence_to_json(inst.regions, seq);
  }
  auto [regions, back] = sequence_from_json_file(path);
  CHECK(regions.ell == inst.regions.ell);
  CHECK(back == seq);
  std::remove(path.c_str());
}
