#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "reconf/errors.hpp"
#include "reconf/pcrp.hpp"
#include "reconf/solve.hpp"

using namespace reconf;
using reconf::testing::bfs_maxmin;

namespace {

Word w(const std::string& digits) { return parse_word_digits(digits, 2); }

ConstraintSystem random_csp(std::mt19937_64& rng, std::size_t vars,
                            std::size_t alphabet, std::size_t clauses) {
  ConstraintSystem psi;
  psi.num_vars = vars;
  psi.alphabet = alphabet;
  for (std::size_t c = 0; c < clauses; ++c) {
    Constraint k;
    std::size_t arity = 1 + rng() % 2;
    for (std::size_t i = 0; i < arity; ++i)
      k.scope.push_back(rng() % vars);
    std::size_t entries = 1;
    for (std::size_t i = 0; i < arity; ++i) entries *= alphabet;
    for (std::size_t e = 0; e < entries; ++e)
      k.table.push_back(static_cast<std::uint8_t>(rng() % 2));
    psi.constraints.push_back(std::move(k));
  }
  psi.validate();
  return psi;
}

Word random_word(std::mt19937_64& rng, std::size_t vars, std::size_t alphabet) {
  Word word(vars);
  for (auto& s : word) s = static_cast<Sym>(rng() % alphabet);
  return word;
}

}  // namespace

TEST_CASE("maxmin_value on the worked formula") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  CHECK(maxmin_value(phi, w("100"), w("010")) == 1);
  CHECK(maxmin_value(phi, w("100"), w("111")) == rat(2, 3));
  CHECK(maxmin_value(phi, w("100"), w("100")) == 1);
}

TEST_CASE("maxmin_value agrees with the independent BFS oracle") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      Rat got = maxmin_value(phi, u64_to_bits(a, 3), u64_to_bits(b, 3));
      CHECK(got == bfs_maxmin(phi, u64_to_bits(a, 3), u64_to_bits(b, 3)));
    }
  }
}

TEST_CASE("threshold filtration matches bottleneck Dijkstra on random CSPs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t alphabet = 2 + rng() % 2;
    std::size_t vars = 2 + rng() % 3;
    ConstraintSystem psi = random_csp(rng, vars, alphabet, 3 + rng() % 4);
    Word a = random_word(rng, vars, alphabet);
    Word b = random_word(rng, vars, alphabet);
    Rat filt = maxmin_value(psi, a, b);
    CHECK(filt == maxmin_value_bottleneck(psi, a, b));
    CHECK(filt == bfs_maxmin(psi, a, b));
    CHECK(filt == maxmin_value(psi, b, a));  // path symmetry
    Rat cap = std::min(value_of(psi, a), value_of(psi, b));
    CHECK(filt <= cap);
  }
}

TEST_CASE("witness_sequence produces certified sequences") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  auto wit = witness_sequence(phi, w("100"), w("111"), rat(2, 3));
  REQUIRE(wit.has_value());
  CHECK(wit->front() == w("100"));
  CHECK(wit->back() == w("111"));
  CHECK(sequence_value(phi, *wit) >= rat(2, 3));

  CHECK_FALSE(witness_sequence(phi, w("100"), w("111"), Rat(1)).has_value());
  auto self = witness_sequence(phi, w("100"), w("100"), Rat(1));
  REQUIRE(self.has_value());
  CHECK(self->size() == 1);
}

TEST_CASE("maxmin threshold iff witness exists") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  std::vector<Rat> thresholds{Rat(0), rat(1, 3), rat(2, 3), Rat(1)};
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      Rat value = maxmin_value(phi, u64_to_bits(a, 3), u64_to_bits(b, 3));
      for (const Rat& th : thresholds) {
        auto wit =
            witness_sequence(phi, u64_to_bits(a, 3), u64_to_bits(b, 3), th);
        CHECK(wit.has_value() == (value >= th));
        if (wit) CHECK(sequence_value(phi, *wit) >= th);
      }
    }
  }
}

TEST_CASE("decide_exact_reconfig mirrors the strict problem") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  CHECK(decide_exact_reconfig(phi, w("100"), w("010")));
  CHECK_FALSE(decide_exact_reconfig(phi, w("100"), w("111")));
  CHECK(decide_exact_reconfig(phi, w("100"), w("100")));
  // (1,1,0) violates a clause, so it is not a legal endpoint.
  CHECK_THROWS_AS(decide_exact_reconfig(phi, w("110"), w("100")),
                  invalid_instance_error);
}

TEST_CASE("state-space cap raises a capacity error") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  SolveCaps caps;
  caps.max_states = 4;
  CHECK_THROWS_AS(maxmin_value(phi, w("100"), w("010"), caps), capacity_error);
}

TEST_CASE("pad_average_acceptance averages exactly") {
  ConstraintSystem phi = cnf_to_csp(example_formula());
  VerifierSpec v = csp_to_verifier(phi);
  std::vector<Word> seq{w("100"), w("110"), w("111")};
  // Per-element acceptance probabilities: 1, 2/3, 1.

  SUBCASE("padding to 2^10 clears the 1 - L/2^n floor") {
    auto res = pad_average_acceptance(v, seq, 1024);
    CHECK(res.padded.size() == 1024);
    CHECK(res.padded.back() == w("111"));
    Rat expected = (Rat(1) + rat(2, 3) + Rat(1) + Rat(1) * (1024 - 3)) / 1024;
    CHECK(res.average == expected);
    CHECK(res.average >= 1 - rat(3, 1024));
  }

  SUBCASE("target equal to the length leaves the average unpadded") {
    auto res = pad_average_acceptance(v, seq, 3);
    CHECK(res.average == (Rat(1) + rat(2, 3) + Rat(1)) / 3);
  }

  SUBCASE("all-accepting sequences average to one") {
    std::vector<Word> sat{w("100"), w("000"), w("010")};
    auto res = pad_average_acceptance(v, sat, 64);
    CHECK(res.average == 1);
  }

  SUBCASE("target shorter than the sequence is rejected") {
    CHECK_THROWS_AS(pad_average_acceptance(v, seq, 2), invalid_instance_error);
  }
}
