#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "reconf/codes.hpp"
#include "reconf/errors.hpp"

using namespace reconf;

namespace {

// Inner-product oracle, written against the position convention directly.
Sym dot_oracle(const std::string& msg, const std::string& pos) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < msg.size(); ++i)
    acc ^= static_cast<unsigned>((msg[i] - '0') & (pos[i] - '0'));
  return static_cast<Sym>(acc & 1u);
}

std::string bit_string(std::uint64_t v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((v >> (n - 1 - i)) & 1u) s[i] = '1';
  return s;
}

}  // namespace

TEST_CASE("hadamard encoding matches the inner-product table") {
  CHECK(ternary_str(hadamard_encode(parse_bits("00"))) == "0000");
  CHECK(ternary_str(hadamard_encode(parse_bits("10"))) == "0011");
  CHECK(ternary_str(hadamard_encode(parse_bits("01"))) == "0101");
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      std::string msg = bit_string(m, n);
      Word cw = hadamard_encode(parse_bits(msg));
      for (std::uint64_t x = 0; x < cw.size(); ++x)
        CHECK(cw[x] == dot_oracle(msg, bit_string(x, n)));
    }
  }
}

TEST_CASE("pairwise codeword distance is exactly one half") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CodeSpec spec = hadamard_spec(n);
    auto words = all_codewords(spec);
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = a + 1; b < words.size(); ++b)
        CHECK(relative_distance(words[a], words[b]) == rat(1, 2));
  }
  CHECK(relative_distance(hadamard_encode(parse_bits("10")),
                          hadamard_encode(parse_bits("01"))) == rat(1, 2));
}

TEST_CASE("relative distance counts bot as a distinct symbol") {
  CHECK(relative_distance(parse_ternary("0000"), parse_ternary("0000")) == 0);
  CHECK(relative_distance(parse_ternary("0000"), parse_ternary("0B00")) ==
        rat(1, 4));
  CHECK(relative_distance(parse_ternary("0011"), parse_ternary("0101")) ==
        rat(1, 2));
  CHECK_THROWS_AS(relative_distance(parse_ternary("00"), parse_ternary("0")),
                  invalid_instance_error);
}

TEST_CASE("tester accepts all codewords on every seed") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CodeSpec spec = hadamard_spec(n);
    for (const Word& cw : all_codewords(spec)) {
      for (std::uint64_t seed = 0; seed < tester_seed_count(spec); ++seed)
        CHECK(local_test(cw, seed, spec));
      CHECK(tester_reject_probability(cw, spec) == 0);
    }
  }
}

TEST_CASE("tester rejects bot reads and linearity failures") {
  CodeSpec spec = hadamard_spec(2);
  Word bots = parse_ternary("BBBB");
  for (std::uint64_t seed = 0; seed < tester_seed_count(spec); ++seed)
    CHECK_FALSE(local_test(bots, seed, spec));

  // 0001 fails the check at (x,y) = (01,10): f(01) ^ f(10) != f(11).
  Word f = parse_ternary("0001");
  bool some_reject = false;
  for (std::uint64_t seed = 0; seed < tester_seed_count(spec); ++seed)
    some_reject = some_reject || !local_test(f, seed, spec);
  CHECK(some_reject);
  CHECK(tester_reject_probability(f, spec) == rat(6, 16));
}

TEST_CASE("measured kappa is positive and certifies the soundness bound") {
  CodeSpec one = hadamard_spec(1);
  Rat k1 = measure_kappa(one);
  CHECK(k1 > 0);

  CodeSpec two = hadamard_spec(2);
  Rat k2_free = measure_kappa(two, /*bot_free=*/true);
  CHECK(k2_free > 0);
  Rat k2 = measure_kappa(two);
  CHECK(k2 > 0);
  CHECK(k2 <= k2_free);

  // The inequality Pr[reject] >= kappa * distance holds word by word.
  Word f(two.len);
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    std::uint64_t v = idx;
    for (auto& s : f) {
      s = static_cast<Sym>(v % 3);
      v /= 3;
    }
    Rat dist = distance_to_code(f, two);
    if (dist == 0) continue;
    CHECK(tester_reject_probability(f, two) >= k2 * dist);
  }

  CHECK(measure_kappa(two, false, std::uint64_t{1} << 22, 2) == k2);
  CHECK_THROWS_AS(measure_kappa(two, false, 16), capacity_error);
  CHECK_THROWS_AS(measure_kappa(hadamard_spec(4)), capacity_error);
  CHECK(measure_kappa_sampled(two, 64, 7) >= k2);
}

TEST_CASE("nearest-codeword decoding") {
  CodeSpec spec = hadamard_spec(2);
  for (std::uint64_t m = 0; m < 4; ++m) {
    Bits msg = u64_to_bits(m, 2);
    for (const Rat& eps : {rat(1, 100), rat(49, 300), rat(1, 4)}) {
      auto got = decode_nearest(hadamard_encode(msg), eps, spec);
      REQUIRE(got.has_value());
      CHECK(*got == msg);
    }
  }

  // One flipped position of Enc(10) stays uniquely decodable at radius 1/4.
  Word f = hadamard_encode(parse_bits("10"));
  f[0] = static_cast<Sym>(1 - f[0]);
  auto got = decode_nearest(f, rat(1, 4), spec);
  REQUIRE(got.has_value());
  CHECK(*got == parse_bits("10"));

  // 0001 has distance 1/4 to the code, beyond a 1/5 radius.
  CHECK_FALSE(decode_nearest(parse_ternary("0001"), rat(1, 5), spec));
  CHECK(distance_to_code(parse_ternary("0001"), spec) == rat(1, 4));

  // 0110 is the codeword of 11 (the spec sheet miscounts this one).
  auto cw = decode_nearest(parse_ternary("0110"), rat(1, 5), spec);
  REQUIRE(cw.has_value());
  CHECK(*cw == parse_bits("11"));

  CHECK_THROWS_AS(decode_nearest(f, rat(1, 3), spec), invalid_instance_error);
}
