#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace reconf {

// Exact rational arithmetic. All objective values, probabilities and lemma
// bounds are compared exactly; floating point appears only in eigensolves
// (amplify) and is rounded to a Rat before any comparison.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
  Rat acc = 1;
  Rat b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

inline std::string rat_str(const Rat& q) { return q.str(); }

// Parses "a", "a/b" or a decimal like "0.25".
Rat rat_parse(const std::string& text);

}  // namespace reconf
