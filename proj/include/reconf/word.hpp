#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reconf/rational.hpp"

namespace reconf {

// A symbol is a value in [0, alphabet). The ternary alphabet {0, 1, bot} used
// by codewords and PCRP proofs maps bot to 2 and is rendered as 'B'.
using Sym = std::uint8_t;
inline constexpr Sym kBot = 2;

using Word = std::vector<Sym>;
using Bits = std::vector<Sym>;  // Word restricted to {0,1}

bool is_binary(const Word& w);
std::size_t count_bot(const Word& w);

// Number of positions where a and b differ; lengths must match.
std::size_t diff_positions(const Word& a, const Word& b);

// Exact fraction of differing positions. bot counts as a distinct symbol.
Rat relative_distance(const Word& a, const Word& b);

// True iff the words have equal length and differ in at most one position.
bool adjacent_words(const Word& a, const Word& b);

// Checks the reconfiguration-sequence invariants: nonempty, uniform length,
// adjacent elements differ in at most one position. Throws
// invalid_instance_error on violation.
void validate_sequence(const std::vector<Word>& steps);

// Digit rendering, one character per symbol ("102..."); alphabet must be <= 10.
std::string word_digits(const Word& w);
Word parse_word_digits(const std::string& text, std::size_t alphabet);

// Ternary rendering over {0,1,B}.
std::string ternary_str(const Word& w);
Word parse_ternary(const std::string& text);

std::string bits_str(const Bits& b);
Bits parse_bits(const std::string& text);

// Little-endian pack/unpack between bitstrings and integers (bit i of value
// is word position i). Width must be <= 64.
std::uint64_t bits_to_u64(const Bits& b);
Bits u64_to_bits(std::uint64_t value, std::size_t width);

}  // namespace reconf
