#include "reconf/word.hpp"

#include <algorithm>

#include "reconf/errors.hpp"

namespace reconf {

Rat rat_parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rat(BigInt(digits), den);
  }
  return Rat(BigInt(text));
}

bool is_binary(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](Sym s) { return s < 2; });
}

std::size_t count_bot(const Word& w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), kBot));
}

std::size_t diff_positions(const Word& a, const Word& b) {
  if (a.size() != b.size())
    throw invalid_instance_error("word length mismatch in distance");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

Rat relative_distance(const Word& a, const Word& b) {
  if (a.empty()) throw invalid_instance_error("distance of empty words");
  return rat(static_cast<std::int64_t>(diff_positions(a, b)),
             static_cast<std::int64_t>(a.size()));
}

bool adjacent_words(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && ++d > 1) return false;
  }
  return true;
}

void validate_sequence(const std::vector<Word>& steps) {
  if (steps.empty()) throw invalid_instance_error("empty sequence");
  for (std::size_t t = 0; t + 1 < steps.size(); ++t) {
    if (steps[t].size() != steps[t + 1].size())
      throw invalid_instance_error("sequence steps of unequal length");
    if (!adjacent_words(steps[t], steps[t + 1]))
      throw invalid_instance_error(
          "sequence steps " + std::to_string(t) + " and " +
          std::to_string(t + 1) + " differ in more than one position");
  }
}

std::string word_digits(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Sym s : w) {
    if (s > 9) throw invalid_instance_error("alphabet too large for digits");
    out.push_back(static_cast<char>('0' + s));
  }
  return out;
}

Word parse_word_digits(const std::string& text, std::size_t alphabet) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9')
      throw invalid_instance_error(std::string("bad symbol '") + c + "'");
    auto s = static_cast<Sym>(c - '0');
    if (s >= alphabet)
      throw invalid_instance_error(std::string("symbol '") + c +
                                   "' outside alphabet");
    w.push_back(s);
  }
  return w;
}

std::string ternary_str(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Sym s : w) out.push_back(s == kBot ? 'B' : static_cast<char>('0' + s));
  return out;
}

Word parse_ternary(const std::string& text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      w.push_back(static_cast<Sym>(c - '0'));
    else if (c == 'B' || c == 'b')
      w.push_back(kBot);
    else
      throw invalid_instance_error(std::string("bad ternary symbol '") + c +
                                   "'");
  }
  return w;
}

std::string bits_str(const Bits& b) { return ternary_str(b); }

Bits parse_bits(const std::string& text) {
  Bits b = parse_ternary(text);
  if (!is_binary(b)) throw invalid_instance_error("expected a binary word");
  return b;
}

std::uint64_t bits_to_u64(const Bits& b) {
  if (b.size() > 64) throw capacity_error("bitstring wider than 64");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) v |= (std::uint64_t{1} << i);
  return v;
}

Bits u64_to_bits(std::uint64_t value, std::size_t width) {
  Bits b(width, 0);
  for (std::size_t i = 0; i < width; ++i)
    b[i] = static_cast<Sym>((value >> i) & 1u);
  return b;
}

}  // namespace reconf
