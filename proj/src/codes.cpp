#include "reconf/codes.hpp"

#include <algorithm>
#include <future>
#include <random>

#include "reconf/errors.hpp"

namespace reconf {

namespace {

// Positions run through {0,1}^n in lexicographic string order: the first
// message character pairs with the most significant bit of the index.
Sym inner_product_bit(const Bits& msg, std::uint64_t x) {
  unsigned acc = 0;
  std::size_t n = msg.size();
  for (std::size_t i = 0; i < n; ++i) acc ^= (msg[i] & (x >> (n - 1 - i)));
  return static_cast<Sym>(acc & 1u);
}

}  // namespace

CodeSpec hadamard_spec(std::size_t n) { return hadamard_spec(n, rat(49, 100)); }

CodeSpec hadamard_spec(std::size_t n, const Rat& declared_rho) {
  if (n == 0 || n > 20) throw capacity_error("hadamard message width out of range");
  if (!(declared_rho > 0) || !(declared_rho < rat(1, 2)))
    throw invalid_instance_error("declared rho must lie in (0, 1/2)");
  CodeSpec spec;
  spec.n = n;
  spec.len = std::size_t{1} << n;
  spec.rho = declared_rho;
  return spec;
}

Word hadamard_encode(const Bits& msg) {
  if (msg.empty() || !is_binary(msg))
    throw invalid_instance_error("message must be a nonempty bitstring");
  Word code(std::size_t{1} << msg.size());
  for (std::uint64_t x = 0; x < code.size(); ++x)
    code[x] = inner_product_bit(msg, x);
  return code;
}

std::vector<Word> all_codewords(const CodeSpec& spec) {
  std::vector<Word> words;
  words.reserve(std::size_t{1} << spec.n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << spec.n); ++m)
    words.push_back(hadamard_encode(u64_to_bits(m, spec.n)));
  return words;
}

std::uint64_t tester_seed_count(const CodeSpec& spec) {
  return std::uint64_t{1} << (2 * spec.n);
}

bool local_test(const Word& f, std::uint64_t seed, const CodeSpec& spec) {
  if (f.size() != spec.len) throw invalid_instance_error("word length != 2^n");
  std::uint64_t mask = spec.len - 1;
  std::uint64_t x = seed & mask;
  std::uint64_t y = (seed >> spec.n) & mask;
  Sym a = f[x], b = f[y], c = f[x ^ y];
  if (a == kBot || b == kBot || c == kBot) return false;
  return static_cast<Sym>(a ^ b) == c;
}

Rat tester_reject_probability(const Word& f, const CodeSpec& spec) {
  std::uint64_t seeds = tester_seed_count(spec);
  std::uint64_t rejects = 0;
  for (std::uint64_t s = 0; s < seeds; ++s) rejects += !local_test(f, s, spec);
  return Rat(BigInt(rejects), BigInt(seeds));
}

Rat distance_to_code(const Word& f, const CodeSpec& spec) {
  if (f.size() != spec.len) throw invalid_instance_error("word length != 2^n");
  std::size_t best = f.size() + 1;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << spec.n); ++m) {
    std::size_t d = 0;
    Bits msg = u64_to_bits(m, spec.n);
    for (std::uint64_t x = 0; x < f.size() && d < best; ++x)
      d += (f[x] != inner_product_bit(msg, x));
    best = std::min(best, d);
  }
  return rat(static_cast<std::int64_t>(best),
             static_cast<std::int64_t>(f.size()));
}

namespace {

// Min ratio over one slice of the enumeration. Radix 2 or 3 word index.
Rat kappa_over_range(const CodeSpec& spec, std::uint64_t lo, std::uint64_t hi,
                     unsigned radix) {
  Rat best = -1;
  Word f(spec.len);
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < spec.len; ++i) {
      f[i] = static_cast<Sym>(v % radix);
      v /= radix;
    }
    Rat dist = distance_to_code(f, spec);
    if (dist == 0) continue;  // soundness quantifies over non-codewords
    Rat ratio = tester_reject_probability(f, spec) / dist;
    if (best < 0 || ratio < best) best = ratio;
  }
  return best;
}

}  // namespace

Rat measure_kappa(const CodeSpec& spec, bool bot_free, std::uint64_t cap,
                  unsigned threads) {
  unsigned radix = bot_free ? 2 : 3;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < spec.len; ++i) {
    if (total > cap / radix + 1) throw capacity_error("word space exceeds cap");
    total *= radix;
  }
  if (total > cap) throw capacity_error("word space exceeds cap");

  std::vector<Rat> partial;
  if (threads <= 1 || total < 4096) {
    partial.push_back(kappa_over_range(spec, 0, total, radix));
  } else {
    std::uint64_t chunk = (total + threads - 1) / threads;
    std::vector<std::future<Rat>> futs;
    for (std::uint64_t lo = 0; lo < total; lo += chunk) {
      std::uint64_t hi = std::min(total, lo + chunk);
      futs.push_back(std::async(std::launch::async, kappa_over_range,
                                std::cref(spec), lo, hi, radix));
    }
    for (auto& fu : futs) partial.push_back(fu.get());
  }
  Rat best = -1;
  for (const Rat& p : partial)
    if (p >= 0 && (best < 0 || p < best)) best = p;
  if (best < 0) throw invalid_instance_error("no non-codeword enumerated");
  return best;
}

Rat measure_kappa_sampled(const CodeSpec& spec, std::uint64_t samples,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sym(0, 2);
  Rat best = -1;
  Word f(spec.len);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (auto& s : f) s = static_cast<Sym>(sym(rng));
    Rat dist = distance_to_code(f, spec);
    if (dist == 0) continue;
    Rat ratio = tester_reject_probability(f, spec) / dist;
    if (best < 0 || ratio < best) best = ratio;
  }
  if (best < 0) throw invalid_instance_error("sampling found no non-codeword");
  return best;
}

std::optional<Bits> decode_nearest(const Word& f, const Rat& eps,
                                   const CodeSpec& spec) {
  // The Hadamard distance is exactly 1/2; decoding is unique below 1/4 and
  // ties at the 1/4 boundary break toward the smallest message.
  if (!(eps > 0) || eps > rat(1, 4))
    throw invalid_instance_error("decoding radius must lie in (0, 1/4]");
  if (f.size() != spec.len) throw invalid_instance_error("word length != 2^n");
  std::size_t best = f.size() + 1;
  std::uint64_t best_msg = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << spec.n); ++m) {
    Bits msg = u64_to_bits(m, spec.n);
    std::size_t d = 0;
    for (std::uint64_t x = 0; x < f.size() && d < best; ++x)
      d += (f[x] != inner_product_bit(msg, x));
    if (d < best) {
      best = d;
      best_msg = m;
    }
  }
  Rat dist = rat(static_cast<std::int64_t>(best),
                 static_cast<std::int64_t>(f.size()));
  if (dist > eps) return std::nullopt;
  return u64_to_bits(best_msg, spec.n);
}

}  // namespace reconf
