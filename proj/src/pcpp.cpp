#include "reconf/pcpp.hpp"

#include <algorithm>

#include "reconf/errors.hpp"

namespace reconf {

bool lckt_member(const BoolCircuit& s, const Bits& alpha, const Bits& beta) {
  if (alpha.size() != s.n || beta.size() != s.n)
    throw invalid_instance_error("pair width mismatch");
  if (alpha == beta) return true;
  return eval_circuit(s, alpha) == beta || eval_circuit(s, beta) == alpha;
}

Rat lckt_distance(const BoolCircuit& s, const Word& w, const CodeSpec& code) {
  if (w.size() != 2 * code.len)
    throw invalid_instance_error("word must have length 2*ell");
  std::uint64_t states = std::uint64_t{1} << s.n;
  if (states > (std::uint64_t{1} << 20))
    throw capacity_error("member enumeration exceeds cap");
  std::size_t best = w.size() + 1;
  for (std::uint64_t a = 0; a < states; ++a) {
    Bits alpha = u64_to_bits(a, s.n);
    Bits image = eval_circuit(s, alpha);
    for (std::uint64_t bv = 0; bv < states; ++bv) {
      Bits beta = u64_to_bits(bv, s.n);
      bool member = (a == bv) || image == beta || eval_circuit(s, beta) == alpha;
      if (!member) continue;
      Word cw = hadamard_encode(alpha);
      Word cw2 = hadamard_encode(beta);
      std::size_t d = 0;
      for (std::size_t i = 0; i < code.len && d < best; ++i)
        d += (w[i] != cw[i]);
      for (std::size_t i = 0; i < code.len && d < best; ++i)
        d += (w[code.len + i] != cw2[i]);
      best = std::min(best, d);
    }
  }
  return rat(static_cast<std::int64_t>(best),
             static_cast<std::int64_t>(w.size()));
}

std::size_t pcpp_proof_length(std::size_t n) { return 4 * n; }

Bits pcpp_honest_proof(const Bits& alpha, const Bits& beta, std::size_t p) {
  std::size_t block = alpha.size() + beta.size();
  if (block == 0 || p % block != 0)
    throw invalid_instance_error("proof length must be a block multiple");
  Bits pi;
  pi.reserve(p);
  while (pi.size() < p) {
    pi.insert(pi.end(), alpha.begin(), alpha.end());
    pi.insert(pi.end(), beta.begin(), beta.end());
  }
  return pi;
}

PcppVerifier reference_pcpp(const BoolCircuit& s, const CodeSpec& code) {
  PcppVerifier v;
  v.regions = {code.len, pcpp_proof_length(s.n)};
  v.params.delta = code.rho / 4;
  v.params.s = rat(1, 100);
  v.params.smooth = true;
  v.params.q = v.regions.total();
  Rat delta = v.params.delta;
  std::size_t ell = code.len;
  BoolCircuit circuit = s;
  CodeSpec spec = code;
  v.spec.num_seeds = 1;
  v.spec.proof_len = v.regions.total();
  v.spec.alphabet = 3;
  std::size_t total = v.regions.total();
  v.spec.generate = [circuit, spec, delta, ell, total](std::uint64_t) {
    VerifierQuery q;
    q.positions.resize(total);
    for (std::size_t i = 0; i < total; ++i) q.positions[i] = i;
    q.decide = [circuit, spec, delta, ell](const Word& symbols) {
      Word fg(symbols.begin(), symbols.begin() + 2 * ell);
      return lckt_distance(circuit, fg, spec) <= delta;
    };
    return q;
  };
  return v;
}

PcppVerifier sampled_pcpp(const BoolCircuit& s, const CodeSpec& code,
                          std::size_t k) {
  if (k == 0) throw invalid_instance_error("sampled verifier needs k >= 1");
  PcppVerifier v;
  v.regions = {code.len, pcpp_proof_length(s.n)};
  std::size_t block = 2 * s.n;
  std::size_t blocks = v.regions.p / block;
  std::size_t ell = code.len;
  v.params.delta = code.rho / 4;
  v.params.s = rat_pow(1 - v.params.delta, static_cast<unsigned>(k));
  v.params.smooth = false;  // smooth per region, not across regions
  v.params.q = block + k;

  std::uint64_t seeds = blocks;
  for (std::size_t i = 0; i < k; ++i) {
    if (seeds > (std::uint64_t{1} << 40))
      throw capacity_error("sampled verifier seed space too large");
    seeds *= 2 * ell;
  }
  BoolCircuit circuit = s;
  std::size_t n = s.n;
  v.spec.num_seeds = seeds;
  v.spec.proof_len = v.regions.total();
  v.spec.alphabet = 3;
  v.spec.generate = [circuit, n, ell, block, blocks, k](std::uint64_t seed) {
    std::size_t which_block = static_cast<std::size_t>(seed % blocks);
    seed /= blocks;
    std::vector<std::size_t> samples(k);
    for (std::size_t i = 0; i < k; ++i) {
      samples[i] = static_cast<std::size_t>(seed % (2 * ell));
      seed /= 2 * ell;
    }
    VerifierQuery q;
    for (std::size_t i = 0; i < block; ++i)
      q.positions.push_back(2 * ell + which_block * block + i);
    for (std::size_t pos : samples) q.positions.push_back(pos);
    q.decide = [circuit, n, ell, block, samples](const Word& symbols) {
      Bits alpha(symbols.begin(), symbols.begin() + n);
      Bits beta(symbols.begin() + n, symbols.begin() + block);
      if (!is_binary(alpha) || !is_binary(beta)) return false;
      if (!lckt_member(circuit, alpha, beta)) return false;
      Word fa = hadamard_encode(alpha);
      Word fb = hadamard_encode(beta);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        Sym expect = samples[i] < ell ? fa[samples[i]] : fb[samples[i] - ell];
        if (symbols[block + i] != expect) return false;
      }
      return true;
    };
    return q;
  };
  return v;
}

bool modified_run(const VerifierSpec& v, const Regions& regions, const Word& w,
                  std::uint64_t seed) {
  if (w.size() != regions.total())
    throw invalid_instance_error("word length mismatch");
  VerifierQuery q = v.generate(seed);
  Word symbols;
  symbols.reserve(q.positions.size());
  bool fg_bot = false, pi_bot = false;
  for (std::size_t pos : q.positions) {
    Sym sym = w.at(pos);
    symbols.push_back(sym);
    if (sym == kBot) {
      (pos < 2 * regions.ell ? fg_bot : pi_bot) = true;
    }
  }
  if (fg_bot) return true;
  if (pi_bot) return false;
  return q.decide(symbols);
}

Rat modified_accept_probability(const VerifierSpec& v, const Regions& regions,
                                const Word& w) {
  std::uint64_t accepting = 0;
  for (std::uint64_t seed = 0; seed < v.num_seeds; ++seed)
    accepting += modified_run(v, regions, w, seed);
  return Rat(BigInt(accepting), BigInt(v.num_seeds));
}

VerifierSpec modified_verifier(const VerifierSpec& v, const Regions& regions) {
  VerifierSpec out = v;
  std::size_t boundary = 2 * regions.ell;
  auto inner = v.generate;
  out.generate = [inner, boundary](std::uint64_t seed) {
    VerifierQuery q = inner(seed);
    auto positions = q.positions;
    auto decide = q.decide;
    q.decide = [positions, decide, boundary](const Word& symbols) {
      bool fg_bot = false, pi_bot = false;
      for (std::size_t i = 0; i < positions.size(); ++i) {
        if (symbols[i] == kBot)
          (positions[i] < boundary ? fg_bot : pi_bot) = true;
      }
      if (fg_bot) return true;
      if (pi_bot) return false;
      return decide(symbols);
    };
    return q;
  };
  return out;
}

}  // namespace reconf
