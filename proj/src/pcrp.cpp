#include "reconf/pcrp.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reconf/errors.hpp"

namespace reconf {

namespace {

Word slice(const Word& w, std::size_t from, std::size_t len) {
  return Word(w.begin() + from, w.begin() + from + len);
}

void set_symbol(std::vector<Word>& seq, Word& cur, std::size_t pos, Sym val) {
  if (cur[pos] == val) return;
  cur[pos] = val;
  seq.push_back(cur);
}

}  // namespace

void PcrpParams::validate() const {
  auto in_unit = [](const Rat& v) { return v > 0 && v < 1; };
  // kappa is a reject/distance ratio; the measured value for Hadamard+BLR
  // reaches exactly 1 at small n, so only the derived (kappa*eps)^2 needs to
  // be a probability.
  if (!in_unit(rho) || !in_unit(s_ckt) || !in_unit(delta_ckt) || !in_unit(eps))
    throw invalid_instance_error("pcrp parameters must lie in (0,1)");
  if (!(kappa > 0)) throw invalid_instance_error("kappa must be positive");
  if (!(rat_pow(kappa * eps, 2) < 1))
    throw invalid_instance_error("(kappa*eps)^2 must stay below 1");
  if (eps > rho / 3) throw invalid_instance_error("eps must be <= rho/3");
  if (!(bound > 0 && bound < 1))
    throw invalid_instance_error("bound must lie in (0,1)");
}

std::uint64_t PcrpInstance::tester_seeds() const {
  return tester_seed_count(code);
}

std::uint64_t PcrpInstance::num_seeds() const {
  std::uint64_t t = tester_seeds();
  return t * t * code.len * code.len * pcpp.spec.num_seeds;
}

PcrpInstance make_pcrp_instance(const BoolCircuit& s, PcppKind kind,
                                std::size_t sample_k, unsigned threads) {
  s.validate_promise();
  PcrpInstance inst;
  inst.s = s;
  inst.code = hadamard_spec(s.n);
  inst.kind = kind;
  inst.sample_k = kind == PcppKind::kSampled ? sample_k : 0;
  inst.pcpp = kind == PcppKind::kReference
                  ? reference_pcpp(s, inst.code)
                  : sampled_pcpp(s, inst.code, sample_k);
  inst.regions = inst.pcpp.regions;

  PcrpParams& p = inst.params;
  p.rho = inst.code.rho;
  // Full ternary enumeration where feasible, bot-free beyond.
  try {
    p.kappa = measure_kappa(inst.code, /*bot_free=*/false,
                            std::uint64_t{1} << 22, threads);
    p.kappa_exact = true;
  } catch (const capacity_error&) {
    p.kappa = measure_kappa(inst.code, /*bot_free=*/true,
                            std::uint64_t{1} << 22, threads);
    p.kappa_exact = false;
  }
  p.q = inst.pcpp.params.q;
  p.s_ckt = inst.pcpp.params.s;
  p.delta_ckt = inst.pcpp.params.delta;
  p.eps = std::min(Rat((1 - p.s_ckt) / Rat(static_cast<std::int64_t>(2 * p.q))),
                   Rat(p.rho / 3));
  p.bound = std::min(rat_pow(p.kappa * p.eps, 2),
                     Rat(rat_pow(1 - p.eps, 2) * (1 - p.s_ckt) / 2));
  p.auditable =
      (p.rho - 2 * p.eps) * Rat(static_cast<std::int64_t>(inst.code.len)) > 1;
  p.validate();
  return inst;
}

namespace {

Word canonical_proof(const PcrpInstance& inst, Sym bit) {
  Bits v(inst.s.n, bit);
  Word cw = hadamard_encode(v);
  Word w;
  w.reserve(inst.regions.total());
  w.insert(w.end(), cw.begin(), cw.end());
  w.insert(w.end(), cw.begin(), cw.end());
  Bits pi = pcpp_honest_proof(v, v, inst.regions.p);
  w.insert(w.end(), pi.begin(), pi.end());
  return w;
}

}  // namespace

Word canonical_start(const PcrpInstance& inst) { return canonical_proof(inst, 0); }
Word canonical_goal(const PcrpInstance& inst) { return canonical_proof(inst, 1); }

bool pcrp_verify(const PcrpInstance& inst, const Word& w, std::uint64_t seed) {
  if (w.size() != inst.regions.total())
    throw invalid_instance_error("proof length mismatch");
  std::size_t ell = inst.code.len;
  std::uint64_t np = inst.pcpp.spec.num_seeds;
  std::uint64_t ps = seed % np;
  seed /= np;
  std::size_t j = static_cast<std::size_t>(seed % ell);
  seed /= ell;
  std::size_t i = static_cast<std::size_t>(seed % ell);
  seed /= ell;
  std::uint64_t tg = seed % inst.tester_seeds();
  std::uint64_t tf = seed / inst.tester_seeds();
  if (tf >= inst.tester_seeds())
    throw invalid_instance_error("seed outside the seed space");

  Word f = slice(w, 0, ell);
  Word g = slice(w, ell, ell);
  bool accept_f = local_test(f, tf, inst.code);
  bool accept_g = local_test(g, tg, inst.code);
  if (!accept_f && !accept_g) return false;
  if (f[i] != kBot && g[j] != kBot)
    return modified_run(inst.pcpp.spec, inst.regions, w, ps);
  return true;
}

Rat acceptance_probability(const PcrpInstance& inst, const Word& w) {
  if (w.size() != inst.regions.total())
    throw invalid_instance_error("proof length mismatch");
  std::size_t ell = inst.code.len;
  Word f = slice(w, 0, ell);
  Word g = slice(w, ell, ell);
  Rat rf = tester_reject_probability(f, inst.code);
  Rat rg = tester_reject_probability(g, inst.code);
  Rat bf = rat(static_cast<std::int64_t>(count_bot(f)),
               static_cast<std::int64_t>(ell));
  Rat bg = rat(static_cast<std::int64_t>(count_bot(g)),
               static_cast<std::int64_t>(ell));
  Rat pa = modified_accept_probability(inst.pcpp.spec, inst.regions, w);
  Rat run_prob = (1 - bf) * (1 - bg);  // draw hits no bot in f, g
  return (1 - rf * rg) * ((1 - run_prob) + run_prob * pa);
}

Rat acceptance_probability_enumerated(const PcrpInstance& inst, const Word& w,
                                      unsigned threads) {
  std::uint64_t total = inst.num_seeds();
  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t acc = 0;
    for (std::uint64_t s = lo; s < hi; ++s) acc += pcrp_verify(inst, w, s);
    return acc;
  };
  std::uint64_t accepting = 0;
  if (threads <= 1 || total < 4096) {
    accepting = count_range(0, total);
  } else {
    std::uint64_t chunk = (total + threads - 1) / threads;
    std::vector<std::future<std::uint64_t>> parts;
    for (std::uint64_t lo = 0; lo < total; lo += chunk)
      parts.push_back(std::async(std::launch::async, count_range, lo,
                                 std::min(total, lo + chunk)));
    for (auto& p : parts) accepting += p.get();
  }
  return Rat(BigInt(accepting), BigInt(total));
}

VerifierSpec pcrp_as_verifier(const PcrpInstance& inst) {
  VerifierSpec v;
  v.num_seeds = inst.num_seeds();
  v.proof_len = inst.regions.total();
  v.alphabet = 3;
  std::size_t ell = inst.code.len;
  std::size_t n = inst.code.n;
  std::uint64_t tester = inst.tester_seeds();
  std::uint64_t np = inst.pcpp.spec.num_seeds;
  auto pcpp_gen = inst.pcpp.spec.generate;
  v.generate = [ell, n, tester, np, pcpp_gen](std::uint64_t seed) {
    std::uint64_t ps = seed % np;
    seed /= np;
    std::size_t j = static_cast<std::size_t>(seed % ell);
    seed /= ell;
    std::size_t i = static_cast<std::size_t>(seed % ell);
    seed /= ell;
    std::uint64_t tg = seed % tester;
    std::uint64_t tf = seed / tester;
    std::uint64_t mask = ell - 1;

    VerifierQuery inner = pcpp_gen(ps);
    VerifierQuery q;
    std::uint64_t fx = tf & mask, fy = (tf >> n) & mask;
    std::uint64_t gx = tg & mask, gy = (tg >> n) & mask;
    q.positions = {static_cast<std::size_t>(fx), static_cast<std::size_t>(fy),
                   static_cast<std::size_t>(fx ^ fy),
                   ell + static_cast<std::size_t>(gx),
                   ell + static_cast<std::size_t>(gy),
                   ell + static_cast<std::size_t>(gx ^ gy),
                   i, ell + j};
    q.positions.insert(q.positions.end(), inner.positions.begin(),
                       inner.positions.end());
    auto inner_positions = inner.positions;
    auto inner_decide = inner.decide;
    q.decide = [ell, inner_positions, inner_decide](const Word& sym) {
      auto linear = [](Sym a, Sym b, Sym c) {
        return a != kBot && b != kBot && c != kBot &&
               static_cast<Sym>(a ^ b) == c;
      };
      bool accept_f = linear(sym[0], sym[1], sym[2]);
      bool accept_g = linear(sym[3], sym[4], sym[5]);
      if (!accept_f && !accept_g) return false;
      if (sym[6] == kBot || sym[7] == kBot) return true;
      Word inner_sym(sym.begin() + 8, sym.end());
      bool fg_bot = false, pi_bot = false;
      for (std::size_t k = 0; k < inner_positions.size(); ++k) {
        if (inner_sym[k] == kBot)
          (inner_positions[k] < 2 * ell ? fg_bot : pi_bot) = true;
      }
      if (fg_bot) return true;
      if (pi_bot) return false;
      return inner_decide(inner_sym);
    };
    return q;
  };
  return v;
}

std::vector<Word> completeness_sequence(const PcrpInstance& inst,
                                        const std::vector<Bits>& path) {
  if (path.empty()) throw invalid_instance_error("empty vertex path");
  if (path.front() != Bits(inst.s.n, 0))
    throw invalid_instance_error("path must start at 0^n");
  if (path.back() != Bits(inst.s.n, 1))
    throw invalid_instance_error("path must end at 1^n");
  for (std::size_t h = 0; h + 1 < path.size(); ++h) {
    if (!lckt_member(inst.s, path[h], path[h + 1]))
      throw invalid_instance_error("consecutive path vertices not adjacent");
  }

  std::size_t ell = inst.code.len;
  Word cur = canonical_start(inst);
  std::vector<Word> seq{cur};
  for (std::size_t h = 0; h + 1 < path.size(); ++h) {
    const Bits& alpha = path[h];
    const Bits& beta = path[h + 1];
    if (alpha == beta) continue;
    Word enc_beta = hadamard_encode(beta);
    Bits pi_ab = pcpp_honest_proof(alpha, beta, inst.regions.p);
    Bits pi_bb = pcpp_honest_proof(beta, beta, inst.regions.p);
    // Reach Enc(alpha).Enc(beta).Pi(alpha,beta): blank g, rewrite pi, write g.
    for (std::size_t k = 0; k < ell; ++k) set_symbol(seq, cur, ell + k, kBot);
    for (std::size_t k = 0; k < inst.regions.p; ++k)
      set_symbol(seq, cur, 2 * ell + k, pi_ab[k]);
    for (std::size_t k = 0; k < ell; ++k)
      set_symbol(seq, cur, ell + k, enc_beta[k]);
    // Mirrored phases advance f to the diagonal Enc(beta).Enc(beta).
    for (std::size_t k = 0; k < ell; ++k) set_symbol(seq, cur, k, kBot);
    for (std::size_t k = 0; k < inst.regions.p; ++k)
      set_symbol(seq, cur, 2 * ell + k, pi_bb[k]);
    for (std::size_t k = 0; k < ell; ++k) set_symbol(seq, cur, k, enc_beta[k]);
  }
  if (cur != canonical_goal(inst))
    throw std::logic_error("completeness sequence missed the goal proof");
  return seq;
}

GammaExtraction extract_gamma(const PcrpInstance& inst,
                              const std::vector<Word>& seq, const Rat& eps) {
  validate_sequence(seq);
  if (seq.front() != canonical_start(inst) ||
      seq.back() != canonical_goal(inst))
    throw invalid_instance_error("sequence must run sigma_start -> sigma_goal");
  std::size_t ell = inst.code.len;
  if ((inst.code.rho - 2 * eps) * Rat(static_cast<std::int64_t>(ell)) <= 1)
    throw invalid_instance_error(
        "eps too large: decoded tracks are not step-stable at this scale");

  std::size_t big_t = seq.size();
  std::vector<std::optional<Bits>> alpha(big_t + 1), beta(big_t + 1);
  for (std::size_t t = 0; t < big_t; ++t) {
    alpha[t] = decode_nearest(slice(seq[t], 0, ell), eps, inst.code);
    beta[t] = decode_nearest(slice(seq[t], ell, ell), eps, inst.code);
  }
  alpha[big_t] = Bits(inst.s.n, 1);  // sentinel
  beta[big_t] = Bits(inst.s.n, 1);

  GammaExtraction out;
  for (std::size_t t = 0; t < big_t; ++t) {
    if (!alpha[t] && !beta[t]) {
      out.verdict = GammaExtraction::Verdict::kBothFar;
      out.index = t;
      return out;
    }
  }
  // Decoded halves cannot both change across one step, and a defined track
  // value can only change by passing through *.
  for (std::size_t t = 0; t + 1 < big_t; ++t) {
    if (alpha[t] != alpha[t + 1] && beta[t] != beta[t + 1])
      throw invalid_instance_error("both decoded halves changed in one step");
    if (alpha[t] && alpha[t + 1] && *alpha[t] != *alpha[t + 1])
      throw invalid_instance_error("decoded f-track jumped between codewords");
    if (beta[t] && beta[t + 1] && *beta[t] != *beta[t + 1])
      throw invalid_instance_error("decoded g-track jumped between codewords");
  }

  std::vector<std::pair<int, std::size_t>> origin;  // (track, t) per entry
  std::size_t t = 0;
  int track = 0;  // start on the f-track
  std::size_t move_budget = 2 * (big_t + 1);
  while (t < big_t) {
    if (++out.token_moves > move_budget)
      throw std::logic_error("token walk exceeded its move budget");
    const auto& cur = track == 0 ? alpha : beta;
    const auto& next = cur[t + 1];
    if (!cur[t]) throw std::logic_error("token rests on an undefined cell");
    out.gamma.push_back(*cur[t]);
    origin.emplace_back(track, t);
    if (next)
      ++t;
    else
      track ^= 1;
  }

  for (std::size_t idx = 0; idx + 1 < out.gamma.size(); ++idx) {
    if (!lckt_member(inst.s, out.gamma[idx], out.gamma[idx + 1])) {
      out.verdict = GammaExtraction::Verdict::kViolation;
      out.index = origin[idx + 1].second;
      return out;
    }
  }
  out.verdict = GammaExtraction::Verdict::kValidPath;
  return out;
}

AuditResult soundness_audit(const PcrpInstance& inst,
                            const std::vector<Word>& seq) {
  if (!inst.params.auditable)
    throw invalid_instance_error("instance parameters are not auditable");
  if (!inst.params.kappa_exact)
    throw invalid_instance_error("audit needs an exactly measured kappa");
  if (decide_reachability(inst.s).reachable)
    throw invalid_instance_error("soundness audit requires a NO instance");
  validate_sequence(seq);
  if (seq.front() != canonical_start(inst) ||
      seq.back() != canonical_goal(inst))
    throw invalid_instance_error("sequence must run sigma_start -> sigma_goal");

  const PcrpParams& p = inst.params;
  std::size_t ell = inst.code.len;
  AuditResult res;
  res.bound = p.bound;

  for (std::size_t t = 0; t < seq.size(); ++t) {
    auto a = decode_nearest(slice(seq[t], 0, ell), p.eps, inst.code);
    auto b = decode_nearest(slice(seq[t], ell, ell), p.eps, inst.code);
    if (!a && !b) {
      res.index = t;
      res.both_far = true;
      res.case_bound = rat_pow(p.kappa * p.eps, 2);
      res.rejection = 1 - acceptance_probability(inst, seq[t]);
      if (!(res.rejection > res.case_bound))
        throw audit_failure(
            "lemma counterexample: both-far step rejected with probability " +
            rat_str(res.rejection) + " <= " + rat_str(res.case_bound));
      return res;
    }
  }

  GammaExtraction gx = extract_gamma(inst, seq, p.eps);
  if (gx.verdict != GammaExtraction::Verdict::kViolation)
    throw audit_failure(
        "lemma counterexample: extraction produced a valid vertex path on a "
        "NO instance");
  res.index = gx.index;
  res.gamma = gx.gamma;
  res.case_bound = rat_pow(1 - p.eps, 2) * (1 - p.s_ckt) / 2;
  res.rejection = 1 - acceptance_probability(inst, seq[res.index]);
  if (!(res.rejection > res.case_bound))
    throw audit_failure(
        "lemma counterexample: violating step rejected with probability " +
        rat_str(res.rejection) + " <= " + rat_str(res.case_bound));
  return res;
}

std::vector<Word> interpolation_sequence(const PcrpInstance& inst) {
  Word cur = canonical_start(inst);
  Word goal = canonical_goal(inst);
  std::vector<Word> seq{cur};
  for (std::size_t pos = 0; pos < cur.size(); ++pos)
    set_symbol(seq, cur, pos, goal[pos]);
  return seq;
}

std::vector<Word> interleaved_interpolation_sequence(const PcrpInstance& inst) {
  Word cur = canonical_start(inst);
  Word goal = canonical_goal(inst);
  std::size_t ell = inst.code.len;
  std::vector<Word> seq{cur};
  for (std::size_t k = 0; k < ell; ++k) {
    set_symbol(seq, cur, k, goal[k]);
    set_symbol(seq, cur, ell + k, goal[ell + k]);
  }
  for (std::size_t k = 2 * ell; k < cur.size(); ++k)
    set_symbol(seq, cur, k, goal[k]);
  return seq;
}

std::vector<Word> random_walk_sequence(const PcrpInstance& inst,
                                       std::size_t walk_steps,
                                       std::uint64_t rng_seed) {
  Word cur = canonical_start(inst);
  Word goal = canonical_goal(inst);
  std::vector<Word> seq{cur};
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick_pos(0, cur.size() - 1);
  std::uniform_int_distribution<int> pick_sym(0, 1);
  for (std::size_t k = 0; k < walk_steps; ++k) {
    std::size_t pos = pick_pos(rng);
    int offset = pick_sym(rng);
    Sym next = static_cast<Sym>((cur[pos] + 1 + offset) % 3);
    set_symbol(seq, cur, pos, next);
  }
  for (std::size_t pos = 0; pos < cur.size(); ++pos)
    set_symbol(seq, cur, pos, goal[pos]);
  return seq;
}

std::vector<Word> blank_heavy_sequence(const PcrpInstance& inst) {
  Word cur = canonical_start(inst);
  Word goal = canonical_goal(inst);
  std::size_t ell = inst.code.len;
  std::vector<Word> seq{cur};
  for (std::size_t k = 0; k < ell; ++k) set_symbol(seq, cur, ell + k, kBot);
  for (std::size_t k = 0; k < ell; ++k) set_symbol(seq, cur, k, kBot);
  for (std::size_t k = 2 * ell; k < cur.size(); ++k)
    set_symbol(seq, cur, k, goal[k]);
  for (std::size_t k = 0; k < ell; ++k) set_symbol(seq, cur, k, goal[k]);
  for (std::size_t k = 0; k < ell; ++k)
    set_symbol(seq, cur, ell + k, goal[ell + k]);
  return seq;
}

PcrpCsp pcrp_to_csp(const VerifierSpec& v, const Word& start, const Word& goal,
                    std::uint64_t table_cap) {
  PcrpCsp out;
  out.psi.num_vars = v.proof_len;
  out.psi.alphabet = v.alphabet;
  out.start = start;
  out.goal = goal;
  for (std::uint64_t seed = 0; seed < v.num_seeds; ++seed) {
    VerifierQuery q = v.generate(seed);
    Constraint c;
    c.scope = q.positions;
    std::sort(c.scope.begin(), c.scope.end());
    c.scope.erase(std::unique(c.scope.begin(), c.scope.end()), c.scope.end());
    std::uint64_t entries = 1;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
      if (entries > table_cap / v.alphabet + 1)
        throw capacity_error("constraint table exceeds cap");
      entries *= v.alphabet;
    }
    if (entries > table_cap) throw capacity_error("constraint table exceeds cap");
    c.table.resize(static_cast<std::size_t>(entries));
    Word symbols(q.positions.size());
    Word values(c.scope.size());
    for (std::uint64_t idx = 0; idx < entries; ++idx) {
      std::uint64_t rest = idx;  // scope[0] carries the most significant digit
      for (std::size_t slot = c.scope.size(); slot-- > 0;) {
        values[slot] = static_cast<Sym>(rest % v.alphabet);
        rest /= v.alphabet;
      }
      for (std::size_t k = 0; k < q.positions.size(); ++k) {
        auto it = std::lower_bound(c.scope.begin(), c.scope.end(),
                                   q.positions[k]);
        symbols[k] = values[static_cast<std::size_t>(it - c.scope.begin())];
      }
      c.table[static_cast<std::size_t>(idx)] = q.decide(symbols);
    }
    out.psi.constraints.push_back(std::move(c));
  }
  out.psi.validate();
  return out;
}

VerifierSpec csp_to_verifier(const ConstraintSystem& psi) {
  psi.validate();
  if (psi.constraints.empty())
    throw invalid_instance_error("verifier needs at least one constraint");
  VerifierSpec v;
  v.num_seeds = psi.constraints.size();
  v.proof_len = psi.num_vars;
  v.alphabet = psi.alphabet;
  std::size_t alphabet = psi.alphabet;
  auto constraints = psi.constraints;
  v.generate = [constraints, alphabet](std::uint64_t seed) {
    const Constraint& c = constraints[static_cast<std::size_t>(seed)];
    VerifierQuery q;
    q.positions = c.scope;
    auto table = c.table;
    q.decide = [table, alphabet](const Word& symbols) {
      std::size_t idx = 0;
      for (Sym s : symbols) idx = idx * alphabet + s;
      return table[idx] != 0;
    };
    return q;
  };
  return v;
}

std::string proof_to_json(const Regions& regions, const Word& w) {
  nlohmann::json j;
  j["ell"] = regions.ell;
  j["p"] = regions.p;
  j["word"] = ternary_str(w);
  return j.dump(2);
}

std::pair<Regions, Word> proof_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  Regions r{j.at("ell").get<std::size_t>(), j.at("p").get<std::size_t>()};
  Word w = parse_ternary(j.at("word").get<std::string>());
  if (w.size() != r.total())
    throw invalid_instance_error("word length disagrees with regions");
  return {r, w};
}

std::string sequence_to_json(const Regions& regions,
                             const std::vector<Word>& seq) {
  nlohmann::json j;
  j["ell"] = regions.ell;
  j["p"] = regions.p;
  j["steps"] = nlohmann::json::array();
  for (const Word& w : seq) j["steps"].push_back(ternary_str(w));
  return j.dump(2);
}

std::pair<Regions, std::vector<Word>> sequence_from_json_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  Regions r{j.at("ell").get<std::size_t>(), j.at("p").get<std::size_t>()};
  std::vector<Word> seq;
  for (const auto& s : j.at("steps")) {
    Word w = parse_ternary(s.get<std::string>());
    if (w.size() != r.total())
      throw invalid_instance_error("step length disagrees with regions");
    seq.push_back(std::move(w));
  }
  return {r, seq};
}

}  // namespace reconf
