#include "reconf/circuit.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "reconf/errors.hpp"

namespace reconf {

void BoolCircuit::validate_structure() const {
  if (n == 0) throw invalid_instance_error("circuit width must be positive");
  if (outputs.size() != n)
    throw invalid_instance_error("circuit must have exactly n outputs");
  for (std::uint32_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.op) {
      case GateOp::kInput:
        if (g.a >= n) throw invalid_instance_error("input index out of range");
        break;
      case GateOp::kConst:
        if (g.a > 1) throw invalid_instance_error("const must be 0 or 1");
        break;
      case GateOp::kNot:
        if (g.a >= i) throw invalid_instance_error("gate refers forward");
        break;
      case GateOp::kAnd:
      case GateOp::kOr:
      case GateOp::kXor:
        if (g.a >= i || g.b >= i)
          throw invalid_instance_error("gate refers forward");
        break;
    }
  }
  for (std::uint32_t out : outputs) {
    if (out >= gates.size())
      throw invalid_instance_error("output refers to missing gate");
  }
}

void BoolCircuit::validate_promise() const {
  validate_structure();
  Bits ones(n, 1);
  if (eval_circuit(*this, ones) != ones)
    throw invalid_instance_error("promise violated: S(1^n) != 1^n");
}

Bits eval_circuit(const BoolCircuit& s, const Bits& x) {
  if (x.size() != s.n) throw invalid_instance_error("circuit input width mismatch");
  std::vector<std::uint8_t> val(s.gates.size());
  for (std::size_t i = 0; i < s.gates.size(); ++i) {
    const Gate& g = s.gates[i];
    switch (g.op) {
      case GateOp::kInput: val[i] = x[g.a]; break;
      case GateOp::kConst: val[i] = static_cast<std::uint8_t>(g.a); break;
      case GateOp::kNot: val[i] = !val[g.a]; break;
      case GateOp::kAnd: val[i] = val[g.a] & val[g.b]; break;
      case GateOp::kOr: val[i] = val[g.a] | val[g.b]; break;
      case GateOp::kXor: val[i] = val[g.a] ^ val[g.b]; break;
    }
  }
  Bits out(s.n);
  for (std::size_t i = 0; i < s.n; ++i) out[i] = val[s.outputs[i]];
  return out;
}

std::uint64_t eval_circuit_u64(const BoolCircuit& s, std::uint64_t x) {
  return bits_to_u64(eval_circuit(s, u64_to_bits(x, s.n)));
}

ReachabilityResult decide_reachability(const BoolCircuit& s,
                                       std::uint64_t max_iterations_cap) {
  s.validate_promise();
  if (s.n > 63 || (std::uint64_t{1} << s.n) > max_iterations_cap)
    throw capacity_error("2^n iterations exceed the cap");
  std::uint64_t limit = std::uint64_t{1} << s.n;
  std::uint64_t ones = (s.n == 64) ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << s.n) - 1;
  std::uint64_t tortoise = 0, hare = 0;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    tortoise = eval_circuit_u64(s, tortoise);
    hare = eval_circuit_u64(s, eval_circuit_u64(s, hare));
    if (tortoise == ones) return {true, m};
    if (tortoise == hare) return {false, 0};  // cycle without 1^n
  }
  return {false, 0};
}

std::optional<std::vector<Bits>> reachability_path(
    const BoolCircuit& s, std::uint64_t max_iterations_cap) {
  ReachabilityResult r = decide_reachability(s, max_iterations_cap);
  if (!r.reachable) return std::nullopt;
  std::vector<Bits> path;
  std::uint64_t cur = 0;
  path.push_back(u64_to_bits(cur, s.n));
  for (std::uint64_t m = 0; m < r.steps; ++m) {
    cur = eval_circuit_u64(s, cur);
    path.push_back(u64_to_bits(cur, s.n));
  }
  return path;
}

bool validate_token_sequence(const BoolCircuit& s,
                             const std::vector<Word>& seq) {
  if (seq.empty()) return false;
  for (const Word& w : seq) {
    if (w.size() != 2 * s.n) return false;
    Word x(w.begin(), w.begin() + s.n);
    Word y(w.begin() + s.n, w.end());
    bool x_bin = is_binary(x), y_bin = is_binary(y);
    if (!x_bin && !y_bin) return false;  // bot in at most one half
    if (x_bin && y_bin) {
      std::uint64_t xv = bits_to_u64(x), yv = bits_to_u64(y);
      bool edge = xv == yv || eval_circuit_u64(s, xv) == yv ||
                  eval_circuit_u64(s, yv) == xv;
      if (!edge) return false;
    }
  }
  for (std::size_t t = 0; t + 1 < seq.size(); ++t)
    if (!adjacent_words(seq[t], seq[t + 1])) return false;
  return true;
}

std::uint32_t CircuitBuilder::input(std::uint32_t i) {
  gates_.push_back({GateOp::kInput, i, 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t CircuitBuilder::constant(bool b) {
  gates_.push_back({GateOp::kConst, b ? 1u : 0u, 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t CircuitBuilder::g_not(std::uint32_t a) {
  gates_.push_back({GateOp::kNot, a, 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t CircuitBuilder::g_and(std::uint32_t a, std::uint32_t b) {
  gates_.push_back({GateOp::kAnd, a, b});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t CircuitBuilder::g_or(std::uint32_t a, std::uint32_t b) {
  gates_.push_back({GateOp::kOr, a, b});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t CircuitBuilder::g_xor(std::uint32_t a, std::uint32_t b) {
  gates_.push_back({GateOp::kXor, a, b});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t CircuitBuilder::all_of(const std::vector<std::uint32_t>& ws) {
  if (ws.empty()) return constant(true);
  std::uint32_t acc = ws[0];
  for (std::size_t i = 1; i < ws.size(); ++i) acc = g_and(acc, ws[i]);
  return acc;
}

std::uint32_t CircuitBuilder::any_of(const std::vector<std::uint32_t>& ws) {
  if (ws.empty()) return constant(false);
  std::uint32_t acc = ws[0];
  for (std::size_t i = 1; i < ws.size(); ++i) acc = g_or(acc, ws[i]);
  return acc;
}

std::uint32_t CircuitBuilder::mux(std::uint32_t sel, std::uint32_t t,
                                  std::uint32_t f) {
  return g_or(g_and(sel, t), g_and(g_not(sel), f));
}

std::uint32_t CircuitBuilder::eq_const(const std::vector<std::uint32_t>& wires,
                                       std::uint64_t value) {
  std::vector<std::uint32_t> lits;
  lits.reserve(wires.size());
  for (std::size_t i = 0; i < wires.size(); ++i) {
    bool want = (value >> i) & 1u;
    lits.push_back(want ? wires[i] : g_not(wires[i]));
  }
  return all_of(lits);
}

BoolCircuit CircuitBuilder::build(std::vector<std::uint32_t> outputs) && {
  BoolCircuit c;
  c.n = n_;
  c.gates = std::move(gates_);
  c.outputs = std::move(outputs);
  c.validate_structure();
  return c;
}

BoolCircuit identity_circuit(std::size_t n) {
  CircuitBuilder b(n);
  std::vector<std::uint32_t> outs;
  for (std::size_t i = 0; i < n; ++i)
    outs.push_back(b.input(static_cast<std::uint32_t>(i)));
  return std::move(b).build(outs);
}

BoolCircuit constant_ones_circuit(std::size_t n) {
  CircuitBuilder b(n);
  std::uint32_t one = b.constant(true);
  return std::move(b).build(std::vector<std::uint32_t>(n, one));
}

BoolCircuit increment_circuit(std::size_t n) {
  CircuitBuilder b(n);
  std::vector<std::uint32_t> in;
  for (std::size_t i = 0; i < n; ++i)
    in.push_back(b.input(static_cast<std::uint32_t>(i)));
  std::uint32_t saturated = b.all_of(in);
  // Ripple add of 1 with the last position least significant (words count in
  // string order: 00 -> 01 -> 10 -> 11), then hold at 1^n.
  std::vector<std::uint32_t> sum(n);
  std::uint32_t carry = b.constant(true);
  for (std::size_t i = n; i-- > 0;) {
    sum[i] = b.g_xor(in[i], carry);
    carry = b.g_and(in[i], carry);
  }
  std::vector<std::uint32_t> outs(n);
  for (std::size_t i = 0; i < n; ++i) outs[i] = b.g_or(saturated, sum[i]);
  return std::move(b).build(outs);
}

namespace {

const std::unordered_map<std::string, GateOp>& op_names() {
  static const std::unordered_map<std::string, GateOp> names = {
      {"INPUT", GateOp::kInput}, {"CONST", GateOp::kConst},
      {"NOT", GateOp::kNot},     {"AND", GateOp::kAnd},
      {"OR", GateOp::kOr},       {"XOR", GateOp::kXor}};
  return names;
}

std::string op_name(GateOp op) {
  for (const auto& [name, val] : op_names())
    if (val == op) return name;
  return "?";
}

}  // namespace

std::string circuit_to_json(const BoolCircuit& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["gates"] = nlohmann::json::array();
  for (const Gate& g : s.gates) {
    nlohmann::json jg;
    jg["op"] = op_name(g.op);
    switch (g.op) {
      case GateOp::kInput:
      case GateOp::kConst:
      case GateOp::kNot:
        jg["args"] = {g.a};
        break;
      default:
        jg["args"] = {g.a, g.b};
    }
    j["gates"].push_back(std::move(jg));
  }
  j["outputs"] = s.outputs;
  return j.dump(2);
}

BoolCircuit circuit_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BoolCircuit s;
  s.n = j.at("n").get<std::size_t>();
  for (const auto& jg : j.at("gates")) {
    auto it = op_names().find(jg.at("op").get<std::string>());
    if (it == op_names().end())
      throw invalid_instance_error("unknown gate op");
    Gate g{it->second, 0, 0};
    auto args = jg.at("args").get<std::vector<std::uint32_t>>();
    if (!args.empty()) g.a = args[0];
    if (args.size() > 1) g.b = args[1];
    s.gates.push_back(g);
  }
  s.outputs = j.at("outputs").get<std::vector<std::uint32_t>>();
  s.validate_structure();
  return s;
}

BoolCircuit circuit_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_instance_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return circuit_from_json(ss.str());
}

}  // namespace reconf
