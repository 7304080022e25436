#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reconf/word.hpp"

namespace reconf {

enum class GateOp : std::uint8_t { kInput, kConst, kNot, kAnd, kOr, kXor };

struct Gate {
  GateOp op;
  std::uint32_t a = 0;  // input index, const bit, or first operand gate
  std::uint32_t b = 0;  // second operand gate
};

// A circuit S: {0,1}^n -> {0,1}^n describing the succinct graph whose edges
// are {(x,y): x = y or S(x) = y or S(y) = x}.
struct BoolCircuit {
  std::size_t n = 0;
  std::vector<Gate> gates;             // topologically ordered
  std::vector<std::uint32_t> outputs;  // exactly n gate references

  void validate_structure() const;
  // The reachability problem's promise: S(1^n) = 1^n.
  void validate_promise() const;
};

Bits eval_circuit(const BoolCircuit& s, const Bits& x);
std::uint64_t eval_circuit_u64(const BoolCircuit& s, std::uint64_t x);

struct ReachabilityResult {
  bool reachable = false;
  std::uint64_t steps = 0;  // smallest m with S^m(0^n) = 1^n when reachable
};

// Iterates S from 0^n; YES with the smallest such m, NO on a cycle that
// avoids 1^n. Floyd cycle detection keeps memory constant.
ReachabilityResult decide_reachability(const BoolCircuit& s,
                                       std::uint64_t max_iterations_cap =
                                           std::uint64_t{1} << 24);

// The iterate path 0^n = a_0, S(a_0), ..., 1^n. Empty optional on NO.
std::optional<std::vector<Bits>> reachability_path(
    const BoolCircuit& s, std::uint64_t max_iterations_cap = std::uint64_t{1}
                                                             << 24);

// Token-sequence framing over {0,1,bot}^{2n}: every word has bot in at most
// one half, fully binary halves must form an edge of the succinct graph, and
// adjacent words differ in at most one position.
bool validate_token_sequence(const BoolCircuit& s,
                             const std::vector<Word>& seq);

// Gate-level construction helper.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t n) : n_(n) {}

  std::uint32_t input(std::uint32_t i);
  std::uint32_t constant(bool b);
  std::uint32_t g_not(std::uint32_t a);
  std::uint32_t g_and(std::uint32_t a, std::uint32_t b);
  std::uint32_t g_or(std::uint32_t a, std::uint32_t b);
  std::uint32_t g_xor(std::uint32_t a, std::uint32_t b);
  std::uint32_t all_of(const std::vector<std::uint32_t>& ws);
  std::uint32_t any_of(const std::vector<std::uint32_t>& ws);
  // sel ? t : f
  std::uint32_t mux(std::uint32_t sel, std::uint32_t t, std::uint32_t f);
  // Wires equal to the little-endian constant `value`.
  std::uint32_t eq_const(const std::vector<std::uint32_t>& wires,
                         std::uint64_t value);

  BoolCircuit build(std::vector<std::uint32_t> outputs) &&;

 private:
  std::size_t n_;
  std::vector<Gate> gates_;
};

// Stock circuits used across tests and docs.
BoolCircuit identity_circuit(std::size_t n);
BoolCircuit constant_ones_circuit(std::size_t n);
// Binary increment, saturating at 1^n (so the promise holds).
BoolCircuit increment_circuit(std::size_t n);

// JSON wire format: {n, gates:[{op, args}], outputs:[...]}.
std::string circuit_to_json(const BoolCircuit& s);
BoolCircuit circuit_from_json(const std::string& text);
BoolCircuit circuit_from_json_file(const std::string& path);

}  // namespace reconf
