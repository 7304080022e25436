#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "reconf/circuit.hpp"
#include "reconf/word.hpp"

namespace reconf {

// Deterministic Turing machine over binary tape alphabet {0,1}. The head is
// confined to [0, space); a move that would leave the tape sends the machine
// to the reject state instead.
struct TmTransition {
  std::uint8_t write = 0;
  std::int8_t move = 0;  // -1 left, 0 stay, +1 right
  std::uint32_t next = 0;
};

struct TmSpec {
  std::size_t num_states = 0;
  std::uint32_t start = 0;
  std::uint32_t accept = 0;
  std::uint32_t reject = 0;
  std::vector<std::array<TmTransition, 2>> delta;  // delta[state][symbol]

  void validate() const;
};

// Direct bounded-space simulation; the test oracle for the circuit reduction.
bool tm_accepts(const TmSpec& m, const Bits& input, std::size_t space,
                std::uint64_t max_steps = std::uint64_t{1} << 24);

struct TmEncoding {
  std::size_t space = 0;
  std::size_t head_bits = 0;
  std::size_t config_bits = 0;  // one-hot state + head + tape
  std::size_t total_bits = 0;   // 2 + config_bits
};

TmEncoding tm_encoding(const TmSpec& m, std::size_t space);

// The configuration-graph circuit S: {0,1}^{2+B} -> {0,1}^{2+B}:
// all-zero bootstraps to the tagged initial configuration, tagged
// configurations step (accepting ones jump to all-ones, rejecting ones fall
// back to all-zero), everything else is a fixed point.
BoolCircuit tm_to_circuit(const TmSpec& m, const Bits& input,
                          std::size_t space);

// Stock machines: immediate accepter/rejecter, an in-place looper, a binary
// counter that increments until overflow (a long orbit ending in reject) and
// a scanner that walks to a right-end marker and accepts.
TmSpec tm_accepter();
TmSpec tm_rejecter();
TmSpec tm_looper();
TmSpec tm_counter();
TmSpec tm_scanner();

std::string tm_to_json(const TmSpec& m);
TmSpec tm_from_json(const std::string& text);
TmSpec tm_from_json_file(const std::string& path);

}  // namespace reconf
