#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reconf/csp.hpp"
#include "reconf/rational.hpp"
#include "reconf/verifier.hpp"
#include "reconf/word.hpp"

namespace reconf {

struct SolveCaps {
  std::uint64_t max_states = std::uint64_t{1} << 24;
};

// Exact maxmin reconfiguration value val(start <-> goal): the best over all
// reconfiguration sequences of the minimum satisfied fraction. Computed by
// descending-threshold connectivity over the full state space under
// Hamming-distance-1 adjacency. Endpoints may be any assignments.
Rat maxmin_value(const ConstraintSystem& psi, const Word& start,
                 const Word& goal, const SolveCaps& caps = {});

// Independent route to the same quantity: bottleneck (widest-path) Dijkstra.
// Kept as a cross-check oracle for the threshold filtration.
Rat maxmin_value_bottleneck(const ConstraintSystem& psi, const Word& start,
                            const Word& goal, const SolveCaps& caps = {});

// A sequence with sequence_value >= threshold iff one exists (BFS path).
std::optional<std::vector<Word>> witness_sequence(const ConstraintSystem& psi,
                                                  const Word& start,
                                                  const Word& goal,
                                                  const Rat& threshold,
                                                  const SolveCaps& caps = {});

// Strict variant: endpoints must satisfy psi; true iff maxmin_value == 1.
bool decide_exact_reconfig(const ConstraintSystem& psi, const Word& start,
                           const Word& goal, const SolveCaps& caps = {});

struct PaddedAverage {
  std::vector<Word> padded;
  Rat average;
};

// Appends copies of the final proof until the sequence has target_length
// elements, then returns the exact average over both the element index and
// the verifier's randomness of the acceptance indicator.
PaddedAverage pad_average_acceptance(const VerifierSpec& v,
                                     const std::vector<Word>& seq,
                                     std::uint64_t target_length,
                                     unsigned threads = 1);

}  // namespace reconf
