#pragma once

#include <cstdint>
#include <vector>

#include "reconf/clique.hpp"
#include "reconf/graph.hpp"
#include "reconf/rational.hpp"

namespace reconf {

// A d-regular graph with a certified rational upper bound on the second
// largest absolute adjacency eigenvalue. Eigenvalues within 1e-9 of an
// integer snap to it; anything else is rounded up, so every lemma inequality
// evaluated with `lambda` is conservative.
struct ExpanderCert {
  Graph x;
  std::size_t d = 0;
  Rat lambda;
};

// Max |mu| over non-principal adjacency eigenvalues (one copy of the top
// eigenvalue removed), as a certified rational bound. Regular graphs only.
Rat spectral_lambda(const Graph& x);

ExpanderCert certify_expander(const Graph& x);
ExpanderCert complete_expander(std::size_t n);  // lambda = 1 exactly

// Pairing-model random d-regular simple graph (resampled on loops or
// multi-edges), with a computed lambda.
ExpanderCert random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

struct AmplifyCaps {
  std::uint64_t max_walks = 4096;
};

// All walks on ell vertices (ell-1 edges) over x, in DFS order.
std::vector<std::vector<std::uint32_t>> enumerate_walks(
    const Graph& x, std::size_t ell, const AmplifyCaps& caps = {});

// Derandomized graph product H = (W, F): vertices are walks over the
// expander, two walks are adjacent iff the union of their supports induces a
// clique of the base graph.
struct WalkGraph {
  Graph h;
  std::vector<std::vector<std::uint32_t>> walks;
  std::vector<std::uint64_t> supports;  // base-vertex masks per walk
};

WalkGraph product_graph(const Graph& base, const ExpanderCert& cert,
                        std::size_t ell, const AmplifyCaps& caps = {});

// D_C: walks whose support lies inside the clique C (walk-index mask).
std::uint64_t lift_clique(const Graph& base, std::uint64_t clique_mask,
                          const WalkGraph& wg);

// C_D: union of the supports of a clique of H; must induce a clique of the
// base graph.
std::uint64_t project_clique(const Graph& base, std::uint64_t walk_set,
                             const WalkGraph& wg);

struct WalkBound {
  Rat lower;  // (|S|/n - 2 lambda/d)^ell, clamped at 0
  Rat exact;  // fraction of walks confined to S
  Rat upper;  // (|S|/n + 2 lambda/d)^ell
  bool sandwich_ok = false;
};

WalkBound walk_bound_check(const ExpanderCert& cert, std::uint64_t subset_mask,
                           std::size_t ell);

struct AmplificationReport {
  Rat nu;             // (1 - eps/4) / (1 - 3 eps/4)
  Rat factor;         // nu^ell
  double delta = 0;   // solves nu^ell = N^delta
  std::uint64_t walk_count = 0;  // N = n d^{ell-1}
  bool side_condition_ok = false;  // lambda/d < eps/32
};

AmplificationReport amplification_report(const Rat& eps,
                                         const ExpanderCert& cert,
                                         std::size_t ell, std::size_t n);

// Desk-scale checker for the product's completeness direction: endpoints
// differing in exactly two vertices route through D of the shared clique;
// the explicit three-phase sequence witnesses the walk-count lower bound.
struct ProductCompletenessCheck {
  Rat bound;                    // |W| ((k-1)/n - 2 lambda/d)^ell, clamped
  bool vacuous = false;         // bound clamped to zero
  std::size_t sequence_value = 0;  // min size along the explicit sequence
  std::size_t maxmin_h = 0;
  bool holds = false;  // maxmin_h >= bound
};

ProductCompletenessCheck check_product_completeness(
    const Graph& base, const ExpanderCert& cert, std::size_t ell,
    std::uint64_t c_start, std::uint64_t c_goal, const CliqueCaps& caps = {});

// Contrapositive of the soundness direction: a large maxmin value in H
// forces a proportionally large maxmin value in the base graph.
struct ProductSoundnessCheck {
  Rat threshold;  // |W| ((1-eps)(k-1)/n + 2 lambda/d)^ell
  std::size_t maxmin_h = 0;
  std::size_t maxmin_g = 0;
  Rat conclusion;  // (1-eps)(k-1)
  bool premise = false;
  bool holds = false;  // premise implies maxmin_g >= conclusion
};

ProductSoundnessCheck check_product_soundness(
    const Graph& base, const ExpanderCert& cert, std::size_t ell,
    std::uint64_t c_start, std::uint64_t c_goal, const Rat& eps,
    const CliqueCaps& caps = {});

}  // namespace reconf
