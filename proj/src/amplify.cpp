#include "reconf/amplify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "reconf/errors.hpp"

namespace reconf {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr std::int64_t kGrid = std::int64_t{1} << 30;

Rat round_up_lambda(double value) {
  double snapped = std::round(value);
  if (std::abs(value - snapped) <= kResidualTol)
    return Rat(BigInt(static_cast<std::int64_t>(snapped)));
  auto scaled = static_cast<std::int64_t>(std::ceil(value * kGrid)) + 2;
  return Rat(BigInt(scaled), BigInt(kGrid));
}

}  // namespace

Rat spectral_lambda(const Graph& x) {
  std::size_t d = 0;
  if (!x.is_regular(&d)) throw invalid_instance_error("graph is not regular");
  if (x.n < 2) throw invalid_instance_error("expander needs >= 2 vertices");
  if (x.n > 512) throw capacity_error("eigensolve limited to n <= 512");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(x.n, x.n);
  for (std::size_t u = 0; u < x.n; ++u)
    for (std::size_t v = 0; v < x.n; ++v)
      if (x.adj[u][v]) a(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolve failed");
  Eigen::VectorXd mu = solver.eigenvalues();
  Eigen::MatrixXd vec = solver.eigenvectors();
  double residual = (a * vec - vec * mu.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > kResidualTol)
    throw std::runtime_error("eigenpair residual above tolerance");
  // Eigenvalues ascend; drop one copy of the top (the degree) and take the
  // largest remaining magnitude.
  double top = mu(static_cast<Eigen::Index>(x.n) - 1);
  if (std::abs(top - static_cast<double>(d)) > 1e-6)
    throw std::runtime_error("principal eigenvalue differs from the degree");
  double best = 0.0;
  for (Eigen::Index i = 0; i + 1 < static_cast<Eigen::Index>(x.n); ++i)
    best = std::max(best, std::abs(mu(i)));
  return round_up_lambda(best);
}

ExpanderCert certify_expander(const Graph& x) {
  ExpanderCert cert;
  cert.x = x;
  if (!x.is_regular(&cert.d)) throw invalid_instance_error("graph is not regular");
  cert.lambda = spectral_lambda(x);
  if (!(cert.lambda < Rat(static_cast<std::int64_t>(cert.d))))
    throw invalid_instance_error("lambda must be below the degree");
  return cert;
}

ExpanderCert complete_expander(std::size_t n) {
  return certify_expander(complete_graph(n));
}

ExpanderCert random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n * d % 2 != 0)
    throw invalid_instance_error("n*d must be even for a d-regular graph");
  if (d >= n) throw invalid_instance_error("degree must be below n");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::size_t> stubs;
    stubs.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    Graph g(n);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      std::size_t u = stubs[i], v = stubs[i + 1];
      if (u == v || g.has_edge(u, v)) {
        ok = false;
      } else {
        g.add_edge(u, v);
      }
    }
    if (ok) return certify_expander(g);
  }
  throw std::runtime_error("pairing model failed to produce a simple graph");
}

std::vector<std::vector<std::uint32_t>> enumerate_walks(
    const Graph& x, std::size_t ell, const AmplifyCaps& caps) {
  if (ell == 0) throw invalid_instance_error("walks need at least one vertex");
  std::vector<std::vector<std::uint32_t>> walks;
  std::vector<std::uint32_t> cur;
  auto extend = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      if (walks.size() >= caps.max_walks)
        throw capacity_error("walk count exceeds cap");
      walks.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v < x.n; ++v) {
      if (!cur.empty() && !x.adj[cur.back()][v]) continue;
      cur.push_back(v);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  extend(extend, ell);
  return walks;
}

WalkGraph product_graph(const Graph& base, const ExpanderCert& cert,
                        std::size_t ell, const AmplifyCaps& caps) {
  if (base.n != cert.x.n)
    throw invalid_instance_error("base and expander must share the vertex set");
  if (base.n > 64) throw capacity_error("product limited to n <= 64");
  WalkGraph wg;
  wg.walks = enumerate_walks(cert.x, ell, caps);
  wg.supports.reserve(wg.walks.size());
  for (const auto& w : wg.walks) {
    std::uint64_t mask = 0;
    for (std::uint32_t v : w) mask |= (std::uint64_t{1} << v);
    wg.supports.push_back(mask);
  }
  wg.h = Graph(wg.walks.size());
  for (std::size_t a = 0; a < wg.walks.size(); ++a) {
    for (std::size_t b = a + 1; b < wg.walks.size(); ++b) {
      if (base.is_clique_mask(wg.supports[a] | wg.supports[b]))
        wg.h.add_edge(a, b);
    }
  }
  return wg;
}

std::uint64_t lift_clique(const Graph& base, std::uint64_t clique_mask,
                          const WalkGraph& wg) {
  if (!base.is_clique_mask(clique_mask))
    throw invalid_instance_error("lift input does not induce a clique");
  if (wg.walks.size() > 64)
    throw capacity_error("walk-index masks need |W| <= 64");
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < wg.walks.size(); ++i) {
    if ((wg.supports[i] & ~clique_mask) == 0) out |= (std::uint64_t{1} << i);
  }
  return out;
}

std::uint64_t project_clique(const Graph& base, std::uint64_t walk_set,
                             const WalkGraph& wg) {
  if (wg.walks.size() > 64)
    throw capacity_error("walk-index masks need |W| <= 64");
  if (!wg.h.is_clique_mask(walk_set))
    throw invalid_instance_error("projection input is not a clique of H");
  std::uint64_t support = 0;
  std::uint64_t rest = walk_set;
  while (rest) {
    std::size_t i = static_cast<std::size_t>(std::countr_zero(rest));
    rest &= rest - 1;
    support |= wg.supports[i];
  }
  if (!base.is_clique_mask(support))
    throw invalid_instance_error("projected support is not a clique of G");
  return support;
}

WalkBound walk_bound_check(const ExpanderCert& cert, std::uint64_t subset_mask,
                           std::size_t ell) {
  if (cert.x.n > 64) throw capacity_error("subset masks need n <= 64");
  WalkBound out;
  std::size_t n = cert.x.n;
  auto in_s = [&](std::size_t v) { return (subset_mask >> v) & 1u; };

  // Exact confined-walk count by dynamic programming over the restriction.
  std::vector<BigInt> cnt(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (in_s(v)) cnt[v] = 1;
  for (std::size_t step = 1; step < ell; ++step) {
    std::vector<BigInt> next(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_s(v)) continue;
      for (std::size_t u = 0; u < n; ++u)
        if (in_s(u) && cert.x.adj[u][v]) next[v] += cnt[u];
    }
    cnt = std::move(next);
  }
  BigInt confined = 0;
  for (const BigInt& c : cnt) confined += c;
  BigInt total = BigInt(n);
  for (std::size_t i = 1; i < ell; ++i) total *= BigInt(static_cast<std::int64_t>(cert.d));
  out.exact = Rat(confined, total);

  Rat base = rat(static_cast<std::int64_t>(std::popcount(subset_mask)),
                 static_cast<std::int64_t>(n));
  Rat margin = 2 * cert.lambda / Rat(static_cast<std::int64_t>(cert.d));
  Rat low = base - margin;
  out.lower = low > 0 ? rat_pow(low, static_cast<unsigned>(ell)) : Rat(0);
  out.upper = rat_pow(base + margin, static_cast<unsigned>(ell));
  out.sandwich_ok = out.lower <= out.exact && out.exact <= out.upper;
  return out;
}

AmplificationReport amplification_report(const Rat& eps,
                                         const ExpanderCert& cert,
                                         std::size_t ell, std::size_t n) {
  if (!(eps > 0) || !(eps < 1))
    throw invalid_instance_error("eps must lie in (0,1)");
  AmplificationReport rep;
  rep.nu = (1 - eps / 4) / (1 - Rat(3) * eps / 4);
  rep.factor = rat_pow(rep.nu, static_cast<unsigned>(ell));
  std::uint64_t walk_count = n;
  for (std::size_t i = 1; i < ell; ++i) walk_count *= cert.d;
  rep.walk_count = walk_count;
  double log_nu = std::log(static_cast<double>(numerator(rep.nu))) -
                  std::log(static_cast<double>(denominator(rep.nu)));
  rep.delta = walk_count > 1
                  ? static_cast<double>(ell) * log_nu /
                        std::log(static_cast<double>(walk_count))
                  : 0.0;
  rep.side_condition_ok =
      cert.lambda / Rat(static_cast<std::int64_t>(cert.d)) < eps / 32;
  return rep;
}

ProductCompletenessCheck check_product_completeness(
    const Graph& base, const ExpanderCert& cert, std::size_t ell,
    std::uint64_t c_start, std::uint64_t c_goal, const CliqueCaps& caps) {
  if (std::popcount(c_start ^ c_goal) != 2 || std::popcount(c_start) != std::popcount(c_goal))
    throw invalid_instance_error(
        "endpoints must differ in exactly two vertices, same size");
  if (!base.is_clique_mask(c_start) || !base.is_clique_mask(c_goal))
    throw invalid_instance_error("endpoints must induce cliques");
  std::uint64_t shared = c_start & c_goal;
  auto k = static_cast<std::size_t>(std::popcount(c_start));

  WalkGraph wg = product_graph(base, cert, ell);
  std::uint64_t d_start = lift_clique(base, c_start, wg);
  std::uint64_t d_goal = lift_clique(base, c_goal, wg);
  std::uint64_t d_mid = lift_clique(base, shared, wg);

  ProductCompletenessCheck out;
  // Explicit sequence: strip D_start down to D_mid, then grow to D_goal.
  // All intermediate sets are subsets of cliques, hence cliques; the minimum
  // size along the way is |D_mid|.
  std::uint64_t cur = d_start;
  std::size_t min_size = static_cast<std::size_t>(std::popcount(cur));
  std::uint64_t to_remove = d_start & ~d_mid;
  while (to_remove) {
    std::uint64_t bit = to_remove & (~to_remove + 1);
    to_remove ^= bit;
    cur ^= bit;
    if (!wg.h.is_clique_mask(cur))
      throw std::logic_error("removal phase left a non-clique");
    min_size = std::min(min_size, static_cast<std::size_t>(std::popcount(cur)));
  }
  std::uint64_t to_add = d_goal & ~d_mid;
  while (to_add) {
    std::uint64_t bit = to_add & (~to_add + 1);
    to_add ^= bit;
    cur ^= bit;
    if (!wg.h.is_clique_mask(cur))
      throw std::logic_error("addition phase left a non-clique");
    min_size = std::min(min_size, static_cast<std::size_t>(std::popcount(cur)));
  }
  if (cur != d_goal) throw std::logic_error("explicit sequence missed D_goal");
  out.sequence_value = min_size;

  CliqueInstance inst{wg.h, d_start, d_goal};
  out.maxmin_h = clique_maxmin(inst, caps);

  Rat per_walk = rat(static_cast<std::int64_t>(k - 1),
                     static_cast<std::int64_t>(base.n)) -
                 2 * cert.lambda / Rat(static_cast<std::int64_t>(cert.d));
  if (per_walk > 0) {
    out.bound = Rat(BigInt(wg.walks.size())) *
                rat_pow(per_walk, static_cast<unsigned>(ell));
  } else {
    out.bound = 0;
    out.vacuous = true;
  }
  out.holds = Rat(BigInt(out.maxmin_h)) >= out.bound;
  return out;
}

ProductSoundnessCheck check_product_soundness(
    const Graph& base, const ExpanderCert& cert, std::size_t ell,
    std::uint64_t c_start, std::uint64_t c_goal, const Rat& eps,
    const CliqueCaps& caps) {
  if (!base.is_clique_mask(c_start) || !base.is_clique_mask(c_goal))
    throw invalid_instance_error("endpoints must induce cliques");
  WalkGraph wg = product_graph(base, cert, ell);
  std::uint64_t d_start = lift_clique(base, c_start, wg);
  std::uint64_t d_goal = lift_clique(base, c_goal, wg);

  ProductSoundnessCheck out;
  auto k = clique_number(base, caps);
  out.maxmin_g = clique_maxmin({base, c_start, c_goal}, caps);
  out.maxmin_h = clique_maxmin({wg.h, d_start, d_goal}, caps);
  Rat per_walk = (1 - eps) * rat(static_cast<std::int64_t>(k - 1),
                                 static_cast<std::int64_t>(base.n)) +
                 2 * cert.lambda / Rat(static_cast<std::int64_t>(cert.d));
  out.threshold = Rat(BigInt(wg.walks.size())) *
                  rat_pow(per_walk, static_cast<unsigned>(ell));
  out.conclusion = (1 - eps) * Rat(static_cast<std::int64_t>(k - 1));
  out.premise = Rat(BigInt(out.maxmin_h)) >= out.threshold;
  out.holds = !out.premise || Rat(BigInt(out.maxmin_g)) >= out.conclusion;
  return out;
}

}  // namespace reconf
