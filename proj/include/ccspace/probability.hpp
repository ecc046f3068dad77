#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccspace/core.hpp"
#include "ccspace/report.hpp"
#include "ccspace/spaces.hpp"

namespace ccspace {

/// Finite probability space: labelled atoms with positive probabilities.
class FiniteSampleSpace {
 public:
  FiniteSampleSpace(std::vector<std::string> labels, std::vector<double> probs);
  explicit FiniteSampleSpace(std::vector<double> probs);  // labels "0", "1", ...
  static FiniteSampleSpace uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t w) const { return probs_[w]; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

/// Finite sigma-algebra on atoms {0, ..., n-1}, given by its blocks.
class FinitePartition {
 public:
  FinitePartition(std::size_t n, std::vector<std::vector<std::size_t>> blocks);
  static FinitePartition trivial(std::size_t n);
  static FinitePartition finest(std::size_t n);
  // 2^level consecutive blocks of equal size; n must be divisible by 2^level.
  static FinitePartition dyadic(std::size_t n, unsigned level);
  // From a block label per atom (labels need not be contiguous).
  static FinitePartition from_labels(const std::vector<std::size_t>& labels);

  std::size_t atoms() const { return block_of_.size(); }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t w) const { return block_of_[w]; }

  // Every block of *this lies inside a block of `coarser`.
  bool refines(const FinitePartition& coarser) const;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

// Every set partition of {0, ..., n-1} (Bell(n) of them), via restricted
// growth strings.
std::vector<FinitePartition> all_partitions(std::size_t n);

/// Chain of partitions, each refining its predecessor (increasing) or
/// coarsening it (decreasing).
class Filtration {
 public:
  enum class Direction { increasing, decreasing };

  Filtration(std::vector<FinitePartition> chain, Direction dir = Direction::increasing);
  // Levels 0..log2(n): trivial up to finest. n must be a power of two.
  static Filtration dyadic(std::size_t n, Direction dir = Direction::increasing);

  const std::vector<FinitePartition>& partitions() const { return chain_; }
  std::size_t size() const { return chain_.size(); }
  Direction direction() const { return dir_; }

 private:
  std::vector<FinitePartition> chain_;
  Direction dir_;
};

/// Values of a random element on each atom of a finite sample space.
template <class P>
struct RandomElement {
  std::vector<P> values;

  std::size_t size() const { return values.size(); }
  const P& operator()(std::size_t w) const { return values[w]; }
};

/// Deterministic sequence u_0, u_1, ... whose first term is a convex point.
template <CCSpace S>
class DenseSequence {
 public:
  using P = typename S::Point;

  DenseSequence(const S& space, std::function<P(std::size_t)> gen, double tol = 1e-9)
      : gen_(std::move(gen)) {
    if (!is_convex_point(space, gen_(0), tol))
      throw std::invalid_argument("dense sequence must start at a convex point");
  }
  P operator()(std::size_t i) const { return gen_(i); }

 private:
  std::function<P(std::size_t)> gen_;
};

template <CCSpace S>
  requires HasDenseSequence<S>
DenseSequence<S> dense_sequence(const S& space) {
  return DenseSequence<S>(space, [space](std::size_t i) { return space.dense_point(i); });
}

namespace detail {

inline void check_sizes(const FiniteSampleSpace& omega, std::size_t n) {
  if (omega.size() != n) throw std::invalid_argument("random element does not match sample space");
}

template <CCSpace S>
std::vector<typename S::Point> convexified(const S& space, const RandomElement<typename S::Point>& x) {
  std::vector<typename S::Point> out;
  out.reserve(x.size());
  for (const auto& v : x.values) out.push_back(convexify(space, v));
  return out;
}

// Probability-weighted combination of the given points over `atoms`.
template <CCSpace S>
typename S::Point block_combine(const S& space, const FiniteSampleSpace& omega,
                                const std::vector<std::size_t>& atoms,
                                const std::vector<typename S::Point>& pts) {
  double mass = 0.0;
  for (auto w : atoms) mass += omega.prob(w);
  if (!(mass > 0.0)) throw std::invalid_argument("conditioning block has zero probability");
  std::vector<Term<typename S::Point>> terms;
  terms.reserve(atoms.size());
  for (auto w : atoms) terms.push_back({omega.prob(w) / mass, pts[w]});
  return space.combine(WeightedCombination<typename S::Point>(std::move(terms)));
}

inline std::vector<std::size_t> all_atoms(std::size_t n) {
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = i;
  return a;
}

}  // namespace detail

/// EX = [P(w), K X(w)] over the atoms.
template <CCSpace S>
typename S::Point expectation(const S& space, const FiniteSampleSpace& omega,
                              const RandomElement<typename S::Point>& x) {
  detail::check_sizes(omega, x.size());
  return detail::block_combine(space, omega, detail::all_atoms(x.size()), detail::convexified(space, x));
}

/// Nearest of u_0..u_n to x; ties go to the smallest index.
template <CCSpace S>
typename S::Point psi_n(const S& space, const typename S::Point& x, const DenseSequence<S>& ds,
                        std::size_t n) {
  typename S::Point best = ds(0);
  double best_d = space.distance(best, x);
  for (std::size_t i = 1; i <= n; ++i) {
    typename S::Point u = ds(i);
    const double d = space.distance(u, x);
    if (d < best_d) {
      best_d = d;
      best = std::move(u);
    }
  }
  return best;
}

/// E(X|G): on each block B, [P(w)/P(B), K X(w)] over w in B.
template <CCSpace S>
RandomElement<typename S::Point> conditional_expectation(const S& space, const FiniteSampleSpace& omega,
                                                         const RandomElement<typename S::Point>& x,
                                                         const FinitePartition& g) {
  detail::check_sizes(omega, x.size());
  if (g.atoms() != x.size()) throw std::invalid_argument("partition does not match sample space");
  const auto kx = detail::convexified(space, x);
  std::vector<std::optional<typename S::Point>> per_block(g.size());
  for (std::size_t b = 0; b < g.size(); ++b)
    per_block[b] = detail::block_combine(space, omega, g.blocks()[b], kx);
  RandomElement<typename S::Point> out;
  out.values.reserve(x.size());
  for (std::size_t w = 0; w < x.size(); ++w) out.values.push_back(*per_block[g.block_of(w)]);
  return out;
}

/// Worst pointwise distance between two random elements.
template <CCSpace S>
double sup_distance(const S& space, const RandomElement<typename S::Point>& x,
                    const RandomElement<typename S::Point>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("random elements differ in size");
  double worst = 0.0;
  for (std::size_t w = 0; w < x.size(); ++w) worst = std::max(worst, space.distance(x(w), y(w)));
  return worst;
}

/// Delta_p(X, Y) = (E d^p(X, Y))^(1/p), p in {1, 2}.
template <CCSpace S>
double delta_p(const S& space, const FiniteSampleSpace& omega, const RandomElement<typename S::Point>& x,
               const RandomElement<typename S::Point>& y, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("p must be 1 or 2");
  detail::check_sizes(omega, x.size());
  detail::check_sizes(omega, y.size());
  double s = 0.0;
  for (std::size_t w = 0; w < x.size(); ++w) {
    const double d = space.distance(x(w), y(w));
    s += omega.prob(w) * (p == 1 ? d : d * d);
  }
  return p == 1 ? s : std::sqrt(s);
}

/// Pointwise [l, X; 1-l, Y].
template <CCSpace S>
RandomElement<typename S::Point> mix(const S& space, double lambda, const RandomElement<typename S::Point>& x,
                                     const RandomElement<typename S::Point>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("random elements differ in size");
  RandomElement<typename S::Point> out;
  for (std::size_t w = 0; w < x.size(); ++w)
    out.values.push_back(space.combine(WeightedCombination<typename S::Point>::pair(lambda, x(w), y(w))));
  return out;
}

struct CharacterizationResult {
  bool holds = true;
  double worst = 0.0;
  std::vector<std::size_t> witness_blocks;  // block union A of the worst mismatch
};

/// Tests whether Y is E(X|G) through its characterization: for every union A
/// of blocks of G, E(Z) agrees for Z = X on A, a off A and Z = Y on A, a off A.
/// Y must be G-measurable with convex values and `a` must be convex.
template <CCSpace S>
CharacterizationResult check_ce_characterization(const S& space, const FiniteSampleSpace& omega,
                                                 const RandomElement<typename S::Point>& x,
                                                 const RandomElement<typename S::Point>& y,
                                                 const FinitePartition& g, const typename S::Point& a,
                                                 double tol) {
  detail::check_sizes(omega, x.size());
  detail::check_sizes(omega, y.size());
  if (g.atoms() != x.size()) throw std::invalid_argument("partition does not match sample space");
  if (g.size() > 20) throw std::invalid_argument("too many blocks to enumerate their unions");
  if (!is_convex_point(space, a, tol)) throw std::invalid_argument("reference point must be convex");
  for (const auto& block : g.blocks())
    for (auto w : block) {
      if (space.distance(y(w), y(block.front())) > tol)
        throw std::invalid_argument("Y is not measurable with respect to the partition");
      if (!is_convex_point(space, y(w), tol)) throw std::invalid_argument("Y must take convex values");
    }

  const auto kx = detail::convexified(space, x);
  const auto all = detail::all_atoms(x.size());
  CharacterizationResult res;
  std::vector<typename S::Point> zx, zy;
  for (std::size_t mask = 0; mask < (std::size_t{1} << g.size()); ++mask) {
    zx.clear();
    zy.clear();
    for (std::size_t w = 0; w < x.size(); ++w) {
      const bool in_a = (mask >> g.block_of(w)) & 1U;
      zx.push_back(in_a ? kx[w] : a);
      zy.push_back(in_a ? y(w) : a);
    }
    const double d = space.distance(detail::block_combine(space, omega, all, zx),
                                    detail::block_combine(space, omega, all, zy));
    if (d > res.worst) {
      res.worst = d;
      res.witness_blocks.clear();
      for (std::size_t b = 0; b < g.size(); ++b)
        if ((mask >> b) & 1U) res.witness_blocks.push_back(b);
    }
  }
  res.holds = res.worst <= tol;
  if (res.holds) res.witness_blocks.clear();
  return res;
}

/// Identities of conditional expectation for G1 coarser than G2:
///   E(E(X|G)) = EX;  E(X|G) = KX for G-measurable X;
///   E([l, X; 1-l, Y]|G) = [l, E(X|G); 1-l, E(Y|G)];
///   E(E(X|G1)|G2) = E(E(X|G2)|G1) = E(X|G1).
template <CCSpace S>
AxiomReport check_ce_properties(const S& space, const FiniteSampleSpace& omega,
                                const RandomElement<typename S::Point>& x,
                                const RandomElement<typename S::Point>& y, double lambda,
                                const FinitePartition& g1, const FinitePartition& g2, double tol) {
  if (!g2.refines(g1)) throw std::invalid_argument("G1 must be coarser than G2");
  using RE = RandomElement<typename S::Point>;
  AxiomReport report;
  report.space = space.name();
  report.tolerance = tol;
  auto record = [&](const std::string& name, double worst, std::size_t trials) {
    CheckResult c;
    c.name = name;
    c.trials = trials;
    c.worst_violation = worst;
    c.passed = worst <= tol;
    report.checks.push_back(c);
  };
  auto ce = [&](const RE& z, const FinitePartition& g) {
    return conditional_expectation(space, omega, z, g);
  };
  const auto ex = expectation(space, omega, x);

  double worst = 0.0;
  for (const auto* g : {&g1, &g2})
    worst = std::max(worst, space.distance(expectation(space, omega, ce(x, *g)), ex));
  record("expectation-of-conditional", worst, 2);

  // A G-measurable element built from raw values of X.
  worst = 0.0;
  for (const auto* g : {&g1, &g2}) {
    RE xg;
    for (std::size_t w = 0; w < x.size(); ++w) xg.values.push_back(x(g->blocks()[g->block_of(w)].front()));
    const RE c = ce(xg, *g);
    for (std::size_t w = 0; w < x.size(); ++w)
      worst = std::max(worst, space.distance(c(w), convexify(space, xg(w))));
  }
  record("measurable-gives-K", worst, 2 * x.size());

  worst = 0.0;
  for (const auto* g : {&g1, &g2})
    worst = std::max(worst, sup_distance(space, ce(mix(space, lambda, x, y), *g),
                                         mix(space, lambda, ce(x, *g), ce(y, *g))));
  record("mixing", worst, 2 * x.size());

  const RE c1 = ce(x, g1);
  worst = std::max(sup_distance(space, ce(c1, g2), c1), sup_distance(space, ce(ce(x, g2), g1), c1));
  record("tower", worst, x.size());
  return report;
}

/// Martingale (E(X|F_n))_n along a filtration, with the worst defect of
/// E(X_finer | F_coarser) = X_coarser over consecutive levels.
template <class P>
struct MartingaleResult {
  std::vector<RandomElement<P>> terms;
  double worst_defect = 0.0;
};

template <CCSpace S>
MartingaleResult<typename S::Point> martingale_sequence(const S& space, const FiniteSampleSpace& omega,
                                                        const RandomElement<typename S::Point>& x,
                                                        const Filtration& filt) {
  MartingaleResult<typename S::Point> res;
  for (const auto& g : filt.partitions()) res.terms.push_back(conditional_expectation(space, omega, x, g));
  const bool up = filt.direction() == Filtration::Direction::increasing;
  for (std::size_t n = 0; n + 1 < res.terms.size(); ++n) {
    const auto& coarse_g = filt.partitions()[up ? n : n + 1];
    const auto& fine = res.terms[up ? n + 1 : n];
    const auto& coarse = res.terms[up ? n : n + 1];
    res.worst_defect = std::max(
        res.worst_defect, sup_distance(space, conditional_expectation(space, omega, fine, coarse_g), coarse));
  }
  return res;
}

/// trace_n = Delta_p(E(X|F_n), E(X|F_last)), where F_last is the limit
/// sigma-algebra of the chain (finest when increasing, coarsest when
/// decreasing).
template <CCSpace S>
ConvergenceTrace martingale_convergence_trace(const S& space, const FiniteSampleSpace& omega,
                                              const RandomElement<typename S::Point>& x,
                                              const Filtration& filt, int p, double tol) {
  const auto terms = martingale_sequence(space, omega, x, filt).terms;
  ConvergenceTrace trace;
  trace.target = filt.direction() == Filtration::Direction::increasing ? "E(X|F_inf)" : "E(X|F_-inf)";
  trace.tolerance = tol;
  for (std::size_t n = 0; n < terms.size(); ++n)
    trace.push(n, delta_p(space, omega, terms[n], terms.back(), p));
  trace.settle();
  return trace;
}

// ---------------------------------------------------------------------------
// Jensen inequalities for certified convex functionals.

/// Functional known to be convex along combinations: x -> d(a, x) for a
/// convex point a, or the maximum of finitely many support functionals.
/// Only these two constructors exist; other functionals cannot be checked.
template <CCSpace S>
class ConvexFunctional {
 public:
  using P = typename S::Point;

  static ConvexFunctional distance_to(const S& space, P anchor, double tol = 1e-9) {
    if (!is_convex_point(space, anchor, tol))
      throw std::invalid_argument("distance functional needs a convex anchor");
    ConvexFunctional f;
    f.anchor_ = std::move(anchor);
    return f;
  }

  static ConvexFunctional max_support(const S& space, std::vector<std::vector<double>> directions)
    requires HasSupport<S>
  {
    if (directions.empty()) throw std::invalid_argument("support functional needs directions");
    for (const auto& v : directions)
      if (static_cast<int>(v.size()) != space.dimension())
        throw std::invalid_argument("direction has wrong dimension");
    ConvexFunctional f;
    f.directions_ = std::move(directions);
    return f;
  }

  double operator()(const S& space, const P& x) const {
    if (anchor_) return space.distance(*anchor_, x);
    if constexpr (HasSupport<S>) {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& v : directions_) best = std::max(best, space.support(x, v));
      return best;
    } else {
      throw std::logic_error("support functional on a space without support functions");
    }
  }

  std::string describe(const S& space) const {
    if (anchor_) return "d({" + space.format(*anchor_) + "}, .)";
    return "max of " + std::to_string(directions_.size()) + " support functionals";
  }

 private:
  ConvexFunctional() = default;
  std::optional<P> anchor_;
  std::vector<std::vector<double>> directions_;
};

struct JensenResult {
  std::vector<double> lhs;  // phi(E X) or phi(E(X|G)) per block
  std::vector<double> rhs;  // E phi(X) or E(phi(X)|G) per block
  double worst_violation = 0.0;
  bool holds = true;
};

/// phi(EX) <= E phi(X), or blockwise phi(E(X|G)) <= E(phi(X)|G).
template <CCSpace S>
JensenResult jensen_check(const S& space, const FiniteSampleSpace& omega,
                          const RandomElement<typename S::Point>& x, const ConvexFunctional<S>& phi,
                          const std::optional<FinitePartition>& g, double tol) {
  detail::check_sizes(omega, x.size());
  const FinitePartition part = g ? *g : FinitePartition::trivial(x.size());
  if (part.atoms() != x.size()) throw std::invalid_argument("partition does not match sample space");
  const auto kx = detail::convexified(space, x);
  JensenResult res;
  for (const auto& block : part.blocks()) {
    double mass = 0.0, rhs = 0.0;
    for (auto w : block) {
      mass += omega.prob(w);
      rhs += omega.prob(w) * phi(space, x(w));
    }
    rhs /= mass;
    const double lhs = phi(space, detail::block_combine(space, omega, block, kx));
    res.lhs.push_back(lhs);
    res.rhs.push_back(rhs);
    res.worst_violation = std::max(res.worst_violation, lhs - rhs);
  }
  res.holds = res.worst_violation <= tol;
  return res;
}

}  // namespace ccspace
