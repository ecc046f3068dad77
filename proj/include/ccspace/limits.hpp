#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccspace/core.hpp"
#include "ccspace/probability.hpp"
#include "ccspace/report.hpp"
#include "ccspace/spaces.hpp"

namespace ccspace {

/// Finitely supported law of a random point.
template <class P>
struct PointLaw {
  std::vector<P> points;
  std::vector<double> probs;

  FiniteSampleSpace sample_space() const { return FiniteSampleSpace(probs); }
  RandomElement<P> element() const { return RandomElement<P>{points}; }
};

enum class TrackMode { convex, raw };

namespace detail {

template <class P>
const P& draw(const PointLaw<P>& law, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < law.points.size(); ++i) {
    acc += law.probs[i];
    if (u < acc) return law.points[i];
  }
  return law.points.back();
}

// [n/(n+1), s; 1/(n+1), x]
template <CCSpace S>
typename S::Point running_step(const S& space, const typename S::Point& s, const typename S::Point& x,
                               std::size_t n) {
  const double keep = static_cast<double>(n) / static_cast<double>(n + 1);
  return space.combine(WeightedCombination<typename S::Point>::pair(keep, s, x));
}

}  // namespace detail

/// d_n = d([1/n, X_i]_{i<=n}, EX) for iid X_i drawn from `law`, averaged
/// incrementally. The convex track averages K X_i instead of X_i.
template <CCSpace S>
ConvergenceTrace slln_run(const S& space, const PointLaw<typename S::Point>& law, std::size_t n_max,
                          std::uint64_t seed, TrackMode mode, double tol = 0.05) {
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  const auto ex = expectation(space, law.sample_space(), law.element());
  Rng rng = stream_rng(seed, 0x5eed51, 0);
  auto next = [&] {
    const auto& x = detail::draw(law, rng);
    return mode == TrackMode::convex ? convexify(space, x) : x;
  };
  ConvergenceTrace trace;
  trace.target = "EX";
  trace.tolerance = tol;
  typename S::Point s = next();
  trace.push(1, space.distance(s, ex));
  for (std::size_t n = 1; n < n_max; ++n) {
    s = detail::running_step(space, s, next(), n);
    trace.push(n + 1, space.distance(s, ex));
  }
  trace.settle();
  return trace;
}

/// w -> w + k mod N on the uniform N-atom space; gcd(k, N) = 1 makes it ergodic.
class CyclicTransformation {
 public:
  CyclicTransformation(std::size_t modulus, std::size_t step);
  std::size_t modulus() const { return n_; }
  std::size_t step() const { return k_; }
  std::size_t operator()(std::size_t w) const { return (w + k_) % n_; }

 private:
  std::size_t n_, k_;
};

struct ErgodicResult {
  ConvergenceTrace trace;     // d_n maximized over starting atoms
  double orbit_defect = 0.0;  // d([1/N, K X(tau^i w)]_{i<N}, EX), worst start
  double bound = 0.0;         // max_w d(K X(w), EX)
  bool non_divergent = true;  // every d_n <= bound
};

/// Orbit averages [1/n, K X(tau^i w)]_{i<n} against EX, from every start w.
template <CCSpace S>
ErgodicResult ergodic_run(const S& space, const CyclicTransformation& tau,
                          const RandomElement<typename S::Point>& x, std::size_t n_max, double tol = 1e-12) {
  const std::size_t N = tau.modulus();
  if (x.size() != N) throw std::invalid_argument("random element must live on the N-atom space");
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  const auto omega = FiniteSampleSpace::uniform(N);
  const auto ex = expectation(space, omega, x);
  const auto kx = detail::convexified(space, x);

  ErgodicResult res;
  for (const auto& v : kx) res.bound = std::max(res.bound, space.distance(v, ex));

  // n terms along the orbit of w, combined in one step.
  auto direct = [&](std::size_t w, std::size_t n) {
    std::vector<Term<typename S::Point>> terms;
    for (std::size_t i = 0, v = w; i < n; ++i, v = tau(v)) terms.push_back({1.0 / static_cast<double>(n), kx[v]});
    return space.combine(WeightedCombination<typename S::Point>(std::move(terms)));
  };

  // One full period visits every atom once.
  for (std::size_t w = 0; w < N; ++w) res.orbit_defect = std::max(res.orbit_defect, space.distance(direct(w, N), ex));

  std::vector<typename S::Point> avg;
  std::vector<std::size_t> pos(N);
  for (std::size_t w = 0; w < N; ++w) {
    avg.push_back(kx[w]);
    pos[w] = tau(w);
  }
  res.trace.target = "EX";
  res.trace.tolerance = tol;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      for (std::size_t w = 0; w < N; ++w) {
        // Whole periods are re-evaluated directly so running rounding does not accumulate.
        avg[w] = n % N == 0 ? direct(w, n) : detail::running_step(space, avg[w], kx[pos[w]], n - 1);
        pos[w] = tau(pos[w]);
      }
    }
    double worst = 0.0;
    for (const auto& a : avg) worst = std::max(worst, space.distance(a, ex));
    res.trace.push(n, worst);
    if (worst > res.bound + tol) res.non_divergent = false;
  }

  res.trace.verdict = res.orbit_defect <= tol && res.non_divergent;
  return res;
}

/// d_n = d([1/n, x]_{i<=n}, Kx) for each n in `ns`, each average evaluated
/// directly. Verdict: the distances never increase (slack 1e-12).
template <CCSpace S>
ConvergenceTrace convexification_rate(const S& space, const typename S::Point& x, const std::vector<std::size_t>& ns) {
  if (ns.empty()) throw std::invalid_argument("n list must be nonempty");
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] == 0 || (i > 0 && ns[i] <= ns[i - 1])) throw std::invalid_argument("n list must increase from 1");
  const auto kx = convexify(space, x);
  ConvergenceTrace trace;
  trace.target = "Kx";
  trace.tolerance = 1e-12;
  for (auto n : ns) trace.push(n, space.distance(self_average(space, x, n), kx));
  trace.verdict = trace.non_increasing(trace.tolerance);
  return trace;
}

/// d_n = d([1/n, x_i], [1/n, K x_i]) for the cyclic sequence x_i = family[i mod m].
/// Verdict: the distances at whole cycles (n a multiple of m) never increase (slack 1e-12).
template <CCSpace S>
ConvergenceTrace compact_family_run(const S& space, const std::vector<typename S::Point>& family, std::size_t n_max) {
  if (family.empty()) throw std::invalid_argument("family must be nonempty");
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  ConvergenceTrace trace;
  trace.target = "[1/n, K x_i]";
  trace.tolerance = 1e-12;
  typename S::Point raw = family[0];
  typename S::Point cvx = convexify(space, family[0]);
  trace.push(1, space.distance(raw, cvx));
  for (std::size_t n = 1; n < n_max; ++n) {
    const auto& x = family[n % family.size()];
    raw = detail::running_step(space, raw, x, n);
    cvx = detail::running_step(space, cvx, convexify(space, x), n);
    trace.push(n + 1, space.distance(raw, cvx));
  }
  trace.verdict = true;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.ns.size(); ++i) {
    if (trace.ns[i] % family.size() != 0) continue;
    if (trace.distances[i] > prev + trace.tolerance) trace.verdict = false;
    prev = trace.distances[i];
  }
  return trace;
}

struct WeightBoundResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;  // lhs <= rhs + tol
};

/// lhs = d([a_i, y_i], [b_i, y_i]), rhs = sum |a_i - b_i| d(x_i, u), with
/// y_i = K x_i when `convexify_points`, else y_i = x_i.
template <CCSpace S>
WeightBoundResult weight_bound_sides(const S& space, const std::vector<double>& a, const std::vector<double>& b,
                                     const std::vector<typename S::Point>& xs, const typename S::Point& u,
                                     bool convexify_points, double tol) {
  if (a.size() != xs.size() || b.size() != xs.size()) throw std::invalid_argument("weights and points differ in length");
  std::vector<typename S::Point> ys;
  for (const auto& x : xs) ys.push_back(convexify_points ? convexify(space, x) : x);
  WeightBoundResult r;
  r.lhs = space.distance(combine(space, a, ys), combine(space, b, ys));
  for (std::size_t i = 0; i < xs.size(); ++i) r.rhs += std::abs(a[i] - b[i]) * space.distance(xs[i], u);
  r.holds = r.lhs <= r.rhs + tol;
  return r;
}

/// d([a_i, K x_i], [b_i, K x_i]) <= sum |a_i - b_i| d(x_i, u).
template <CCSpace S>
WeightBoundResult weight_perturbation_check(const S& space, const std::vector<double>& a, const std::vector<double>& b,
                               const std::vector<typename S::Point>& xs, const typename S::Point& u, double tol) {
  return weight_bound_sides(space, a, b, xs, u, true, tol);
}

/// The same bound on raw points in the power space (r = 2, u = 0) with
/// weights (4/5, 1/5) against (2/5, 3/5): lhs = |12x - 8y| / 25 exceeds
/// rhs = 2|x| / 5 + 2|y| / 5 for y = -x/2, so the bound needs convex points.
WeightBoundResult weight_bound_counterexample(double x = 1.0, double y = -0.5);

struct RationalJensenResult {
  double lhs = 0.0;                 // phi([k_i/m, x_i])
  double rhs = 0.0;                 // sum k_i/m phi(x_i)
  double replication_defect = 0.0;  // d([k_i/m, x_i], [1/m, x_1 (k_1 times), ...])
  bool holds = true;
};

/// phi([q_i, x_i]) <= sum q_i phi(x_i) for q_i = k_i/m and convex x_i.
template <CCSpace S>
RationalJensenResult rational_jensen_check(const S& space, const ConvexFunctional<S>& phi,
                                           const std::vector<std::size_t>& ks,
                                           const std::vector<typename S::Point>& xs, double tol) {
  if (ks.size() != xs.size() || ks.empty()) throw std::invalid_argument("counts and points differ in length");
  const std::size_t m = std::accumulate(ks.begin(), ks.end(), std::size_t{0});
  if (m == 0) throw std::invalid_argument("counts must not all be zero");
  for (const auto& x : xs)
    if (!is_convex_point(space, x, tol)) throw std::invalid_argument("points must be convex");
  std::vector<double> q;
  std::vector<typename S::Point> replicated;
  RationalJensenResult r;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    q.push_back(static_cast<double>(ks[i]) / static_cast<double>(m));
    r.rhs += q.back() * phi(space, xs[i]);
    for (std::size_t j = 0; j < ks[i]; ++j) replicated.push_back(xs[i]);
  }
  const auto mixed = combine(space, q, xs);
  r.lhs = phi(space, mixed);
  r.replication_defect = equality_defect(
      space, mixed, combine(space, std::vector<double>(m, 1.0 / static_cast<double>(m)), replicated));
  r.holds = r.lhs <= r.rhs + tol && r.replication_defect <= tol;
  return r;
}

}  // namespace ccspace
