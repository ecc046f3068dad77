#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccspace/core.hpp"
#include "ccspace/report.hpp"
#include "ccspace/spaces.hpp"

namespace ccspace {

struct AxiomCheckOptions {
  int convexify_depth = 5;    // doublings inspected by the convexification check
  std::size_t max_terms = 4;  // largest combination drawn
};

// Iterates grow quickly for sets and laws; keep the depth where enumeration
// stays exact (or, for laws, cheap).
inline AxiomCheckOptions default_check_options(const CompactSetSpace& s) {
  return {s.dimension() == 1 ? 5 : 4, 4};
}
inline AxiomCheckOptions default_check_options(const DistributionSpace&) { return {3, 4}; }
template <class S>
AxiomCheckOptions default_check_options(const S&) {
  return {};
}

inline double default_tolerance(const DistributionSpace&) { return 1e-6; }
template <class S>
double default_tolerance(const S&) {
  return 1e-9;
}

namespace detail {

struct Trial {
  double violation = 0.0;
  std::function<std::string()> witness;
  bool skipped = false;

  static Trial skip() {
    Trial t;
    t.skipped = true;
    return t;
  }
};

template <class Body>
CheckResult run_trials(std::string name, std::uint64_t stream, std::size_t trials, double tol,
                       std::uint64_t seed, Body&& body) {
  CheckResult r;
  r.name = std::move(name);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = stream_rng(seed, stream, i);
    Trial t;
    std::string error;
    try {
      t = body(rng);
    } catch (const std::exception& e) {
      t = Trial{};
      t.violation = std::numeric_limits<double>::infinity();
      error = e.what();
    }
    if (t.skipped) {
      ++r.skipped;
      continue;
    }
    ++r.trials;
    double v = std::isnan(t.violation) ? std::numeric_limits<double>::infinity() : t.violation;
    if (v > r.worst_violation) {
      r.worst_violation = v;
      if (v > tol) {
        std::ostringstream w;
        w << "trial " << i << ": ";
        if (!error.empty()) {
          w << "error: " << error;
        } else if (t.witness) {
          w << t.witness();
        }
        r.witness = w.str();
      }
    }
  }
  r.passed = r.worst_violation <= tol;
  if (r.passed) r.witness.clear();
  return r;
}

template <CCSpace S>
std::vector<typename S::Point> sample_points(const S& space, Rng& rng, std::size_t n) {
  std::vector<typename S::Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(space.sample(rng));
  return pts;
}

inline double sample_lambda(Rng& rng) { return uniform(rng, 0.05, 0.95); }

inline std::size_t sample_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + uniform_index(rng, hi - lo + 1);
}

template <CCSpace S>
std::string describe(const S& space, const std::vector<double>& w,
                     const std::vector<typename S::Point>& pts) {
  std::ostringstream out;
  out.precision(17);
  out << '[';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out << "; ";
    out << w[i] << ", {" << space.format(pts[i]) << '}';
  }
  out << ']';
  return out.str();
}

template <CCSpace S>
std::string describe_points(const S& space, const std::vector<typename S::Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += " | ";
    out += '{' + space.format(pts[i]) + '}';
  }
  return out;
}

// Fold one more measured defect into a trial.
inline void keep_worst(Trial& acc, double v) {
  if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
  acc.violation = std::max(acc.violation, v);
}

}  // namespace detail

/// Randomized verification of the convex-combination axioms, the laws they
/// imply, and the convex-like structure identities on convex points.
///
/// Each check draws `trials` independent inputs from a stream determined by
/// (seed, check, trial). Checks with an exception record an infinite
/// violation with the message as witness.
template <CCSpace S>
AxiomReport check_axioms(const S& space, std::size_t trials, double tol, std::uint64_t seed,
                         AxiomCheckOptions opts = {}) {
  if (trials == 0) throw std::invalid_argument("check_axioms needs trials >= 1");
  if (opts.max_terms < 2) throw std::invalid_argument("check_axioms needs max_terms >= 2");
  using P = typename S::Point;
  using detail::Trial;
  using WC = WeightedCombination<P>;
  const std::size_t N = opts.max_terms;
  auto K = [&](const P& x) { return convexify(space, x); };
  auto comb = [&](const std::vector<double>& w, const std::vector<P>& pts) {
    return space.combine(WC(w, pts));
  };
  auto defect = [&](const P& a, const P& b) { return equality_defect(space, a, b); };

  AxiomReport report;
  report.space = space.name();
  report.tolerance = tol;
  std::uint64_t stream = 0;
  auto add = [&](const std::string& name, auto&& body) {
    report.checks.push_back(detail::run_trials(name, ++stream, trials, tol, seed, body));
  };

  add("metric", [&](Rng& rng) {
    const auto p = detail::sample_points(space, rng, 3);
    const double ab = space.distance(p[0], p[1]), ba = space.distance(p[1], p[0]);
    const double ac = space.distance(p[0], p[2]), bc = space.distance(p[1], p[2]);
    Trial t;
    t.violation = std::max({std::abs(ab - ba), space.distance(p[0], p[0]), ac - ab - bc, -ab,
                            ab > 0.0 ? 0.0 : std::numeric_limits<double>::infinity()});
    t.witness = [&space, p] { return detail::describe_points(space, p); };
    return t;
  });

  add("identity", [&](Rng& rng) {
    const P u = space.sample(rng);
    Trial t;
    t.violation = defect(space.combine(WC::single(u)), u);
    t.witness = [&space, u] { return "[1, {" + space.format(u) + "}]"; };
    return t;
  });

  add("commutativity", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    const auto w = random_simplex_weights(rng, n);
    const auto p = detail::sample_points(space, rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
    std::vector<double> w2;
    std::vector<P> p2;
    for (auto k : perm) {
      w2.push_back(w[k]);
      p2.push_back(p[k]);
    }
    Trial t;
    t.violation = defect(comb(w, p), comb(w2, p2));
    t.witness = [&space, w, p] { return detail::describe(space, w, p); };
    return t;
  });

  // Last two terms grouped into an inner combination.
  add("associativity", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    const auto w = random_simplex_weights(rng, n);
    const auto p = detail::sample_points(space, rng, n);
    const double s = w[n - 2] + w[n - 1];
    const P inner = comb({w[n - 2] / s, 1.0 - w[n - 2] / s}, {p[n - 2], p[n - 1]});
    std::vector<double> wo(w.begin(), w.end() - 2);
    std::vector<P> po(p.begin(), p.end() - 2);
    wo.push_back(1.0 - std::accumulate(wo.begin(), wo.end(), 0.0));
    po.push_back(inner);
    Trial t;
    t.violation = defect(comb(w, p), comb(wo, po));
    t.witness = [&space, w, p] { return detail::describe(space, w, p); };
    return t;
  });

  add("flattening", [&](Rng& rng) {
    const std::size_t m = detail::sample_count(rng, 2, std::min<std::size_t>(3, N));
    // Inner sizes with total at most N.
    std::vector<std::size_t> sizes(m, 1);
    for (std::size_t extra = N - m, i = 0; extra > 0 && i < m; ++i) {
      const std::size_t add_k = uniform_index(rng, std::min<std::size_t>(extra, 2) + 1);
      sizes[i] += add_k;
      extra -= add_k;
    }
    const auto alpha = random_simplex_weights(rng, m);
    std::vector<P> inner;
    std::vector<double> flat_w;
    std::vector<P> flat_p;
    for (std::size_t i = 0; i < m; ++i) {
      const auto beta = random_simplex_weights(rng, sizes[i]);
      const auto u = detail::sample_points(space, rng, sizes[i]);
      inner.push_back(comb(beta, u));
      for (std::size_t j = 0; j < sizes[i]; ++j) {
        flat_w.push_back(alpha[i] * beta[j]);
        flat_p.push_back(u[j]);
      }
    }
    Trial t;
    t.violation = defect(comb(alpha, inner), comb(flat_w, flat_p));
    t.witness = [&space, flat_w, flat_p] { return detail::describe(space, flat_w, flat_p); };
    return t;
  });

  // lambda_k -> lambda inside (0, 1), and lambda_k -> 1 where the limit is u.
  add("continuity", [&](Rng& rng) {
    const double lam = detail::sample_lambda(rng);
    const auto p = detail::sample_points(space, rng, 2);
    const P target = comb({lam, 1.0 - lam}, p);
    Trial t;
    for (int k = 40; k <= 50; ++k) {
      const double step = std::ldexp(1.0, -k);
      const double lk = lam + (k % 2 ? step : -step);
      detail::keep_worst(t, defect(comb({lk, 1.0 - lk}, p), target));
    }
    const double near_one = 1.0 - std::ldexp(1.0, -45);
    detail::keep_worst(t, defect(comb({near_one, 1.0 - near_one}, p), p[0]));
    t.witness = [&space, lam, p] { return detail::describe(space, {lam, 1.0 - lam}, p); };
    return t;
  });

  add("joint-continuity", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    auto w = random_simplex_weights(rng, n);
    const auto p = detail::sample_points(space, rng, n);
    const P base = comb(w, p);
    const double eps = 1e-12;
    const std::size_t i = uniform_index(rng, n);
    const std::size_t j = (i + 1 + uniform_index(rng, n - 1)) % n;
    auto w2 = w;
    w2[i] += eps;
    w2[j] -= eps;
    Trial t;
    t.violation = defect(comb(w2, p), base);
    t.witness = [&space, w, p] { return detail::describe(space, w, p); };
    return t;
  });

  add("negative-curvature", [&](Rng& rng) {
    const double lam = detail::sample_lambda(rng);
    const auto u = detail::sample_points(space, rng, 2);
    const auto v = detail::sample_points(space, rng, 2);
    const double lhs = space.distance(comb({lam, 1.0 - lam}, u), comb({lam, 1.0 - lam}, v));
    const double rhs = lam * space.distance(u[0], v[0]) + (1.0 - lam) * space.distance(u[1], v[1]);
    Trial t;
    t.violation = lhs - rhs;
    t.witness = [&space, lam, u, v] {
      return "u " + detail::describe(space, {lam, 1.0 - lam}, u) + " v " +
             detail::describe(space, {lam, 1.0 - lam}, v);
    };
    return t;
  });

  add("negative-curvature-n-ary", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    const auto w = random_simplex_weights(rng, n);
    const auto u = detail::sample_points(space, rng, n);
    const auto v = detail::sample_points(space, rng, n);
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) rhs += w[i] * space.distance(u[i], v[i]);
    Trial t;
    t.violation = space.distance(comb(w, u), comb(w, v)) - rhs;
    t.witness = [&space, w, u, v] {
      return "u " + detail::describe(space, w, u) + " v " + detail::describe(space, w, v);
    };
    return t;
  });

  // Along x_m = [2^-m, x]: distance to Kx never increases, Kx is a fixed
  // point of self-averaging, and K is constant along the iterates.
  add("convexification", [&](Rng& rng) {
    const P x = space.sample(rng);
    const P kx = K(x);
    Trial t;
    P it = x;
    double prev = space.distance(it, kx);
    for (int m = 1; m <= opts.convexify_depth; ++m) {
      it = midpoint(space, it, it);
      const double d = space.distance(it, kx);
      detail::keep_worst(t, d - prev);
      prev = d;
    }
    detail::keep_worst(t, defect(midpoint(space, kx, kx), kx));
    detail::keep_worst(t, defect(K(it), kx));
    t.witness = [&space, x] { return "x = {" + space.format(x) + "}"; };
    return t;
  });

  add("K-linearity", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    const auto w = random_simplex_weights(rng, n);
    const auto p = detail::sample_points(space, rng, n);
    std::vector<P> kp;
    for (const auto& x : p) kp.push_back(K(x));
    Trial t;
    t.violation = defect(K(comb(w, p)), comb(w, kp));
    t.witness = [&space, w, p] { return detail::describe(space, w, p); };
    return t;
  });

  // K[w_j, u] = Ku = [w_j, Ku] and K(Ku) = Ku.
  add("K-idempotence", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    const auto w = random_simplex_weights(rng, n);
    const P u = space.sample(rng);
    const P ku = K(u);
    const std::vector<P> us(n, u), kus(n, ku);
    Trial t;
    detail::keep_worst(t, defect(K(ku), ku));
    detail::keep_worst(t, defect(K(comb(w, us)), ku));
    detail::keep_worst(t, defect(comb(w, kus), ku));
    t.witness = [&space, w, u] { return detail::describe(space, w, std::vector<P>(w.size(), u)); };
    return t;
  });

  add("absorption", [&](Rng& rng) {
    const auto w = random_simplex_weights(rng, 3);
    const P u = space.sample(rng);
    const P kv = K(space.sample(rng));
    Trial t;
    t.violation = defect(comb(w, {u, kv, kv}), comb({w[0], 1.0 - w[0]}, {u, kv}));
    t.witness = [&space, w, u, kv] { return detail::describe(space, w, {u, kv, kv}); };
    return t;
  });

  add("K-nonexpansive", [&](Rng& rng) {
    const auto p = detail::sample_points(space, rng, 2);
    Trial t;
    t.violation = space.distance(K(p[0]), K(p[1])) - space.distance(p[0], p[1]);
    t.witness = [&space, p] { return detail::describe_points(space, p); };
    return t;
  });

  // Convex-like structure on convex points: a repeated point merges its
  // weights, and a unit weight (all others zero) selects its point.
  add("merge-repeated", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 3, std::max<std::size_t>(3, N));
    const auto w = random_simplex_weights(rng, n);
    std::vector<P> p;
    for (const auto& x : detail::sample_points(space, rng, n - 1)) p.push_back(K(x));
    p.insert(p.begin(), p.front());
    std::vector<double> wm(w.begin() + 1, w.end());
    wm.front() += w.front();
    std::vector<P> pm(p.begin() + 1, p.end());
    Trial t;
    t.violation = defect(comb(w, p), comb(wm, pm));
    t.witness = [&space, w, p] { return detail::describe(space, w, p); };
    return t;
  });

  add("unit-weight", [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, N);
    std::vector<P> p;
    for (const auto& x : detail::sample_points(space, rng, n)) p.push_back(K(x));
    const std::size_t i = uniform_index(rng, n);
    std::vector<double> w(n, 0.0);
    w[i] = 1.0;
    Trial t;
    t.violation = defect(comb(w, p), p[i]);
    t.witness = [&space, w, p] { return detail::describe(space, w, p); };
    return t;
  });

  return report;
}

struct CancellationOptions {
  bool convexify_inputs = true;  // false feeds raw samples (expected to fail off K(X))
};

/// Metric cancellation on convex points:
///   d([l, x; 1-l, y], [l, x; 1-l, z]) = (1-l) d(y, z),
/// the two-point identities d([l, u; 1-l, v], u) = (1-l) d(u, v) and
/// d([l, u; 1-l, v], v) = l d(u, v), and the parallelogram step
/// d(u, v) = d(y, w) for u = [l, x; 1-l, y], v = [l, x; 1-l, z], w = [l, y; 1-l, z].
template <CCSpace S>
AxiomReport check_cancellation(const S& space, std::size_t trials, double tol, std::uint64_t seed,
                               CancellationOptions opts = {}) {
  if (trials == 0) throw std::invalid_argument("check_cancellation needs trials >= 1");
  using P = typename S::Point;
  using detail::Trial;
  auto draw = [&](Rng& rng) {
    const P x = space.sample(rng);
    return opts.convexify_inputs ? convexify(space, x) : x;
  };
  auto mix = [&](double lam, const P& a, const P& b) {
    return space.combine(WeightedCombination<P>::pair(lam, a, b));
  };

  AxiomReport report;
  report.space = space.name();
  report.tolerance = tol;
  const std::uint64_t base = opts.convexify_inputs ? 100 : 200;

  report.checks.push_back(detail::run_trials("cancellation", base + 1, trials, tol, seed, [&](Rng& rng) {
    const double lam = uniform(rng, 0.0, 1.0);
    const P x = draw(rng), y = draw(rng), z = draw(rng);
    const double lhs = space.distance(mix(lam, x, y), mix(lam, x, z));
    Trial t;
    t.violation = std::abs(lhs - (1.0 - lam) * space.distance(y, z));
    t.witness = [&space, lam, x, y, z, lhs] {
      std::ostringstream w;
      w.precision(17);
      w << "lambda " << lam << ", " << detail::describe_points(space, std::vector<P>{x, y, z})
        << ", lhs " << lhs;
      return w.str();
    };
    return t;
  }));

  report.checks.push_back(detail::run_trials("step-one-identities", base + 2, trials, tol, seed, [&](Rng& rng) {
    const double lam = uniform(rng, 0.0, 1.0);
    const P u = draw(rng), v = draw(rng);
    const P m = mix(lam, u, v);
    const double duv = space.distance(u, v);
    Trial t;
    t.violation = std::max(std::abs(space.distance(m, u) - (1.0 - lam) * duv),
                           std::abs(space.distance(m, v) - lam * duv));
    t.witness = [&space, lam, u, v] { return detail::describe(space, {lam, 1.0 - lam}, {u, v}); };
    return t;
  }));

  report.checks.push_back(detail::run_trials("parallelogram", base + 3, trials, tol, seed, [&](Rng& rng) {
    const double lam = uniform(rng, 0.0, 1.0);
    const P x = draw(rng), y = draw(rng), z = draw(rng);
    const P u = mix(lam, x, y), v = mix(lam, x, z), w = mix(lam, y, z);
    Trial t;
    t.violation = std::abs(space.distance(u, v) - space.distance(y, w));
    t.witness = [&space, lam, x, y, z] {
      std::ostringstream out;
      out.precision(17);
      out << "lambda " << lam << ", " << detail::describe_points(space, std::vector<P>{x, y, z});
      return out.str();
    };
    return t;
  }));

  return report;
}

}  // namespace ccspace
