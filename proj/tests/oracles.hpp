#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// algorithms; only its plain data types are shared.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "ccspace/geometry.hpp"

namespace oracle {

using ccspace::Coord;

inline double dist(const Coord& a, const Coord& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Every selection sum_i w_i u_i with u_i in sets[i], via an odometer.
inline std::vector<Coord> selections(const std::vector<double>& w, const std::vector<std::vector<Coord>>& sets) {
  std::vector<Coord> out;
  std::vector<std::size_t> idx(sets.size(), 0);
  while (true) {
    Coord s{0.0, 0.0};
    for (std::size_t i = 0; i < sets.size(); ++i) {
      s[0] += w[i] * sets[i][idx[i]][0];
      s[1] += w[i] * sets[i][idx[i]][1];
    }
    out.push_back(s);
    std::size_t k = 0;
    while (k < sets.size() && ++idx[k] == sets[k].size()) idx[k++] = 0;
    if (k == sets.size()) break;
  }
  return out;
}

// max over a of min over b, both ways.
inline double hausdorff_points(const std::vector<Coord>& a, const std::vector<Coord>& b) {
  auto one_way = [](const std::vector<Coord>& x, const std::vector<Coord>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

// Jarvis march; returns the hull counterclockwise without collinear points.
inline std::vector<Coord> gift_wrap(std::vector<Coord> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Coord& o, const Coord& a, const Coord& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Coord> hull;
  std::size_t cur = 0;  // lexicographic minimum is on the hull
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double c = cross(pts[cur], pts[next], pts[i]);
      // Clockwise turn, or collinear and farther: take i.
      if (c < -1e-12 || (std::abs(c) <= 1e-12 && dist(pts[cur], pts[i]) > dist(pts[cur], pts[next]))) next = i;
    }
    cur = next;
  } while (cur != 0 && hull.size() <= pts.size());
  return hull;
}

inline double point_segment(const Coord& x, const Coord& a, const Coord& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(x, {a[0] + t * dx, a[1] + t * dy});
}

// Distance from x to a convex polygon given counterclockwise (any size).
inline double point_convex(const Coord& x, const std::vector<Coord>& poly) {
  if (poly.size() == 1) return dist(x, poly[0]);
  bool inside = poly.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Coord& a = poly[i];
    const Coord& b = poly[(i + 1) % poly.size()];
    if ((b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < 0) inside = false;
    best = std::min(best, point_segment(x, a, b));
  }
  return inside ? 0.0 : best;
}

// For convex sets the farthest point from the other set is a vertex.
inline double hausdorff_convex(const std::vector<Coord>& p, const std::vector<Coord>& q) {
  double worst = 0.0;
  for (const auto& v : p) worst = std::max(worst, point_convex(v, q));
  for (const auto& v : q) worst = std::max(worst, point_convex(v, p));
  return worst;
}

// Points of a convex polygon on a triangle-fan grid with `k` steps per edge.
inline std::vector<Coord> dense_fill(const std::vector<Coord>& poly, int k) {
  std::vector<Coord> out;
  if (poly.size() < 3) {
    const Coord a = poly.front(), b = poly.back();
    for (int i = 0; i <= k; ++i) {
      const double t = static_cast<double>(i) / k;
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
    return out;
  }
  for (std::size_t j = 1; j + 1 < poly.size(); ++j) {
    const Coord a = poly[0], b = poly[j], c = poly[j + 1];
    for (int i = 0; i <= k; ++i)
      for (int m = 0; i + m <= k; ++m) {
        const double s = static_cast<double>(i) / k, t = static_cast<double>(m) / k;
        out.push_back({a[0] + s * (b[0] - a[0]) + t * (c[0] - a[0]), a[1] + s * (b[1] - a[1]) + t * (c[1] - a[1])});
      }
  }
  return out;
}

// W1 as the integral of |F^-1 - G^-1| over quantile levels.
inline double w1_quantile(const std::vector<double>& xa, const std::vector<double>& pa, const std::vector<double>& xb,
                          const std::vector<double>& pb) {
  std::size_t i = 0, j = 0;
  double ra = pa[0], rb = pb[0], total = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double step = std::min(ra, rb);
    total += step * std::abs(xa[i] - xb[j]);
    ra -= step;
    rb -= step;
    if (ra <= 1e-15 && ++i < xa.size()) ra = pa[i];
    if (rb <= 1e-15 && ++j < xb.size()) rb = pb[j];
  }
  return total;
}

// Law of sum_i w_i X_i for independent atoms, by full product enumeration.
inline std::map<double, double> product_law(const std::vector<double>& w, const std::vector<std::vector<double>>& xs,
                                            const std::vector<std::vector<double>>& ps) {
  std::map<double, double> out;
  std::vector<std::size_t> idx(xs.size(), 0);
  while (true) {
    double v = 0.0, p = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      v += w[i] * xs[i][idx[i]];
      p *= ps[i][idx[i]];
    }
    out[std::round(v * 1e9) / 1e9] += p;
    std::size_t k = 0;
    while (k < xs.size() && ++idx[k] == xs[k].size()) idx[k++] = 0;
    if (k == xs.size()) break;
  }
  return out;
}

// Probability-weighted average of values[w] over each block.
inline std::vector<double> block_means(const std::vector<double>& values, const std::vector<double>& probs,
                                       const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<double> out(values.size());
  for (const auto& b : blocks) {
    double m = 0.0, s = 0.0;
    for (auto w : b) {
      m += probs[w];
      s += probs[w] * values[w];
    }
    for (auto w : b) out[w] = s / m;
  }
  return out;
}

}  // namespace oracle
