#include "ccspace/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace ccspace {

namespace {

void check_dim(int dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("set dimension must be 1 or 2");
}

Coord sub(const Coord& a, const Coord& b) { return {a[0] - b[0], a[1] - b[1]}; }
Coord add(const Coord& a, const Coord& b) { return {a[0] + b[0], a[1] + b[1]}; }
double dot(const Coord& a, const Coord& b) { return a[0] * b[0] + a[1] * b[1]; }
double cross(const Coord& a, const Coord& b) { return a[0] * b[1] - a[1] * b[0]; }
double norm(const Coord& a) { return std::hypot(a[0], a[1]); }

bool same_point(const Coord& a, const Coord& b) {
  return std::abs(a[0] - b[0]) <= kPointResolution && std::abs(a[1] - b[1]) <= kPointResolution;
}

// Sort lexicographically and merge points within kPointResolution.
std::vector<Coord> canonical_points(std::vector<Coord> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<Coord> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend() && (*it)[0] >= p[0] - kPointResolution; ++it) {
      if (same_point(*it, p)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

// Is b a left turn (strictly) from o->a? Near-collinear triples count as
// collinear: |sin| below 1e-12.
bool left_turn(const Coord& o, const Coord& a, const Coord& b) {
  const Coord u = sub(a, o);
  const Coord v = sub(b, o);
  return cross(u, v) > 1e-12 * norm(u) * norm(v);
}

// Andrew's monotone chain on canonical (sorted, deduplicated) points.
// Output is counterclockwise starting at the lexicographic minimum.
std::vector<Coord> hull_2d(const std::vector<Coord>& pts) {
  if (pts.size() <= 1) return pts;
  std::vector<Coord> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && !left_turn(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && !left_turn(h[k - 2], h[k - 1], *it)) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  if (h.size() == 2 && same_point(h[0], h[1])) h.resize(1);
  return h;
}

double segment_distance(const Coord& x, const Coord& a, const Coord& b) {
  const Coord ab = sub(b, a);
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return point_distance(x, a);
  const double t = std::clamp(dot(sub(x, a), ab) / len2, 0.0, 1.0);
  return point_distance(x, {a[0] + t * ab[0], a[1] + t * ab[1]});
}

// Rotate a CCW cycle to start at its bottom-most (min y, then min x) vertex.
std::vector<Coord> bottom_first(const std::vector<Coord>& v) {
  auto key = [](const Coord& c) { return std::pair{c[1], c[0]}; };
  auto it = std::min_element(v.begin(), v.end(),
                             [&](const Coord& a, const Coord& b) { return key(a) < key(b); });
  std::vector<Coord> out(it, v.end());
  out.insert(out.end(), v.begin(), it);
  return out;
}

std::vector<Coord> edges_of(const std::vector<Coord>& cycle) {
  std::vector<Coord> e;
  if (cycle.size() < 2) return e;
  e.reserve(cycle.size());
  for (std::size_t i = 0; i < cycle.size(); ++i)
    e.push_back(sub(cycle[(i + 1) % cycle.size()], cycle[i]));
  return e;
}

int half_plane(const Coord& e) { return (e[1] < 0.0 || (e[1] == 0.0 && e[0] < 0.0)) ? 1 : 0; }

// Polar-angle order on [0, 2pi).
int angle_compare(const Coord& a, const Coord& b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  const double c = cross(a, b);
  const double scale = 1e-12 * norm(a) * norm(b);
  if (c > scale) return -1;
  if (c < -scale) return 1;
  return 0;
}

// Farthest point of the (possibly degenerate) polygon cycle from a finite
// planar set: clip the polygon to each Voronoi cell and take its vertices.
double farthest_distance_2d(const std::vector<Coord>& cycle, const std::vector<Coord>& sites) {
  double best = 0.0;
  std::vector<Coord> cell, next;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const Coord& a = sites[i];
    cell = cycle;
    for (std::size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
      if (j == i) continue;
      const Coord& b = sites[j];
      const Coord n = sub(b, a);
      const Coord m = {(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0};
      auto side = [&](const Coord& x) { return dot(sub(x, m), n); };
      next.clear();
      for (std::size_t k = 0; k < cell.size(); ++k) {
        const Coord& cur = cell[k];
        const Coord& nxt = cell[(k + 1) % cell.size()];
        const double sc = side(cur), sn = side(nxt);
        if (sc <= 0.0) next.push_back(cur);
        if ((sc <= 0.0) != (sn <= 0.0)) {
          const double t = sc / (sc - sn);
          next.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
      }
      cell.swap(next);
    }
    for (const auto& x : cell) best = std::max(best, point_distance(x, a));
  }
  return best;
}

// Distance from x to the sorted coordinate list xs (dimension 1).
double nearest_on_line(double x, const std::vector<double>& xs) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != xs.end()) best = *it - x;
  if (it != xs.begin()) best = std::min(best, x - *std::prev(it));
  return best;
}

std::vector<double> first_coords(const FinitePointSet& a) {
  std::vector<double> xs;
  xs.reserve(a.size());
  for (const auto& p : a.points()) xs.push_back(p[0]);
  return xs;
}

double directed_line(const std::vector<double>& from, const std::vector<double>& to) {
  double best = 0.0;
  for (double x : from) best = std::max(best, nearest_on_line(x, to));
  return best;
}

double directed_plane(const std::vector<Coord>& from, const std::vector<Coord>& to) {
  double best = 0.0;
  for (const auto& a : from) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : to) {
      nearest = std::min(nearest, point_distance(a, b));
      if (nearest <= best) break;  // cannot raise the running maximum
    }
    best = std::max(best, nearest);
  }
  return best;
}

void check_same_dim(int a, int b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------

FinitePointSet::FinitePointSet(int dim, std::vector<Coord> points) : dim_(dim) {
  check_dim(dim);
  if (points.empty()) throw std::invalid_argument("point set must be nonempty");
  for (auto& p : points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw std::invalid_argument("point set coordinates must be finite");
    if (dim == 1) p[1] = 0.0;
  }
  points_ = canonical_points(std::move(points));
}

FinitePointSet FinitePointSet::of_reals(const std::vector<double>& xs) {
  std::vector<Coord> pts;
  pts.reserve(xs.size());
  for (double x : xs) pts.push_back({x, 0.0});
  return FinitePointSet(1, std::move(pts));
}

ConvexPolytope ConvexPolytope::interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("interval must be finite");
  if (lo > hi) throw std::invalid_argument("interval requires lo <= hi");
  if (hi - lo <= kPointResolution) return ConvexPolytope(1, {{lo, 0.0}});
  return ConvexPolytope(1, {{lo, 0.0}, {hi, 0.0}});
}

ConvexPolytope ConvexPolytope::point(int dim, Coord c) { return hull_of(dim, {c}); }

ConvexPolytope ConvexPolytope::hull_of(int dim, std::vector<Coord> points) {
  const FinitePointSet set(dim, std::move(points));
  const auto& pts = set.points();
  if (dim == 1) return interval(pts.front()[0], pts.back()[0]);
  return ConvexPolytope(2, hull_2d(pts));
}

ConvexPolytope ConvexPolytope::from_vertices(int dim, std::vector<Coord> vertices) {
  const std::size_t n = FinitePointSet(dim, vertices).size();
  ConvexPolytope p = hull_of(dim, std::move(vertices));
  if (p.size() != n) throw std::invalid_argument("vertices are not in strictly convex position");
  return p;
}

double ConvexPolytope::lo() const {
  if (dim_ != 1) throw std::logic_error("lo() is defined for intervals only");
  return vertices_.front()[0];
}

double ConvexPolytope::hi() const {
  if (dim_ != 1) throw std::logic_error("hi() is defined for intervals only");
  return vertices_.back()[0];
}

ConvexPolytope convex_hull(const FinitePointSet& a) {
  return ConvexPolytope::hull_of(a.dim(), a.points());
}

ConvexPolytope translate(const ConvexPolytope& p, const Coord& shift) {
  std::vector<Coord> v = p.vertices();
  for (auto& c : v) c = add(c, shift);
  if (p.dim() == 1) return ConvexPolytope::interval(v.front()[0], v.back()[0]);
  return ConvexPolytope::hull_of(2, std::move(v));
}

ConvexPolytope scale(const ConvexPolytope& p, double factor) {
  if (factor < 0.0) throw std::invalid_argument("scale factor must be nonnegative");
  std::vector<Coord> v = p.vertices();
  for (auto& c : v) c = {c[0] * factor, c[1] * factor};
  if (p.dim() == 1) return ConvexPolytope::interval(v.front()[0], v.back()[0]);
  return ConvexPolytope::hull_of(2, std::move(v));
}

ConvexPolytope minkowski_sum(const ConvexPolytope& p, const ConvexPolytope& q) {
  check_same_dim(p.dim(), q.dim());
  if (p.dim() == 1) return ConvexPolytope::interval(p.lo() + q.lo(), p.hi() + q.hi());

  const std::vector<Coord> a = bottom_first(p.vertices());
  const std::vector<Coord> b = bottom_first(q.vertices());
  const std::vector<Coord> ea = edges_of(a);
  const std::vector<Coord> eb = edges_of(b);

  std::vector<Coord> out;
  out.reserve(ea.size() + eb.size() + 1);
  Coord cur = add(a.front(), b.front());
  out.push_back(cur);
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size()) {
      cur = add(cur, ea[i++]);
    } else if (i == ea.size()) {
      cur = add(cur, eb[j++]);
    } else {
      const int c = angle_compare(ea[i], eb[j]);
      if (c < 0) {
        cur = add(cur, ea[i++]);
      } else if (c > 0) {
        cur = add(cur, eb[j++]);
      } else {
        cur = add(add(cur, ea[i++]), eb[j++]);
      }
    }
    out.push_back(cur);
  }
  if (out.size() > 1) out.pop_back();  // closes back onto the start vertex
  // Re-canonicalize: drops collinear runs produced by parallel edges.
  return ConvexPolytope::hull_of(2, std::move(out));
}

ConvexPolytope polytope_combine(const WeightedCombination<ConvexPolytope>& wc) {
  const auto& terms = wc.terms();
  ConvexPolytope acc = scale(terms.front().point, terms.front().weight);
  for (std::size_t k = 1; k < terms.size(); ++k) {
    check_same_dim(acc.dim(), terms[k].point.dim());
    acc = minkowski_sum(acc, scale(terms[k].point, terms[k].weight));
  }
  return acc;
}

ConvexPolytope polytope_combine(const std::vector<double>& weights,
                                const std::vector<ConvexPolytope>& polys) {
  return polytope_combine(WeightedCombination<ConvexPolytope>(weights, polys));
}

FinitePointSet minkowski_combine(const WeightedCombination<FinitePointSet>& wc,
                                 const MinkowskiOptions& opts, double* error_bound) {
  const auto& terms = wc.terms();
  const int dim = terms.front().point.dim();
  double bound = 0.0;

  std::vector<Coord> partial;
  for (const auto& p : terms.front().point.points())
    partial.push_back({terms.front().weight * p[0], terms.front().weight * p[1]});
  partial = canonical_points(std::move(partial));

  auto snap = [&](std::vector<Coord>& pts) {
    const double r = opts.prune_resolution;
    for (auto& p : pts) p = {std::round(p[0] / r) * r, std::round(p[1] / r) * r};
    pts = canonical_points(std::move(pts));
    bound += 0.5 * r * std::sqrt(static_cast<double>(dim));
  };

  for (std::size_t k = 1; k < terms.size(); ++k) {
    const auto& set = terms[k].point;
    check_same_dim(dim, set.dim());
    if (partial.size() * set.size() > opts.cap) {
      if (opts.prune_resolution <= 0.0) {
        std::ostringstream msg;
        msg << "Minkowski enumeration of " << partial.size() * set.size()
            << " selections exceeds cap " << opts.cap << " with pruning disabled";
        throw CapacityError(msg.str());
      }
      snap(partial);
      if (partial.size() * set.size() > opts.cap)
        throw CapacityError("Minkowski enumeration exceeds cap even after pruning");
    }
    const double w = terms[k].weight;
    std::vector<Coord> next;
    next.reserve(partial.size() * set.size());
    for (const auto& p : partial)
      for (const auto& q : set.points()) next.push_back({p[0] + w * q[0], p[1] + w * q[1]});
    partial = canonical_points(std::move(next));
  }
  if (error_bound) *error_bound += bound;
  return FinitePointSet(dim, std::move(partial));
}

FinitePointSet minkowski_combine(const std::vector<double>& weights,
                                 const std::vector<FinitePointSet>& sets,
                                 const MinkowskiOptions& opts, double* error_bound) {
  return minkowski_combine(WeightedCombination<FinitePointSet>(weights, sets), opts, error_bound);
}

double point_distance(const Coord& a, const Coord& b) { return norm(sub(a, b)); }

double point_polytope_distance(const Coord& x, const ConvexPolytope& p) {
  const auto& v = p.vertices();
  if (p.dim() == 1) return std::max({0.0, p.lo() - x[0], x[0] - p.hi()});
  if (v.size() == 1) return point_distance(x, v[0]);
  if (v.size() == 2) return segment_distance(x, v[0], v[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Coord& a = v[i];
    const Coord& b = v[(i + 1) % v.size()];
    if (cross(sub(b, a), sub(x, a)) < 0.0) inside = false;
    best = std::min(best, segment_distance(x, a, b));
  }
  return inside ? 0.0 : best;
}

bool contains(const ConvexPolytope& p, const Coord& x, double tol) {
  return point_polytope_distance(x, p) <= tol;
}

double hausdorff_distance(const FinitePointSet& a, const FinitePointSet& b) {
  check_same_dim(a.dim(), b.dim());
  if (a.dim() == 1) {
    const auto xa = first_coords(a), xb = first_coords(b);
    return std::max(directed_line(xa, xb), directed_line(xb, xa));
  }
  return std::max(directed_plane(a.points(), b.points()), directed_plane(b.points(), a.points()));
}

double hausdorff_distance(const ConvexPolytope& a, const ConvexPolytope& b) {
  check_same_dim(a.dim(), b.dim());
  // Distance to a convex set is convex, so each directed part peaks at a vertex.
  double best = 0.0;
  for (const auto& v : a.vertices()) best = std::max(best, point_polytope_distance(v, b));
  for (const auto& v : b.vertices()) best = std::max(best, point_polytope_distance(v, a));
  return best;
}

double farthest_distance(const ConvexPolytope& p, const FinitePointSet& a) {
  check_same_dim(p.dim(), a.dim());
  if (p.dim() == 1) {
    const auto xs = first_coords(a);
    double best = std::max(nearest_on_line(p.lo(), xs), nearest_on_line(p.hi(), xs));
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double mid = 0.5 * (xs[i] + xs[i + 1]);
      if (mid > p.lo() && mid < p.hi()) best = std::max(best, nearest_on_line(mid, xs));
    }
    return best;
  }
  return farthest_distance_2d(p.vertices(), a.points());
}

double hausdorff_distance(const FinitePointSet& a, const ConvexPolytope& b) {
  check_same_dim(a.dim(), b.dim());
  double best = farthest_distance(b, a);
  for (const auto& x : a.points()) best = std::max(best, point_polytope_distance(x, b));
  return best;
}

double hausdorff_distance(const ConvexPolytope& a, const FinitePointSet& b) {
  return hausdorff_distance(b, a);
}

std::vector<Interval> merge_intervals(std::vector<Interval> parts) {
  if (parts.empty()) throw std::invalid_argument("interval union must be nonempty");
  std::sort(parts.begin(), parts.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  for (const auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi + kPointResolution) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

namespace {

double distance_to_union(double x, const std::vector<Interval>& y) {
  auto it = std::upper_bound(y.begin(), y.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  double best = std::numeric_limits<double>::infinity();
  if (it != y.end()) best = it->lo - x;
  if (it != y.begin()) best = std::min(best, std::max(0.0, x - std::prev(it)->hi));
  return best;
}

double directed_union(const std::vector<Interval>& x, const std::vector<Interval>& y) {
  double best = 0.0;
  for (const auto& iv : x) {
    best = std::max({best, distance_to_union(iv.lo, y), distance_to_union(iv.hi, y)});
    // Inside [lo, hi] the distance to y peaks at midpoints of y's gaps.
    for (std::size_t k = 0; k + 1 < y.size(); ++k) {
      const double mid = 0.5 * (y[k].hi + y[k + 1].lo);
      if (mid > iv.lo && mid < iv.hi) best = std::max(best, distance_to_union(mid, y));
    }
  }
  return best;
}

}  // namespace

double hausdorff_distance(const std::vector<Interval>& x, const std::vector<Interval>& y) {
  return std::max(directed_union(x, y), directed_union(y, x));
}

std::string format_real(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_coord(const Coord& c, int dim) {
  std::string out = format_real(c[0]);
  if (dim == 2) out += ',' + format_real(c[1]);
  return out;
}

}  // namespace ccspace
