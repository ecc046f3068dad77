#include "ccspace/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ccspace {

namespace {

void check_coords(const EuclideanPoint& p, int dim) {
  if (static_cast<int>(p.coords.size()) != dim) throw std::invalid_argument("point has wrong dimension");
  for (double x : p.coords)
    if (!std::isfinite(x)) throw std::invalid_argument("coordinates must be finite");
}

double euclid(const EuclideanPoint& a, const EuclideanPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const double d = a.coords[i] - b.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::string format_tuple(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_real(xs[i]);
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size() || !std::isfinite(x))
    throw std::invalid_argument("not a finite number: '" + s + "'");
  return x;
}

// Radical inverse of i in the given base.
double van_der_corput(std::size_t i, unsigned base) {
  double x = 0.0, f = 1.0 / base;
  for (; i > 0; i /= base, f /= base) x += f * static_cast<double>(i % base);
  return x;
}

// Points of [-3, 3]^d pairwise at least 1e-6 apart.
std::vector<Coord> tie_free_coords(Rng& rng, int dim, std::size_t count) {
  std::vector<Coord> pts;
  while (pts.size() < count) {
    Coord c{uniform(rng, -3.0, 3.0), dim == 2 ? uniform(rng, -3.0, 3.0) : 0.0};
    bool clash = false;
    for (const auto& q : pts) clash = clash || point_distance(c, q) < 1e-6;
    if (!clash) pts.push_back(c);
  }
  return pts;
}

}  // namespace

EuclideanPoint make_point(std::initializer_list<double> xs) { return EuclideanPoint{std::vector<double>(xs)}; }

std::vector<double> parse_tuple(const std::string& token) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = token.find(',', start);
    out.push_back(parse_real(token.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

FinitePointSet parse_point_set(const std::string& text, int dim) {
  std::vector<Coord> pts;
  for (const auto& tok : split_ws(text)) {
    const auto xs = parse_tuple(tok);
    if (static_cast<int>(xs.size()) != dim)
      throw std::invalid_argument("point '" + tok + "' does not have dimension " + std::to_string(dim));
    pts.push_back({xs[0], dim == 2 ? xs[1] : 0.0});
  }
  if (pts.empty()) throw std::invalid_argument("point set must be nonempty");
  return FinitePointSet(dim, std::move(pts));
}

DiscreteDistribution parse_distribution(const std::string& text) {
  std::vector<std::pair<double, double>> mass;
  for (const auto& tok : split_ws(text)) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected atom:prob, got '" + tok + "'");
    mass.emplace_back(parse_real(tok.substr(0, colon)), parse_real(tok.substr(colon + 1)));
  }
  std::sort(mass.begin(), mass.end());
  std::vector<double> atoms, probs;
  for (const auto& [x, p] : mass) {
    atoms.push_back(x);
    probs.push_back(p);
  }
  return DiscreteDistribution(std::move(atoms), std::move(probs));
}

// ---------------------------------------------------------------------------

EuclideanSpace::EuclideanSpace(int dim) : dim_(dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("euclidean dimension must be 1, 2 or 3");
}

double EuclideanSpace::distance(const Point& a, const Point& b) const { return euclid(a, b); }

EuclideanSpace::Point EuclideanSpace::combine(const WeightedCombination<Point>& wc) const {
  if (wc.size() == 1) return wc.terms().front().point;
  Point out = origin();
  for (const auto& t : wc) {
    check_coords(t.point, dim_);
    for (int k = 0; k < dim_; ++k) out.coords[k] += t.weight * t.point.coords[k];
  }
  return out;
}

EuclideanSpace::Point EuclideanSpace::sample(Rng& rng) const {
  Point p = origin();
  for (auto& x : p.coords) x = uniform(rng, -3.0, 3.0);
  return p;
}

// u_0 is the origin; u_i for i >= 1 is a Halton point stretched to the cube
// of half-width floor(log2 i) + 1, so every bounded region is eventually
// covered with vanishing mesh.
EuclideanSpace::Point EuclideanSpace::dense_point(std::size_t i) const {
  Point p = origin();
  if (i == 0) return p;
  const double half = std::floor(std::log2(static_cast<double>(i))) + 1.0;
  static constexpr unsigned kBases[3] = {2, 3, 5};
  for (int k = 0; k < dim_; ++k) p.coords[k] = half * (2.0 * van_der_corput(i, kBases[k]) - 1.0);
  return p;
}

double EuclideanSpace::support(const Point& p, std::span<const double> v) const {
  double s = 0.0;
  for (int k = 0; k < dim_; ++k) s += p.coords[k] * v[k];
  return s;
}

std::string EuclideanSpace::format(const Point& p) const { return format_tuple(p.coords); }

EuclideanSpace::Point EuclideanSpace::parse(const std::string& text) const {
  const auto toks = split_ws(text);
  if (toks.size() != 1) throw std::invalid_argument("expected a single coordinate tuple");
  Point p{parse_tuple(toks[0])};
  check_coords(p, dim_);
  return p;
}

// ---------------------------------------------------------------------------

PowerSpace::PowerSpace(int dim, double exponent) : dim_(dim), r_(exponent) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("power space dimension must be 1, 2 or 3");
  if (!(exponent > 1.0) || !std::isfinite(exponent))
    throw std::invalid_argument("power space exponent must be > 1");
}

double PowerSpace::distance(const Point& a, const Point& b) const { return euclid(a, b); }

PowerSpace::Point PowerSpace::combine(const WeightedCombination<Point>& wc) const {
  if (wc.size() == 1) return wc.terms().front().point;
  Point out{std::vector<double>(static_cast<std::size_t>(dim_), 0.0)};
  for (const auto& t : wc) {
    check_coords(t.point, dim_);
    const double w = std::pow(t.weight, r_);
    for (int k = 0; k < dim_; ++k) out.coords[k] += w * t.point.coords[k];
  }
  return out;
}

PowerSpace::Point PowerSpace::convexify_exact(const Point& x) const {
  return Point{std::vector<double>(x.coords.size(), 0.0)};
}

PowerSpace::Point PowerSpace::sample(Rng& rng) const {
  Point p{std::vector<double>(static_cast<std::size_t>(dim_), 0.0)};
  for (auto& x : p.coords) x = uniform(rng, -3.0, 3.0);
  return p;
}

std::string PowerSpace::format(const Point& p) const { return format_tuple(p.coords); }

PowerSpace::Point PowerSpace::parse(const std::string& text) const {
  const auto toks = split_ws(text);
  if (toks.size() != 1) throw std::invalid_argument("expected a single coordinate tuple");
  Point p{parse_tuple(toks[0])};
  check_coords(p, dim_);
  return p;
}

// ---------------------------------------------------------------------------

// Canonical form: a single offset is folded into the body, and a one-point
// body is folded into the offsets.
CompactSet::CompactSet(FinitePointSet offsets, ConvexPolytope body)
    : offsets_(std::move(offsets)), body_(std::move(body)) {
  if (offsets_.dim() != body_.dim()) throw std::invalid_argument("dimension mismatch");
  const int d = offsets_.dim();
  const Coord origin{0.0, 0.0};
  if (body_.is_point()) {
    const Coord c = body_.vertices().front();
    if (c != origin) {
      std::vector<Coord> pts = offsets_.points();
      for (auto& p : pts) p = {p[0] + c[0], p[1] + c[1]};
      offsets_ = FinitePointSet(d, std::move(pts));
      body_ = ConvexPolytope::point(d, origin);
    }
  } else if (offsets_.size() == 1) {
    const Coord o = offsets_.points().front();
    if (o != origin) {
      body_ = translate(body_, o);
      offsets_ = FinitePointSet(d, {origin});
    }
  }
}

CompactSet CompactSet::finite(FinitePointSet a) {
  const int d = a.dim();
  return CompactSet(std::move(a), ConvexPolytope::point(d, {0.0, 0.0}));
}

CompactSet CompactSet::convex(ConvexPolytope p) {
  const int d = p.dim();
  return CompactSet(FinitePointSet(d, {{0.0, 0.0}}), std::move(p));
}

FinitePointSet CompactSet::as_finite() const {
  if (!is_finite()) throw std::logic_error("compact set is not finite");
  return offsets_;
}

ConvexPolytope CompactSet::as_polytope() const {
  if (!is_convex()) throw std::logic_error("compact set is not a polytope");
  return translate(body_, offsets_.points().front());
}

ConvexPolytope CompactSet::hull() const { return minkowski_sum(convex_hull(offsets_), body_); }

std::vector<Interval> CompactSet::as_intervals() const {
  if (dim() != 1) throw std::logic_error("as_intervals needs dimension 1");
  std::vector<Interval> parts;
  for (const auto& o : offsets_.points()) parts.push_back({o[0] + body_.lo(), o[0] + body_.hi()});
  return merge_intervals(std::move(parts));
}

CompactSetSpace::CompactSetSpace(int dim, MinkowskiOptions opts) : dim_(dim), opts_(opts) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("compact-sets dimension must be 1 or 2");
}

bool CompactSetSpace::distance_supported(const Point& a, const Point& b) const {
  if (dim_ == 1) return true;
  return (a.is_finite() || a.is_convex()) && (b.is_finite() || b.is_convex());
}

double CompactSetSpace::distance(const Point& a, const Point& b) const {
  if (a.dim() != dim_ || b.dim() != dim_) throw std::invalid_argument("set has wrong dimension");
  if (dim_ == 1) return hausdorff_distance(a.as_intervals(), b.as_intervals());
  if (a.is_finite() && b.is_finite()) return hausdorff_distance(a.as_finite(), b.as_finite());
  if (a.is_convex() && b.is_convex()) return hausdorff_distance(a.as_polytope(), b.as_polytope());
  if (a.is_finite() && b.is_convex()) return hausdorff_distance(a.as_finite(), b.as_polytope());
  if (a.is_convex() && b.is_finite()) return hausdorff_distance(a.as_polytope(), b.as_finite());
  throw std::domain_error("planar Hausdorff distance between general compact sets is not implemented");
}

double CompactSetSpace::distance_bound(const Point& a, const Point& b) const {
  if (distance_supported(a, b)) return distance(a, b);
  return hausdorff_distance(a.offsets(), b.offsets()) + hausdorff_distance(a.body(), b.body());
}

CompactSetSpace::Point CompactSetSpace::combine(const WeightedCombination<Point>& wc) const {
  if (wc.size() == 1) return wc.terms().front().point;
  std::vector<FinitePointSet> offsets;
  std::vector<ConvexPolytope> bodies;
  for (const auto& t : wc) {
    if (t.point.dim() != dim_) throw std::invalid_argument("set has wrong dimension");
    offsets.push_back(t.point.offsets());
    bodies.push_back(t.point.body());
  }
  const auto w = wc.weights();
  return CompactSet(minkowski_combine(w, offsets, opts_), polytope_combine(w, bodies));
}

CompactSetSpace::Point CompactSetSpace::convexify_exact(const Point& x) const {
  return CompactSet::convex(x.hull());
}

// One to three points.
CompactSetSpace::Point CompactSetSpace::sample(Rng& rng) const {
  const std::size_t n = 1 + uniform_index(rng, 3);
  return CompactSet::finite(FinitePointSet(dim_, tie_free_coords(rng, dim_, n)));
}

double CompactSetSpace::support(const Point& p, std::span<const double> v) const {
  const double vy = dim_ == 2 ? v[1] : 0.0;
  auto h = [&](const std::vector<Coord>& pts) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : pts) best = std::max(best, c[0] * v[0] + c[1] * vy);
    return best;
  };
  return h(p.offsets().points()) + h(p.body().vertices());
}

std::string CompactSetSpace::format(const Point& p) const {
  auto join = [&](const std::vector<Coord>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out += ' ';
      out += format_coord(pts[i], dim_);
    }
    return out;
  };
  if (p.is_finite()) return join(p.offsets().points());
  if (p.is_convex()) return "co " + join(p.body().vertices());
  return join(p.offsets().points()) + " + co " + join(p.body().vertices());
}

CompactSetSpace::Point CompactSetSpace::parse(const std::string& text) const {
  const auto plus = text.find('+');
  if (plus != std::string::npos) {
    const Point offsets = parse(text.substr(0, plus));
    const Point body = parse(text.substr(plus + 1));
    if (!offsets.is_finite() || !body.is_convex())
      throw std::invalid_argument("expected '<points> + co <points>'");
    return CompactSet(offsets.as_finite(), body.as_polytope());
  }
  auto toks = split_ws(text);
  if (!toks.empty() && toks.front() == "co") {
    toks.erase(toks.begin());
    std::string rest;
    for (const auto& t : toks) rest += t + ' ';
    return CompactSet::convex(convex_hull(parse_point_set(rest, dim_)));
  }
  return CompactSet::finite(parse_point_set(text, dim_));
}

// ---------------------------------------------------------------------------

DistributionSpace::DistributionSpace(std::size_t atom_cap) : atom_cap_(atom_cap) {
  if (atom_cap == 0) throw std::invalid_argument("atom_cap must be positive");
}

DistributionSpace::Point DistributionSpace::combine(const WeightedCombination<Point>& wc) const {
  if (wc.size() == 1) return wc.terms().front().point;
  return scaled_convolution_combine(wc, atom_cap_);
}

DistributionSpace::Point DistributionSpace::convexify_exact(const Point& x) const {
  return DiscreteDistribution::dirac(distribution_mean(x));
}

// One to four distinct atoms in [-3, 3].
DistributionSpace::Point DistributionSpace::sample(Rng& rng) const {
  const std::size_t n = 1 + uniform_index(rng, 4);
  std::vector<double> atoms;
  for (const auto& c : tie_free_coords(rng, 1, n)) atoms.push_back(c[0]);
  std::sort(atoms.begin(), atoms.end());
  return DiscreteDistribution(std::move(atoms), random_simplex_weights(rng, n));
}

DistributionSpace::Point DistributionSpace::parse(const std::string& text) const {
  return parse_distribution(text);
}

}  // namespace ccspace
