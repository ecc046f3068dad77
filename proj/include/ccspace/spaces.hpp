#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ccspace/combination.hpp"
#include "ccspace/distribution.hpp"
#include "ccspace/geometry.hpp"
#include "ccspace/rng.hpp"

namespace ccspace {

struct EuclideanPoint {
  std::vector<double> coords;

  friend bool operator==(const EuclideanPoint&, const EuclideanPoint&) = default;
};

EuclideanPoint make_point(std::initializer_list<double> xs);

// --------------------------------------------------------------------------
// R^d with the linear combination sum w_i x_i. Every point is convex.

class EuclideanSpace {
 public:
  using Point = EuclideanPoint;

  explicit EuclideanSpace(int dim);

  int dimension() const { return dim_; }
  std::string name() const { return "euclidean"; }

  double distance(const Point& a, const Point& b) const;
  Point combine(const WeightedCombination<Point>& wc) const;
  Point convexify_exact(const Point& x) const { return x; }
  Point sample(Rng& rng) const;
  Point dense_point(std::size_t i) const;
  double support(const Point& p, std::span<const double> v) const;

  std::string format(const Point& p) const;
  Point parse(const std::string& text) const;
  Point origin() const { return Point{std::vector<double>(static_cast<std::size_t>(dim_), 0.0)}; }

 private:
  int dim_;
};

// --------------------------------------------------------------------------
// R^d with the r-th power combination sum w_i^r x_i (r > 1). K x = 0.

class PowerSpace {
 public:
  using Point = EuclideanPoint;

  PowerSpace(int dim, double exponent);

  int dimension() const { return dim_; }
  double exponent() const { return r_; }
  std::string name() const { return "power"; }

  double distance(const Point& a, const Point& b) const;
  Point combine(const WeightedCombination<Point>& wc) const;
  Point convexify_exact(const Point& x) const;
  Point sample(Rng& rng) const;

  std::string format(const Point& p) const;
  Point parse(const std::string& text) const;

 private:
  int dim_;
  double r_;
};

// --------------------------------------------------------------------------
// Nonempty compact subsets of R^d (d in {1, 2}) with selection-wise
// combination and the Hausdorff metric.

/// Compact set `offsets + body`: a finite point set Minkowski-added to a
/// convex polytope. Finite sets have a one-point body at the origin, convex
/// sets a single offset at the origin; the form is closed under combination.
class CompactSet {
 public:
  CompactSet(FinitePointSet offsets, ConvexPolytope body);
  static CompactSet finite(FinitePointSet a);
  static CompactSet convex(ConvexPolytope p);

  int dim() const { return offsets_.dim(); }
  const FinitePointSet& offsets() const { return offsets_; }
  const ConvexPolytope& body() const { return body_; }

  bool is_finite() const { return body_.is_point(); }
  bool is_convex() const { return offsets_.size() == 1; }

  // Only valid when is_finite() / is_convex() respectively.
  FinitePointSet as_finite() const;
  ConvexPolytope as_polytope() const;

  ConvexPolytope hull() const;
  std::vector<Interval> as_intervals() const;  // dimension 1 only

 private:
  FinitePointSet offsets_;
  ConvexPolytope body_;
};

class CompactSetSpace {
 public:
  using Point = CompactSet;

  explicit CompactSetSpace(int dim, MinkowskiOptions opts = {});

  int dimension() const { return dim_; }
  const MinkowskiOptions& minkowski_options() const { return opts_; }
  std::string name() const { return "compact-sets"; }

  double distance(const Point& a, const Point& b) const;
  // Exact Hausdorff distance is implemented for every pair in dimension 1;
  // in the plane for finite and convex sets in any pairing.
  bool distance_supported(const Point& a, const Point& b) const;
  // d(O + P, O' + P') <= d(O, O') + d(P, P'); equals distance() on finite or
  // convex pairs.
  double distance_bound(const Point& a, const Point& b) const;
  Point combine(const WeightedCombination<Point>& wc) const;
  Point convexify_exact(const Point& x) const;
  Point sample(Rng& rng) const;
  double support(const Point& p, std::span<const double> v) const;

  std::string format(const Point& p) const;
  Point parse(const std::string& text) const;

 private:
  int dim_;
  MinkowskiOptions opts_;
};

// --------------------------------------------------------------------------
// Discrete laws on R with scaled convolution and the Wasserstein-1 metric.
// K F is the point mass at the mean of F.

class DistributionSpace {
 public:
  using Point = DiscreteDistribution;

  explicit DistributionSpace(std::size_t atom_cap = 512);

  std::size_t atom_cap() const { return atom_cap_; }
  std::string name() const { return "distributions"; }

  double distance(const Point& a, const Point& b) const { return wasserstein1(a, b); }
  Point combine(const WeightedCombination<Point>& wc) const;
  Point convexify_exact(const Point& x) const;
  Point sample(Rng& rng) const;

  std::string format(const Point& p) const { return format_distribution(p); }
  Point parse(const std::string& text) const;

 private:
  std::size_t atom_cap_;
};

// Text forms shared with the CLI.
std::vector<double> parse_tuple(const std::string& token);
FinitePointSet parse_point_set(const std::string& text, int dim);
DiscreteDistribution parse_distribution(const std::string& text);

}  // namespace ccspace
