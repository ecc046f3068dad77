#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccspace/combination.hpp"

namespace ccspace {

// Points closer than this (max-norm) are the same point.
inline constexpr double kPointResolution = 1e-12;

// Planar coordinate; in dimension 1 the second entry is always 0.
using Coord = std::array<double, 2>;

/// Nonempty finite subset of R^d, d in {1, 2}.
/// Stored sorted lexicographically with duplicates merged at kPointResolution.
class FinitePointSet {
 public:
  FinitePointSet(int dim, std::vector<Coord> points);
  static FinitePointSet of_reals(const std::vector<double>& xs);
  static FinitePointSet of_reals(std::initializer_list<double> xs) {
    return of_reals(std::vector<double>(xs));
  }

  int dim() const { return dim_; }
  const std::vector<Coord>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  friend bool operator==(const FinitePointSet&, const FinitePointSet&) = default;

 private:
  int dim_;
  std::vector<Coord> points_;
};

/// Nonempty convex compact polytope in R^d, d in {1, 2}.
///
/// d = 1: vertices are {lo, hi} (one vertex when degenerate).
/// d = 2: counterclockwise vertex cycle with no three collinear, rotated to
/// start at the lexicographic minimum. Segments have two vertices, points one.
class ConvexPolytope {
 public:
  static ConvexPolytope interval(double lo, double hi);
  static ConvexPolytope point(int dim, Coord c);
  // Convex hull of arbitrary points.
  static ConvexPolytope hull_of(int dim, std::vector<Coord> points);
  // Vertices must already be in convex position (any rotation, CCW).
  static ConvexPolytope from_vertices(int dim, std::vector<Coord> vertices);

  int dim() const { return dim_; }
  const std::vector<Coord>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool is_point() const { return vertices_.size() == 1; }
  double lo() const;  // dimension 1 only
  double hi() const;  // dimension 1 only

  friend bool operator==(const ConvexPolytope&, const ConvexPolytope&) = default;

 private:
  ConvexPolytope(int dim, std::vector<Coord> vertices) : dim_(dim), vertices_(std::move(vertices)) {}
  int dim_;
  std::vector<Coord> vertices_;
};

/// Raised when selection enumeration would exceed its cap and pruning is off.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MinkowskiOptions {
  std::size_t cap = 100000;
  double prune_resolution = 0.0;  // 0 disables grid-snap pruning
};

ConvexPolytope convex_hull(const FinitePointSet& a);

ConvexPolytope translate(const ConvexPolytope& p, const Coord& shift);
ConvexPolytope scale(const ConvexPolytope& p, double factor);
// Plain Minkowski sum P + Q by merging edge sequences.
ConvexPolytope minkowski_sum(const ConvexPolytope& p, const ConvexPolytope& q);

/// Scaled Minkowski sum `sum_i w_i P_i`. Output vertex count never exceeds
/// the total input vertex count.
ConvexPolytope polytope_combine(const WeightedCombination<ConvexPolytope>& wc);
ConvexPolytope polytope_combine(const std::vector<double>& weights,
                                const std::vector<ConvexPolytope>& polys);

/// All selections `{sum_i w_i u_i : u_i in A_i}`, accumulated one term at a
/// time with duplicate merging. When a partial product would exceed
/// `opts.cap` the partial set is grid-snapped to `opts.prune_resolution`
/// (each snap moves points by at most resolution * sqrt(d) / 2, accumulated
/// into `*error_bound`), or CapacityError is thrown if pruning is off.
FinitePointSet minkowski_combine(const WeightedCombination<FinitePointSet>& wc,
                                 const MinkowskiOptions& opts = {},
                                 double* error_bound = nullptr);
FinitePointSet minkowski_combine(const std::vector<double>& weights,
                                 const std::vector<FinitePointSet>& sets,
                                 const MinkowskiOptions& opts = {},
                                 double* error_bound = nullptr);

double point_distance(const Coord& a, const Coord& b);
double point_polytope_distance(const Coord& x, const ConvexPolytope& p);
bool contains(const ConvexPolytope& p, const Coord& x, double tol = 1e-12);

double hausdorff_distance(const FinitePointSet& a, const FinitePointSet& b);
double hausdorff_distance(const ConvexPolytope& a, const ConvexPolytope& b);
double hausdorff_distance(const FinitePointSet& a, const ConvexPolytope& b);
double hausdorff_distance(const ConvexPolytope& a, const FinitePointSet& b);

/// sup over x in P of the distance from x to the finite set A.
double farthest_distance(const ConvexPolytope& p, const FinitePointSet& a);

struct Interval {
  double lo;
  double hi;
};

// Sorted, disjoint cover of the union.
std::vector<Interval> merge_intervals(std::vector<Interval> parts);
double hausdorff_distance(const std::vector<Interval>& x, const std::vector<Interval>& y);

// Shortest text that reads back to the same double.
std::string format_real(double x);
std::string format_coord(const Coord& c, int dim);

}  // namespace ccspace
