#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ccspace/geometry.hpp"
#include "ccspace/probability.hpp"
#include "ccspace/spaces.hpp"

namespace ccspace {

/// h_P(v) = max over vertices of <vertex, v>.
double support_function(const ConvexPolytope& p, const Coord& v);

/// Support values of a polytope over a fixed list of unit directions.
struct SupportVector {
  std::vector<Coord> directions;
  std::vector<double> values;
};

/// d = 1: {+1, -1}. d = 2: `grid` equally spaced angles plus the outward
/// edge normals of the given polygons, sorted by angle and deduplicated.
std::vector<Coord> direction_set(int dim, std::size_t grid = 64,
                                 const std::vector<ConvexPolytope>& polys = {});

SupportVector embed(const ConvexPolytope& p, const std::vector<Coord>& directions);

// Componentwise lambda a + (1 - lambda) b, for vectors on the same directions.
SupportVector affine_mix(double lambda, const SupportVector& a, const SupportVector& b);
double sup_norm_distance(const SupportVector& a, const SupportVector& b);

/// sup over the unit sphere of |h_P(v) - h_Q(v)|, exact. In the plane the
/// maximizing vertices are fixed between consecutive edge-normal angles, so
/// the difference there is a cos t + b sin t and its maximum is closed form.
double embedded_distance(const ConvexPolytope& p, const ConvexPolytope& q);

/// f_v(A) = h_A(v) for a unit direction v; affine under combination.
class AffineFunctional {
 public:
  AffineFunctional(int dim, Coord direction);
  const Coord& direction() const { return v_; }
  double operator()(const ConvexPolytope& p) const { return support_function(p, v_); }
  double operator()(const CompactSetSpace& space, const CompactSet& a) const;

 private:
  int dim_;
  Coord v_;
};

/// (f(EX), E f(KX)) for a compact-set valued random element.
std::pair<double, double> affine_expectation_check(const AffineFunctional& f, const CompactSetSpace& space,
                                                   const FiniteSampleSpace& omega,
                                                   const RandomElement<CompactSet>& x);

}  // namespace ccspace
