#pragma once

#include <cmath>
#include <string>

#include "ccspace/spaces.hpp"

// The real line with combine = sum w_i x_i + 0.1. Every law that pins down a
// single-term or repeated-point combination breaks.
struct MutantSpace {
  using Point = ccspace::EuclideanPoint;

  std::string name() const { return "mutant"; }
  double distance(const Point& a, const Point& b) const { return std::abs(a.coords[0] - b.coords[0]); }
  Point combine(const ccspace::WeightedCombination<Point>& wc) const {
    double s = 0.1;
    for (const auto& t : wc) s += t.weight * t.point.coords[0];
    return Point{{s}};
  }
  Point sample(ccspace::Rng& rng) const { return Point{{ccspace::uniform(rng, -3, 3)}}; }
  std::string format(const Point& p) const { return ccspace::format_real(p.coords[0]); }
};
