#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccspace/space.hpp"

namespace ccspace {

/// Raised when the generic convexification iterates fail to settle.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_gap)
      : std::runtime_error(what), last_gap_(last_gap) {}
  double last_gap() const { return last_gap_; }

 private:
  double last_gap_;
};

struct ConvexifyOptions {
  double tol = 1e-12;
  int max_doublings = 60;
};

template <CCSpace S>
typename S::Point combine(const S& space, const WeightedCombination<typename S::Point>& wc) {
  return space.combine(wc);
}

template <CCSpace S>
typename S::Point combine(const S& space, const std::vector<double>& weights,
                          const std::vector<typename S::Point>& points) {
  return space.combine(WeightedCombination<typename S::Point>(weights, points));
}

template <CCSpace S>
typename S::Point midpoint(const S& space, const typename S::Point& x, const typename S::Point& y) {
  return space.combine(WeightedCombination<typename S::Point>::pair(0.5, x, y));
}

/// `[1/n, x]_{i=1..n}` evaluated directly as an n-term combination.
template <CCSpace S>
typename S::Point self_average(const S& space, const typename S::Point& x, std::size_t n) {
  return space.combine(WeightedCombination<typename S::Point>::uniform(x, n));
}

/// Generic convexification by successive doubling.
///
/// Iterate m holds `[2^-m, x]_{i=1..2^m}`, obtained from iterate m-1 as its
/// self-midpoint (flattening makes the two equal). Returns the first iterate
/// whose gap to its successor drops below `tol`.
template <CCSpace S>
typename S::Point convexify_iterative(const S& space, const typename S::Point& x, double tol,
                                      int max_doublings) {
  if (!(tol > 0.0)) throw std::invalid_argument("convexify: tol must be positive");
  if (max_doublings < 0) throw std::invalid_argument("convexify: max_doublings must be >= 0");
  typename S::Point current = x;
  double gap = 0.0;
  for (int m = 0; m < max_doublings; ++m) {
    typename S::Point next = midpoint(space, current, current);
    gap = space.distance(current, next);
    if (gap < tol) return current;
    current = std::move(next);
  }
  std::ostringstream msg;
  msg << "convexification did not converge within " << max_doublings
      << " doublings (last gap " << gap << ")";
  throw ConvergenceError(msg.str(), gap);
}

/// Convexification operator K: the closed form when the space provides one,
/// otherwise the doubling iteration.
template <CCSpace S>
typename S::Point convexify(const S& space, const typename S::Point& x,
                            const ConvexifyOptions& opts = {}) {
  if constexpr (HasExactConvexify<S>) {
    (void)opts;
    return space.convexify_exact(x);
  } else {
    return convexify_iterative(space, x, opts.tol, opts.max_doublings);
  }
}

template <CCSpace S>
bool is_convex_point(const S& space, const typename S::Point& x, double tol) {
  return space.distance(convexify(space, x), x) <= tol;
}

}  // namespace ccspace
