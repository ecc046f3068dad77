#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "ccspace/combination.hpp"
#include "ccspace/rng.hpp"

namespace ccspace {

/// Contract every convex-combination space instance satisfies.
///
/// A space is an immutable value holding its parameters. `combine` realises
/// the n-ary operation, `distance` the metric, and `sample` a seeded point
/// generator used by the property checkers. Samplers must avoid coincident
/// points so that metric-identity checks stay meaningful.
template <class S>
concept CCSpace = requires(const S& s, const typename S::Point& p,
                           const WeightedCombination<typename S::Point>& wc, Rng& rng) {
  typename S::Point;
  { s.distance(p, p) } -> std::convertible_to<double>;
  { s.combine(wc) } -> std::same_as<typename S::Point>;
  { s.sample(rng) } -> std::same_as<typename S::Point>;
  { s.format(p) } -> std::convertible_to<std::string>;
  { s.name() } -> std::convertible_to<std::string>;
};

/// Spaces that know their convexification operator in closed form.
template <class S>
concept HasExactConvexify = CCSpace<S> && requires(const S& s, const typename S::Point& p) {
  { s.convexify_exact(p) } -> std::same_as<typename S::Point>;
};

/// Spaces with a deterministic dense sequence u_0, u_1, ... (u_0 convex).
template <class S>
concept HasDenseSequence = CCSpace<S> && requires(const S& s, std::size_t i) {
  { s.dense_point(i) } -> std::same_as<typename S::Point>;
};

/// Spaces carrying support functionals h(., v) that are affine under combine.
template <class S>
concept HasSupport =
    CCSpace<S> && requires(const S& s, const typename S::Point& p, std::span<const double> v) {
      { s.support(p, v) } -> std::convertible_to<double>;
      { s.dimension() } -> std::convertible_to<int>;
    };

/// Spaces whose metric is only implemented for some pairs of representations.
template <class S>
concept HasPartialDistance = CCSpace<S> && requires(const S& s, const typename S::Point& p) {
  { s.distance_supported(p, p) } -> std::convertible_to<bool>;
};

/// Spaces that can bound the distance from above where it is not implemented.
template <class S>
concept HasDistanceBound = CCSpace<S> && requires(const S& s, const typename S::Point& p) {
  { s.distance_bound(p, p) } -> std::convertible_to<double>;
};

template <CCSpace S>
bool distance_supported(const S& space, const typename S::Point& a, const typename S::Point& b) {
  if constexpr (HasPartialDistance<S>) {
    return space.distance_supported(a, b);
  } else {
    (void)space, (void)a, (void)b;
    return true;
  }
}

}  // namespace ccspace

namespace ccspace {

/// How far apart two points that should coincide are: the exact distance
/// when available, otherwise the space's upper bound.
template <CCSpace S>
double equality_defect(const S& space, const typename S::Point& a, const typename S::Point& b) {
  if constexpr (HasDistanceBound<S>) {
    if (!distance_supported(space, a, b)) return space.distance_bound(a, b);
  }
  return space.distance(a, b);
}

}  // namespace ccspace
