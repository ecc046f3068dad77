#include "ccspace/limits.hpp"

#include <numeric>

namespace ccspace {

CyclicTransformation::CyclicTransformation(std::size_t modulus, std::size_t step) : n_(modulus), k_(step) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  if (std::gcd(step % modulus, modulus) != 1 && modulus != 1)
    throw std::invalid_argument("step must be coprime to the modulus (non-ergodic rotations are not supported)");
  k_ = step % modulus;
}

WeightBoundResult weight_bound_counterexample(double x, double y) {
  const PowerSpace space(1, 2.0);
  return weight_bound_sides(space, {0.8, 0.2}, {0.4, 0.6}, {make_point({x}), make_point({y})}, make_point({0.0}),
                            false, 0.0);
}

}  // namespace ccspace
