#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ccspace {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream, index). Trial results depend only on
// these three numbers, never on scheduling order.
Rng stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

// Portable uniform draws (the std distributions are implementation-defined).
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t n);

// Strictly positive weights summing to one, bounded away from zero.
std::vector<double> random_simplex_weights(Rng& rng, std::size_t n);

}  // namespace ccspace
