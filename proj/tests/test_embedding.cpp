#include <doctest.h>

#include <cmath>

#include "ccspace/embedding.hpp"
#include "ccspace/probability.hpp"
#include "oracles.hpp"

using namespace ccspace;

namespace {

ConvexPolytope random_polygon(Rng& rng) {
  std::vector<Coord> pts;
  const std::size_t n = 1 + uniform_index(rng, 7);
  for (std::size_t i = 0; i < n; ++i) pts.push_back({uniform(rng, -3, 3), uniform(rng, -3, 3)});
  return ConvexPolytope::hull_of(2, pts);
}

}  // namespace

TEST_CASE("support function") {
  const auto sq = ConvexPolytope::hull_of(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(support_function(sq, {1, 0}) == 1.0);
  CHECK(support_function(ConvexPolytope::interval(2, 5), {1, 0}) == 5.0);
  CHECK(support_function(ConvexPolytope::interval(2, 5), {-1, 0}) == -2.0);
  const double r = 1 / std::sqrt(2.0);
  CHECK(support_function(ConvexPolytope::hull_of(2, {{0, 0}, {2, 0}, {0, 2}}), {r, r}) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("embedding vectors") {
  const auto dirs1 = direction_set(1);
  const auto v = embed(ConvexPolytope::interval(0, 1), dirs1);
  REQUIRE(v.values.size() == 2);
  CHECK(v.values[0] == 1.0);
  CHECK(v.values[1] == 0.0);

  const auto dirs = direction_set(2, 16);
  const auto pt = embed(ConvexPolytope::point(2, {2, -1}), dirs);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    CHECK(pt.values[i] == doctest::Approx(2 * dirs[i][0] - dirs[i][1]));
}

TEST_CASE("embedded distance") {
  const auto sq = ConvexPolytope::hull_of(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(embedded_distance(sq, translate(sq, {2, 0})) == doctest::Approx(2.0));
  CHECK(embedded_distance(sq, sq) == 0.0);
  CHECK(embedded_distance(ConvexPolytope::interval(0, 1), ConvexPolytope::interval(0, 3)) == 2.0);

  // Isometry against the vertex oracle and against a dense direction grid.
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng = stream_rng(41, 0, t);
    const auto p = random_polygon(rng), q = random_polygon(rng);
    const double d = embedded_distance(p, q);
    CHECK(d == doctest::Approx(oracle::hausdorff_convex(p.vertices(), q.vertices())).epsilon(1e-12));
    double grid = 0.0;
    for (int k = 0; k < 4096; ++k) {
      const double a = 2 * M_PI * k / 4096;
      const Coord u{std::cos(a), std::sin(a)};
      grid = std::max(grid, std::abs(support_function(p, u) - support_function(q, u)));
    }
    // h_P - h_Q is Lipschitz in the angle with constant at most the sum of the radii.
    double radius = 0.0;
    for (const auto* poly : {&p, &q})
      for (const auto& v : poly->vertices()) radius = std::max(radius, std::hypot(v[0], v[1]));
    CHECK(grid <= d + 1e-12);
    CHECK(d - grid <= 2 * radius * M_PI / 4096);
  }
}

TEST_CASE("embedding is affine") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = stream_rng(42, 0, t);
    const auto p = random_polygon(rng), q = random_polygon(rng);
    const double l = uniform01(rng);
    const auto dirs = direction_set(2, 64, {p, q});
    const auto lhs = embed(polytope_combine({l, 1 - l}, {p, q}), dirs);
    CHECK(sup_norm_distance(lhs, affine_mix(l, embed(p, dirs), embed(q, dirs))) <= 1e-12);
  }
}

TEST_CASE("affine functionals commute with expectation") {
  const CompactSetSpace s(1);
  const auto omega = FiniteSampleSpace::uniform(2);
  RandomElement<CompactSet> x{{CompactSet::convex(ConvexPolytope::interval(0, 1)),
                               CompactSet::convex(ConvexPolytope::interval(2, 4))}};
  const auto [a, b] = affine_expectation_check(AffineFunctional(1, {1, 0}), s, omega, x);
  CHECK(a == doctest::Approx(2.5));
  CHECK(b == doctest::Approx(2.5));
  const auto [c, d] = affine_expectation_check(AffineFunctional(1, {-1, 0}), s, omega, x);
  CHECK(c == doctest::Approx(-1.0));
  CHECK(d == doctest::Approx(-1.0));

  RandomElement<CompactSet> constant{{x.values[1], x.values[1]}};
  const auto [e, f] = affine_expectation_check(AffineFunctional(1, {1, 0}), s, omega, constant);
  CHECK(e == 4.0);
  CHECK(f == 4.0);

  CHECK_THROWS_AS(AffineFunctional(2, {1, 1}), std::invalid_argument);
}
