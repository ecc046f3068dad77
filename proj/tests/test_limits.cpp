#include <doctest.h>

#include "ccspace/limits.hpp"
#include "oracles.hpp"

using namespace ccspace;

namespace {

CompactSet fin(std::initializer_list<double> xs) { return CompactSet::finite(FinitePointSet::of_reals(xs)); }
CompactSet interval(double a, double b) { return CompactSet::convex(ConvexPolytope::interval(a, b)); }

}  // namespace

TEST_CASE("law of large numbers") {
  const EuclideanSpace e(1);
  const PointLaw<EuclideanPoint> bern{{make_point({0}), make_point({1})}, {0.5, 0.5}};
  const auto tr = slln_run(e, bern, 10000, 7, TrackMode::convex);
  CHECK(tr.final_distance() < 0.05);
  CHECK(tr.verdict);

  // The trace is |running mean - 1/2| of the same draws.
  Rng rng = stream_rng(7, 0x5eed51, 0);
  double sum = 0.0;
  for (std::size_t n = 1; n <= 200; ++n) {
    sum += uniform01(rng) < 0.5 ? 0.0 : 1.0;
    CHECK(tr.distances[n - 1] == doctest::Approx(std::abs(sum / static_cast<double>(n) - 0.5)).epsilon(1e-12));
  }

  const CompactSetSpace s(1);
  const PointLaw<CompactSet> law{{interval(0, 1), fin({2})}, {0.5, 0.5}};
  const auto ts = slln_run(s, law, 10000, 7, TrackMode::convex);
  CHECK(ts.final_distance() < 0.05);

  const PointLaw<CompactSet> constant{{interval(1, 3)}, {1.0}};
  for (double d : slln_run(s, constant, 50, 1, TrackMode::convex).distances) CHECK(d < 1e-12);

  // The raw track on finite sets grows until the cap stops it.
  const CompactSetSpace tight(1, {64, 0.0});
  const PointLaw<CompactSet> spread{{fin({0, 1}), fin({0, 3.3})}, {0.5, 0.5}};
  CHECK_THROWS_AS(slln_run(tight, spread, 500, 1, TrackMode::raw), CapacityError);
}

TEST_CASE("ergodic theorem on a rotation") {
  CHECK_THROWS_AS(CyclicTransformation(10, 4), std::invalid_argument);
  const CyclicTransformation tau(1000, 7);
  CHECK(tau(999) == 6);

  const CompactSetSpace s(1);
  RandomElement<CompactSet> x;
  for (std::size_t w = 0; w < 1000; ++w) x.values.push_back(interval(w % 13, w % 13 + (w % 5) * 0.25));
  const auto res = ergodic_run(s, tau, x, 1000);
  CHECK(res.orbit_defect <= 1e-12);
  CHECK(res.trace.final_distance() <= 1e-12);
  CHECK(res.non_divergent);
  CHECK(res.trace.verdict);

  RandomElement<CompactSet> c{std::vector<CompactSet>(1000, interval(2, 5))};
  for (double d : ergodic_run(s, tau, c, 20).trace.distances) CHECK(d < 1e-12);
}

TEST_CASE("convexification rate") {
  const CompactSetSpace s(1);
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= 64; ++n) ns.push_back(n);
  const auto tr = convexification_rate(s, fin({0, 1}), ns);
  // Dense sample of [0,1] at spacing far below 1/(2n).
  std::vector<ccspace::Coord> unit;
  for (int k = 0; k <= 200000; ++k) unit.push_back({k / 200000.0, 0});
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<ccspace::Coord> grid;
    for (std::size_t k = 0; k <= ns[i]; ++k) grid.push_back({static_cast<double>(k) / static_cast<double>(ns[i]), 0});
    CHECK(tr.distances[i] == doctest::Approx(0.5 / static_cast<double>(ns[i])).epsilon(1e-12));
    if (ns[i] % 16 == 1) CHECK(std::abs(tr.distances[i] - oracle::hausdorff_points(grid, unit)) < 1e-5);
  }
  CHECK(tr.verdict);

  const auto tp = convexification_rate(PowerSpace(1, 2.0), make_point({1}), {1, 2, 4, 8});
  for (std::size_t i = 0; i < 4; ++i) CHECK(tp.distances[i] == doctest::Approx(1.0 / static_cast<double>(tp.ns[i])));

  for (double d : convexification_rate(EuclideanSpace(2), make_point({1, 2}), {1, 2, 3}).distances) CHECK(d == 0.0);
  CHECK_THROWS_AS(convexification_rate(s, fin({0}), {2, 1}), std::invalid_argument);
}

TEST_CASE("compact family") {
  const CompactSetSpace s(1);
  const auto tr = compact_family_run(s, {fin({0, 1}), fin({2})}, 12);
  CHECK(tr.strictly_decreasing());
  CHECK(tr.verdict);
  // Raw average by brute-force enumeration.
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<std::vector<ccspace::Coord>> sets;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 2 == 0) {
        sets.push_back({{0, 0}, {1, 0}});
        hi += 1.0 / static_cast<double>(n);
      } else {
        sets.push_back({{2, 0}});
        lo += 2.0 / static_cast<double>(n);
        hi += 2.0 / static_cast<double>(n);
      }
    }
    const auto raw = oracle::selections(std::vector<double>(n, 1.0 / static_cast<double>(n)), sets);
    std::vector<ccspace::Coord> hull;
    for (int k = 0; k <= 100000; ++k) hull.push_back({lo + (hi - lo) * k / 100000.0, 0});
    CHECK(std::abs(tr.distances[n - 1] - oracle::hausdorff_points(raw, hull)) < 1e-4);
  }

  for (double d : compact_family_run(s, {interval(0, 1), interval(3, 4)}, 6).distances) CHECK(d < 1e-12);

  const auto single = compact_family_run(s, {fin({0, 1})}, 10);
  const auto rate = convexification_rate(s, fin({0, 1}), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  for (std::size_t i = 0; i < 10; ++i) CHECK(single.distances[i] == doctest::Approx(rate.distances[i]));
}

TEST_CASE("weight perturbation bound") {
  const CompactSetSpace s(1);
  const auto r = weight_perturbation_check(s, {0.5, 0.5}, {0.25, 0.75}, {fin({0, 2}), fin({4})}, fin({0}), 1e-12);
  // K x = ([0,2], {4}): lhs = d([2,3], [3,3.5]) = 1, rhs = 0.25*2 + 0.25*4 = 1.5.
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(1.5));
  CHECK(r.holds);

  const auto same = weight_perturbation_check(s, {0.3, 0.7}, {0.3, 0.7}, {fin({0, 2}), fin({4})}, fin({1}), 0.0);
  CHECK(same.lhs == 0.0);
  CHECK(same.holds);

  const EuclideanSpace e(2);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = stream_rng(51, 0, t);
    const auto a = random_simplex_weights(rng, 3), b = random_simplex_weights(rng, 3);
    std::vector<EuclideanPoint> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(e.sample(rng));
    CHECK(weight_perturbation_check(e, a, b, xs, e.sample(rng), 1e-12).holds);
  }
}

TEST_CASE("weight bound needs convex points") {
  const auto r = weight_bound_counterexample();
  CHECK(r.lhs == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(0.60).epsilon(1e-15));
  CHECK_FALSE(r.holds);
  // Both sides are homogeneous of degree one.
  const auto scaled = weight_bound_counterexample(2.0, -1.0);
  CHECK(scaled.lhs == doctest::Approx(1.28));
  CHECK(scaled.rhs == doctest::Approx(1.20));
  CHECK_FALSE(scaled.holds);

  const PowerSpace p(1, 2.0);
  const auto eq = weight_bound_sides(p, {0.8, 0.2}, {0.8, 0.2}, {make_point({1}), make_point({-0.5})}, make_point({0}),
                                     false, 0.0);
  CHECK(eq.lhs == 0.0);
  CHECK(eq.holds);
}

TEST_CASE("rational weight jensen") {
  const EuclideanSpace e(1);
  const auto phi = ConvexFunctional<EuclideanSpace>::distance_to(e, make_point({0}));
  const auto r = rational_jensen_check(e, phi, {1, 2}, {make_point({-1}), make_point({1})}, 1e-12);
  CHECK(r.lhs == doctest::Approx(1.0 / 3));
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.holds);

  const auto one = rational_jensen_check(e, phi, {3}, {make_point({2})}, 1e-12);
  CHECK(one.lhs == one.rhs);

  const CompactSetSpace s(1);
  const auto dist0 = ConvexFunctional<CompactSetSpace>::distance_to(s, fin({0}));
  const auto h = rational_jensen_check(s, dist0, {1, 3}, {interval(0, 1), interval(2, 3)}, 1e-12);
  // [1/4,[0,1]; 3/4,[2,3]] = [1.5, 2.5]; lhs 2.5, rhs 1/4 + 9/4.
  CHECK(h.lhs == doctest::Approx(2.5));
  CHECK(h.rhs == doctest::Approx(2.5));
  CHECK(h.replication_defect < 1e-12);
  CHECK(h.holds);

  CHECK_THROWS_AS(rational_jensen_check(s, dist0, {1}, {fin({0, 1})}, 1e-12), std::invalid_argument);
}
