#include <doctest.h>

#include "ccspace/core.hpp"
#include "ccspace/spaces.hpp"
#include "oracles.hpp"

using namespace ccspace;

namespace {

std::vector<double> oracle_atoms(const DiscreteDistribution& f) { return f.atoms(); }

}  // namespace

TEST_CASE("weighted combinations validate their weights") {
  using WC = WeightedCombination<double>;
  CHECK_THROWS_AS(WC({0.5, 0.6}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WC({-0.5, 1.5}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WC({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WC({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  const WC wc({0.0, 1.0}, {1.0, 2.0});
  CHECK(wc.size() == 1);
  CHECK(wc.terms()[0].point == 2.0);
}

TEST_CASE("euclidean space") {
  const EuclideanSpace e(2);
  CHECK(combine(e, {0.5, 0.5}, {make_point({0, 0}), make_point({2, 4})}) == make_point({1, 2}));
  CHECK(midpoint(e, make_point({0, 0}), make_point({2, 2})) == make_point({1, 1}));
  CHECK(convexify(e, make_point({3, -1})) == make_point({3, -1}));
  CHECK(e.distance(make_point({0, 0}), make_point({3, 4})) == 5.0);
  CHECK(e.parse(e.format(make_point({0.1, -2}))) == make_point({0.1, -2}));
  CHECK_THROWS(e.parse("1,2,3"));
  CHECK_THROWS_AS(EuclideanSpace(4), std::invalid_argument);
  CHECK(e.dense_point(0) == e.origin());
}

TEST_CASE("power space") {
  const PowerSpace p(1, 2.0);
  CHECK(combine(p, {0.8, 0.2}, {make_point({1}), make_point({-0.5})}).coords[0] == doctest::Approx(0.62));
  CHECK(midpoint(p, make_point({1}), make_point({3})).coords[0] == doctest::Approx(1.0));
  CHECK(convexify(p, make_point({5})) == make_point({0}));
  // The doubling iteration reaches the closed form.
  CHECK(p.distance(convexify_iterative(p, make_point({5}), 1e-12, 60), make_point({0})) < 1e-11);
  CHECK_THROWS_AS(PowerSpace(1, 1.0), std::invalid_argument);
}

TEST_CASE("compact set space in one dimension") {
  const CompactSetSpace s(1);
  auto fin = [](std::initializer_list<double> xs) { return CompactSet::finite(FinitePointSet::of_reals(xs)); };
  auto iv = [](double a, double b) { return CompactSet::convex(ConvexPolytope::interval(a, b)); };

  CHECK(s.distance(combine(s, {0.5, 0.5}, {fin({0, 1}), fin({2})}), fin({1, 1.5})) == 0.0);
  CHECK(s.distance(combine(s, {0.5, 0.5}, {fin({0, 1}), fin({0, 1})}), fin({0, 0.5, 1})) == 0.0);
  CHECK(s.distance(combine(s, {0.5, 0.5}, {iv(0, 2), iv(4, 4)}), iv(2, 3)) == 0.0);
  CHECK(s.distance(convexify(s, fin({0, 1})), iv(0, 1)) == 0.0);
  CHECK(s.distance(fin({0, 2}), fin({1})) == 1.0);

  // [1/n, {0,1}]^n = {k/n}, at Hausdorff distance 1/(2n) from [0,1].
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
    std::vector<double> grid;
    for (std::size_t k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) / static_cast<double>(n));
    const auto avg = self_average(s, fin({0, 1}), n);
    CHECK(s.distance(avg, CompactSet::finite(FinitePointSet::of_reals(grid))) < 1e-12);
    CHECK(s.distance(avg, iv(0, 1)) == doctest::Approx(0.5 / static_cast<double>(n)).epsilon(1e-12));
  }

  // Mixed offsets + body: {0, 3} + [0, 1] is two intervals.
  const auto mixed = combine(s, {0.5, 0.5}, {fin({0, 6}), iv(0, 2)});
  CHECK_FALSE(mixed.is_finite());
  CHECK_FALSE(mixed.is_convex());
  CHECK(s.distance(mixed, CompactSet::finite(FinitePointSet::of_reals({0, 1, 3, 4}))) == doctest::Approx(0.5));
  CHECK(s.distance(s.parse(s.format(mixed)), mixed) == 0.0);
}

TEST_CASE("compact set space in the plane") {
  const CompactSetSpace s(2);
  const auto sq = ConvexPolytope::hull_of(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto a = CompactSet::convex(sq), b = CompactSet::convex(translate(sq, {2, 0}));
  CHECK(s.distance(combine(s, {0.5, 0.5}, {a, b}), CompactSet::convex(translate(sq, {1, 0}))) < 1e-12);
  CHECK(s.distance(a, b) == doctest::Approx(2.0));

  const auto pts = CompactSet::finite(FinitePointSet(2, {{0, 0}, {1, 0}, {0, 1}}));
  CHECK(s.distance(convexify(s, pts), CompactSet::convex(ConvexPolytope::hull_of(2, {{0, 0}, {1, 0}, {0, 1}}))) ==
        0.0);
  CHECK(s.distance(s.parse(s.format(pts)), pts) == 0.0);
  CHECK(s.distance(s.parse("co 0,0 1,0 1,1 0,1"), a) == 0.0);

  // A general sum has no exact distance in the plane, only the bound.
  const auto general = combine(s, {0.5, 0.5}, {pts, a});
  CHECK_FALSE(s.distance_supported(general, pts));
  CHECK_THROWS_AS(s.distance(general, pts), std::domain_error);
  CHECK(equality_defect(s, general, general) == 0.0);
  CHECK_THROWS_AS(CompactSetSpace(3), std::invalid_argument);
}

TEST_CASE("distribution space") {
  const DistributionSpace s;
  const auto d0 = DiscreteDistribution::dirac(0), d1 = DiscreteDistribution::dirac(1);
  const auto bern = DiscreteDistribution::bernoulli(0.5);

  CHECK(s.distance(combine(s, {0.5, 0.5}, {d0, d1}), DiscreteDistribution::dirac(0.5)) == 0.0);
  const auto conv = combine(s, {0.5, 0.5}, {bern, bern});
  CHECK(conv.atoms() == std::vector<double>{0, 0.5, 1});
  CHECK(conv.probs()[0] == doctest::Approx(0.25));
  CHECK(conv.probs()[1] == doctest::Approx(0.5));
  CHECK(s.distance(combine(s, {1.0}, {bern}), bern) == 0.0);

  CHECK(s.distance(d0, d1) == 1.0);
  CHECK(s.distance(bern, DiscreteDistribution::dirac(0.5)) == doctest::Approx(0.5));
  CHECK(s.distance(bern, bern) == 0.0);
  CHECK(distribution_mean(bern) == 0.5);
  CHECK(distribution_mean(DiscreteDistribution({1, 2, 3}, {0.2, 0.3, 0.5})) == doctest::Approx(2.3));
  CHECK(s.distance(convexify(s, bern), DiscreteDistribution::dirac(0.5)) == 0.0);
  CHECK(s.distance(s.parse("0:0.5 1:0.5"), bern) == 0.0);
  CHECK_THROWS(s.parse("0:0.5 1:0.6"));
}

TEST_CASE("distribution metric and convolution against enumeration") {
  const DistributionSpace s(100000);
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng = stream_rng(21, 0, t);
    const auto f = s.sample(rng), g = s.sample(rng);
    CHECK(wasserstein1(f, g) ==
          doctest::Approx(oracle::w1_quantile(f.atoms(), f.probs(), g.atoms(), g.probs())).epsilon(1e-12));

    const auto w = random_simplex_weights(rng, 3);
    const auto h = s.sample(rng);
    const auto got = combine(s, w, {f, g, h});
    const auto want = oracle::product_law(w, {oracle_atoms(f), oracle_atoms(g), oracle_atoms(h)},
                                          {f.probs(), g.probs(), h.probs()});
    std::vector<double> xs, ps;
    for (const auto& [x, p] : want) {
      xs.push_back(x);
      ps.push_back(p);
    }
    CHECK(oracle::w1_quantile(got.atoms(), got.probs(), xs, ps) < 1e-8);
  }
}

TEST_CASE("quantile resampling keeps the mean and its error bound") {
  const DistributionSpace s(16);
  Rng rng = stream_rng(22, 0, 0);
  std::vector<DiscreteDistribution> fs;
  for (int i = 0; i < 4; ++i) fs.push_back(s.sample(rng));
  const std::vector<double> w(4, 0.25);
  double bound = 0.0;
  const auto coarse = scaled_convolution_combine(w, fs, 16, &bound);
  const auto fine = scaled_convolution_combine(w, fs, 1 << 20);
  CHECK(coarse.size() <= 16);
  CHECK(distribution_mean(coarse) == doctest::Approx(distribution_mean(fine)).epsilon(1e-12));
  CHECK(bound > 0.0);
  CHECK(wasserstein1(coarse, fine) <= bound + 1e-12);
}
