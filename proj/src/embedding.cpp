#include "ccspace/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ccspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(const Coord& v) {
  const double a = std::atan2(v[1], v[0]);
  return a < 0.0 ? a + kTwoPi : a;
}

// Outward normal angles of a counterclockwise polygon (none for a point).
void normal_angles(const ConvexPolytope& p, std::vector<double>& out) {
  const auto& v = p.vertices();
  if (v.size() < 2) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Coord& a = v[i];
    const Coord& b = v[(i + 1) % v.size()];
    out.push_back(angle_of({b[1] - a[1], a[0] - b[0]}));
  }
}

const Coord& argmax_vertex(const ConvexPolytope& p, const Coord& u) {
  const auto& v = p.vertices();
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i][0] * u[0] + v[i][1] * u[1] > v[best][0] * u[0] + v[best][1] * u[1]) best = i;
  return v[best];
}

Coord unit(double t) { return {std::cos(t), std::sin(t)}; }

}  // namespace

double support_function(const ConvexPolytope& p, const Coord& v) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : p.vertices()) best = std::max(best, c[0] * v[0] + c[1] * v[1]);
  return best;
}

std::vector<Coord> direction_set(int dim, std::size_t grid, const std::vector<ConvexPolytope>& polys) {
  if (dim == 1) return {{1.0, 0.0}, {-1.0, 0.0}};
  if (dim != 2) throw std::invalid_argument("direction sets exist for dimension 1 or 2");
  std::vector<double> angles;
  for (std::size_t k = 0; k < grid; ++k) angles.push_back(kTwoPi * static_cast<double>(k) / static_cast<double>(grid));
  for (const auto& p : polys) normal_angles(p, angles);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a <= 1e-15; }),
               angles.end());
  std::vector<Coord> dirs;
  for (double t : angles) dirs.push_back(unit(t));
  return dirs;
}

SupportVector embed(const ConvexPolytope& p, const std::vector<Coord>& directions) {
  SupportVector out;
  out.directions = directions;
  for (const auto& v : directions) out.values.push_back(support_function(p, v));
  return out;
}

SupportVector affine_mix(double lambda, const SupportVector& a, const SupportVector& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("support vectors differ in length");
  SupportVector out;
  out.directions = a.directions;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out.values.push_back(lambda * a.values[i] + (1.0 - lambda) * b.values[i]);
  return out;
}

double sup_norm_distance(const SupportVector& a, const SupportVector& b) {
  if (a.values.size() != b.values.size()) throw std::invalid_argument("support vectors differ in length");
  double best = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) best = std::max(best, std::abs(a.values[i] - b.values[i]));
  return best;
}

double embedded_distance(const ConvexPolytope& p, const ConvexPolytope& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dimension mismatch");
  if (p.dim() == 1) return std::max(std::abs(p.hi() - q.hi()), std::abs(p.lo() - q.lo()));

  std::vector<double> cuts{0.0};
  normal_angles(p, cuts);
  normal_angles(q, cuts);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(kTwoPi);

  double best = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double t0 = cuts[i], t1 = cuts[i + 1];
    if (t1 - t0 <= 0.0) continue;
    const Coord mid = unit(0.5 * (t0 + t1));
    const Coord& a = argmax_vertex(p, mid);
    const Coord& b = argmax_vertex(q, mid);
    const Coord d{a[0] - b[0], a[1] - b[1]};
    auto f = [&](double t) { return std::abs(d[0] * std::cos(t) + d[1] * std::sin(t)); };
    best = std::max({best, f(t0), f(t1)});
    // |<d, u_t>| peaks at t = angle(d) and angle(d) + pi.
    if (d[0] != 0.0 || d[1] != 0.0) {
      for (double peak : {angle_of(d), std::fmod(angle_of(d) + std::numbers::pi, kTwoPi)})
        if (peak > t0 && peak < t1) best = std::max(best, std::hypot(d[0], d[1]));
    }
  }
  return best;
}

AffineFunctional::AffineFunctional(int dim, Coord direction) : dim_(dim), v_(direction) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("affine functionals exist for dimension 1 or 2");
  if (dim == 1 && v_[1] != 0.0) throw std::invalid_argument("direction has wrong dimension");
  if (std::abs(std::hypot(v_[0], v_[1]) - 1.0) > 1e-12) throw std::invalid_argument("direction must be a unit vector");
}

double AffineFunctional::operator()(const CompactSetSpace& space, const CompactSet& a) const {
  if (space.dimension() != dim_) throw std::invalid_argument("dimension mismatch");
  return space.support(a, std::span<const double>(v_.data(), static_cast<std::size_t>(dim_)));
}

std::pair<double, double> affine_expectation_check(const AffineFunctional& f, const CompactSetSpace& space,
                                                   const FiniteSampleSpace& omega,
                                                   const RandomElement<CompactSet>& x) {
  const double lhs = f(space, expectation(space, omega, x));
  double rhs = 0.0;
  for (std::size_t w = 0; w < x.size(); ++w) rhs += omega.prob(w) * f(space, space.convexify_exact(x(w)));
  return {lhs, rhs};
}

}  // namespace ccspace
