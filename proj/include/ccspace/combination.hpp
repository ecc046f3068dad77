#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ccspace {

inline constexpr double kWeightSumTolerance = 1e-12;

template <class Point>
struct Term {
  double weight;
  Point point;
};

/// Argument of an n-ary convex combination `[w_1, u_1; ...; w_n, u_n]`.
///
/// Zero-weight terms are dropped on construction, so every stored weight is
/// strictly positive. The weights must already sum to one within
/// kWeightSumTolerance; they are never renormalized.
template <class Point>
class WeightedCombination {
 public:
  explicit WeightedCombination(std::vector<Term<Point>> terms) {
    double total = 0.0;
    for (const auto& t : terms) {
      if (!std::isfinite(t.weight) || t.weight < 0.0 || t.weight > 1.0 + kWeightSumTolerance) {
        std::ostringstream msg;
        msg << "weight " << t.weight << " outside [0, 1]";
        throw std::invalid_argument(msg.str());
      }
      total += t.weight;
    }
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "weights sum to " << total << ", expected 1";
      throw std::invalid_argument(msg.str());
    }
    terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (t.weight > 0.0) terms_.push_back(std::move(t));
    }
    if (terms_.empty()) throw std::invalid_argument("empty convex combination");
  }

  WeightedCombination(const std::vector<double>& weights, const std::vector<Point>& points)
      : WeightedCombination(zip(weights, points)) {}

  static WeightedCombination single(Point p) {
    return WeightedCombination(std::vector<Term<Point>>{{1.0, std::move(p)}});
  }

  // [lambda, a; 1 - lambda, b]
  static WeightedCombination pair(double lambda, Point a, Point b) {
    return WeightedCombination(
        std::vector<Term<Point>>{{lambda, std::move(a)}, {1.0 - lambda, std::move(b)}});
  }

  // [1/n, p]_{i=1..n}
  static WeightedCombination uniform(const Point& p, std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform combination needs n >= 1");
    std::vector<Term<Point>> terms(n, Term<Point>{1.0 / static_cast<double>(n), p});
    return WeightedCombination(std::move(terms));
  }

  const std::vector<Term<Point>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  std::vector<double> weights() const {
    std::vector<double> w;
    w.reserve(terms_.size());
    for (const auto& t : terms_) w.push_back(t.weight);
    return w;
  }

 private:
  static std::vector<Term<Point>> zip(const std::vector<double>& weights,
                                      const std::vector<Point>& points) {
    if (weights.size() != points.size())
      throw std::invalid_argument("weights and points differ in length");
    std::vector<Term<Point>> terms;
    terms.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) terms.push_back({weights[i], points[i]});
    return terms;
  }

  std::vector<Term<Point>> terms_;
};

}  // namespace ccspace
