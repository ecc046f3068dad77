#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ccspace/combination.hpp"

namespace ccspace {

/// Finitely supported probability law on R.
/// Atoms strictly increasing (merged at 1e-12), probabilities positive and
/// summing to one within 1e-12.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs);
  static DiscreteDistribution dirac(double c);
  static DiscreteDistribution bernoulli(double p, double lo = 0.0, double hi = 1.0);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return atoms_.size(); }
  double min() const { return atoms_.front(); }
  double max() const { return atoms_.back(); }

 private:
  struct Trusted {};
  DiscreteDistribution(Trusted, std::vector<double> atoms, std::vector<double> probs)
      : atoms_(std::move(atoms)), probs_(std::move(probs)) {}
  friend DiscreteDistribution merge_atoms(std::vector<std::pair<double, double>> mass);

  std::vector<double> atoms_;
  std::vector<double> probs_;
};

// Sort (atom, prob) pairs, merge atoms within 1e-12 and rescale the total to 1.
DiscreteDistribution merge_atoms(std::vector<std::pair<double, double>> mass);

/// Law of sum_i w_i X_i with independent X_i ~ F_i. Atoms come from the
/// product enumeration; whenever the count exceeds `atom_cap` the law is
/// quantile-resampled to `atom_cap` equal-mass bins placed at their
/// conditional means (mean preserved, W1 error <= (max - min) / atom_cap).
DiscreteDistribution scaled_convolution_combine(const WeightedCombination<DiscreteDistribution>& wc,
                                                std::size_t atom_cap = 512,
                                                double* w1_error_bound = nullptr);
DiscreteDistribution scaled_convolution_combine(const std::vector<double>& weights,
                                                const std::vector<DiscreteDistribution>& dists,
                                                std::size_t atom_cap = 512,
                                                double* w1_error_bound = nullptr);

DiscreteDistribution quantile_resample(const DiscreteDistribution& f, std::size_t bins);

/// Exact integral of |F(t) - G(t)| over the merged breakpoints.
double wasserstein1(const DiscreteDistribution& f, const DiscreteDistribution& g);

double distribution_mean(const DiscreteDistribution& f);

std::string format_distribution(const DiscreteDistribution& f);

}  // namespace ccspace
