#include "ccspace/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ccspace/geometry.hpp"

namespace ccspace {

namespace {
constexpr double kAtomResolution = 1e-12;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs) {
  if (atoms.empty()) throw std::invalid_argument("distribution needs at least one atom");
  if (atoms.size() != probs.size()) throw std::invalid_argument("atoms and probs differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw std::invalid_argument("atoms must be finite");
    if (!(probs[i] > 0.0) || !std::isfinite(probs[i]))
      throw std::invalid_argument("probabilities must be positive");
    if (i > 0 && !(atoms[i] > atoms[i - 1]))
      throw std::invalid_argument("atoms must be strictly increasing");
    total += probs[i];
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance)
    throw std::invalid_argument("probabilities must sum to 1");
  atoms_ = std::move(atoms);
  probs_ = std::move(probs);
}

DiscreteDistribution DiscreteDistribution::dirac(double c) { return DiscreteDistribution({c}, {1.0}); }

DiscreteDistribution DiscreteDistribution::bernoulli(double p, double lo, double hi) {
  if (p <= 0.0) return dirac(lo);
  if (p >= 1.0) return dirac(hi);
  return DiscreteDistribution({lo, hi}, {1.0 - p, p});
}

DiscreteDistribution merge_atoms(std::vector<std::pair<double, double>> mass) {
  if (mass.empty()) throw std::invalid_argument("distribution needs at least one atom");
  std::sort(mass.begin(), mass.end());
  std::vector<double> atoms, probs;
  atoms.reserve(mass.size());
  probs.reserve(mass.size());
  double total = 0.0;
  for (const auto& [x, p] : mass) {
    if (p <= 0.0) continue;
    total += p;
    if (!atoms.empty() && x - atoms.back() <= kAtomResolution) {
      probs.back() += p;
    } else {
      atoms.push_back(x);
      probs.push_back(p);
    }
  }
  if (atoms.empty()) throw std::invalid_argument("distribution has no mass");
  for (auto& p : probs) p /= total;
  return DiscreteDistribution(DiscreteDistribution::Trusted{}, std::move(atoms), std::move(probs));
}

DiscreteDistribution quantile_resample(const DiscreteDistribution& f, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("quantile_resample needs at least one bin");
  if (f.size() <= bins) return f;
  const double bin_mass = 1.0 / static_cast<double>(bins);
  std::vector<std::pair<double, double>> out;
  out.reserve(bins);
  std::size_t i = 0;
  double left = f.probs()[0];  // unassigned mass of atom i
  for (std::size_t b = 0; b < bins; ++b) {
    double need = bin_mass;
    double moment = 0.0;
    while (need > 0.0 && i < f.size()) {
      const double take = std::min(need, left);
      moment += take * f.atoms()[i];
      need -= take;
      left -= take;
      if (left <= 0.0) {
        ++i;
        if (i < f.size()) left = f.probs()[i];
      }
    }
    const double got = bin_mass - need;
    if (got > 0.0) out.emplace_back(moment / got, got);
  }
  return merge_atoms(std::move(out));
}

DiscreteDistribution scaled_convolution_combine(const WeightedCombination<DiscreteDistribution>& wc,
                                                std::size_t atom_cap, double* w1_error_bound) {
  if (atom_cap == 0) throw std::invalid_argument("atom_cap must be positive");
  double bound = 0.0;
  std::vector<std::pair<double, double>> mass;
  DiscreteDistribution acc = DiscreteDistribution::dirac(0.0);
  for (const auto& term : wc) {
    mass.clear();
    mass.reserve(acc.size() * term.point.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < term.point.size(); ++j)
        mass.emplace_back(acc.atoms()[i] + term.weight * term.point.atoms()[j],
                          acc.probs()[i] * term.point.probs()[j]);
    acc = merge_atoms(std::move(mass));
    if (acc.size() > atom_cap) {
      bound += (acc.max() - acc.min()) / static_cast<double>(atom_cap);
      acc = quantile_resample(acc, atom_cap);
    }
  }
  if (w1_error_bound) *w1_error_bound += bound;
  return acc;
}

DiscreteDistribution scaled_convolution_combine(const std::vector<double>& weights,
                                                const std::vector<DiscreteDistribution>& dists,
                                                std::size_t atom_cap, double* w1_error_bound) {
  return scaled_convolution_combine(WeightedCombination<DiscreteDistribution>(weights, dists),
                                    atom_cap, w1_error_bound);
}

double wasserstein1(const DiscreteDistribution& f, const DiscreteDistribution& g) {
  std::vector<double> ts;
  ts.reserve(f.size() + g.size());
  std::merge(f.atoms().begin(), f.atoms().end(), g.atoms().begin(), g.atoms().end(),
             std::back_inserter(ts));
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  double cf = 0.0, cg = 0.0, total = 0.0;
  std::size_t i = 0, j = 0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    while (i < f.size() && f.atoms()[i] <= ts[k]) cf += f.probs()[i++];
    while (j < g.size() && g.atoms()[j] <= ts[k]) cg += g.probs()[j++];
    total += std::abs(cf - cg) * (ts[k + 1] - ts[k]);
  }
  return total;
}

double distribution_mean(const DiscreteDistribution& f) {
  return std::inner_product(f.atoms().begin(), f.atoms().end(), f.probs().begin(), 0.0);
}

std::string format_distribution(const DiscreteDistribution& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ' ';
    out += format_real(f.atoms()[i]) + ':' + format_real(f.probs()[i]);
  }
  return out;
}

}  // namespace ccspace
