#include "ccspace/probability.hpp"

#include <numeric>

namespace ccspace {

FiniteSampleSpace::FiniteSampleSpace(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("sample space needs at least one atom");
  if (labels_.size() != probs_.size()) throw std::invalid_argument("labels and probs differ in length");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("atom probabilities must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance)
    throw std::invalid_argument("atom probabilities must sum to 1");
}

namespace {
std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}
}  // namespace

FiniteSampleSpace::FiniteSampleSpace(std::vector<double> probs)
    : FiniteSampleSpace(index_labels(probs.size()), probs) {}

FiniteSampleSpace FiniteSampleSpace::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample space needs at least one atom");
  return FiniteSampleSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ---------------------------------------------------------------------------

FinitePartition::FinitePartition(std::size_t n, std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)), block_of_(n, n) {
  if (n == 0) throw std::invalid_argument("partition needs at least one atom");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].empty()) throw std::invalid_argument("partition blocks must be nonempty");
    for (auto w : blocks_[b]) {
      if (w >= n) throw std::invalid_argument("partition block names an unknown atom");
      if (block_of_[w] != n) throw std::invalid_argument("partition blocks overlap");
      block_of_[w] = b;
    }
  }
  for (auto b : block_of_)
    if (b == n) throw std::invalid_argument("partition does not cover every atom");
}

FinitePartition FinitePartition::trivial(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return FinitePartition(n, {all});
}

FinitePartition FinitePartition::finest(std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t w = 0; w < n; ++w) blocks.push_back({w});
  return FinitePartition(n, std::move(blocks));
}

FinitePartition FinitePartition::dyadic(std::size_t n, unsigned level) {
  if (level >= 8 * sizeof(std::size_t)) throw std::invalid_argument("dyadic level too large");
  const std::size_t parts = std::size_t{1} << level;
  if (n == 0 || n % parts != 0) throw std::invalid_argument("atom count not divisible by 2^level");
  const std::size_t width = n / parts;
  std::vector<std::vector<std::size_t>> blocks(parts);
  for (std::size_t w = 0; w < n; ++w) blocks[w / width].push_back(w);
  return FinitePartition(n, std::move(blocks));
}

FinitePartition FinitePartition::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<std::size_t> seen;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t w = 0; w < labels.size(); ++w) {
    const auto it = std::find(seen.begin(), seen.end(), labels[w]);
    if (it == seen.end()) {
      seen.push_back(labels[w]);
      blocks.push_back({w});
    } else {
      blocks[static_cast<std::size_t>(it - seen.begin())].push_back(w);
    }
  }
  return FinitePartition(labels.size(), std::move(blocks));
}

bool FinitePartition::refines(const FinitePartition& coarser) const {
  if (coarser.atoms() != atoms()) return false;
  for (const auto& block : blocks_)
    for (auto w : block)
      if (coarser.block_of(w) != coarser.block_of(block.front())) return false;
  return true;
}

std::vector<FinitePartition> all_partitions(std::size_t n) {
  if (n == 0 || n > 12) throw std::invalid_argument("all_partitions supports 1..12 atoms");
  std::vector<FinitePartition> out;
  // a[i] <= max(a[0..i-1]) + 1
  std::vector<std::size_t> a(n, 0), top(n, 0);
  while (true) {
    out.push_back(FinitePartition::from_labels(a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] == top[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    top[i] = std::max(top[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      top[j] = top[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Filtration::Filtration(std::vector<FinitePartition> chain, Direction dir)
    : chain_(std::move(chain)), dir_(dir) {
  if (chain_.empty()) throw std::invalid_argument("filtration needs at least one partition");
  for (std::size_t n = 0; n + 1 < chain_.size(); ++n) {
    const auto& a = chain_[n];
    const auto& b = chain_[n + 1];
    const bool ok = dir == Direction::increasing ? b.refines(a) : a.refines(b);
    if (!ok) throw std::invalid_argument("filtration levels are not nested");
  }
}

Filtration Filtration::dyadic(std::size_t n, Direction dir) {
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("dyadic filtration needs a power of two");
  std::vector<FinitePartition> chain;
  for (unsigned level = 0; (std::size_t{1} << level) <= n; ++level)
    chain.push_back(FinitePartition::dyadic(n, level));
  if (dir == Direction::decreasing) std::reverse(chain.begin(), chain.end());
  return Filtration(std::move(chain), dir);
}

}  // namespace ccspace
