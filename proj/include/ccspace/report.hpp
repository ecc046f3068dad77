#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ccspace {

/// Outcome of one randomized law check.
struct CheckResult {
  std::string name;
  std::size_t trials = 0;   // evaluated trials
  std::size_t skipped = 0;  // trials the space could not represent
  double worst_violation = 0.0;
  std::string witness;  // inputs of the worst trial, empty when passing
  bool passed = true;

  // Every trial was skipped.
  bool not_applicable() const { return trials == 0 && skipped > 0; }
};

struct AxiomReport {
  std::string space;
  double tolerance = 0.0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
  double worst_violation() const;
};

/// Distances d_n recorded at increasing indices n.
struct ConvergenceTrace {
  std::vector<std::size_t> ns;
  std::vector<double> distances;
  std::string target;  // what d_n measures the distance to
  double tolerance = 0.0;
  bool verdict = false;

  void push(std::size_t n, double d) {
    ns.push_back(n);
    distances.push_back(d);
  }
  double final_distance() const { return distances.empty() ? 0.0 : distances.back(); }
  // Pass iff the last `window` distances are all within tolerance.
  bool settle(std::size_t window = 1);
  bool non_increasing(double slack = 0.0) const;
  bool strictly_decreasing() const;
};

// Header `n,distance`, one row per entry.
std::string trace_to_csv(const ConvergenceTrace& trace);

}  // namespace ccspace
