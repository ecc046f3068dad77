#include "ccspace/report.hpp"

#include <algorithm>

#include "ccspace/geometry.hpp"

namespace ccspace {

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* AxiomReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double AxiomReport::worst_violation() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.worst_violation);
  return worst;
}

bool ConvergenceTrace::settle(std::size_t window) {
  const std::size_t start = distances.size() > window ? distances.size() - window : 0;
  verdict = !distances.empty() &&
            std::all_of(distances.begin() + static_cast<std::ptrdiff_t>(start), distances.end(),
                        [&](double d) { return d <= tolerance; });
  return verdict;
}

bool ConvergenceTrace::non_increasing(double slack) const {
  for (std::size_t i = 1; i < distances.size(); ++i)
    if (distances[i] > distances[i - 1] + slack) return false;
  return true;
}

bool ConvergenceTrace::strictly_decreasing() const {
  for (std::size_t i = 1; i < distances.size(); ++i)
    if (!(distances[i] < distances[i - 1])) return false;
  return true;
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out = "n,distance\n";
  for (std::size_t i = 0; i < trace.ns.size(); ++i)
    out += std::to_string(trace.ns[i]) + ',' + format_real(trace.distances[i]) + '\n';
  return out;
}

}  // namespace ccspace
