#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccspace::cli {

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr const char* kSeedEnv = "CCSPACE_SEED";

/// Invalid command, space, or parameter combination (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string space = "euclidean";  // euclidean | power | compact-sets | distributions
  int dim = 1;
  double exponent = 2.0;  // power space only
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 1000;
  std::size_t n_max = 0;   // 0: command default
  double tolerance = -1.0;  // negative: command default
  std::string output;      // empty: standard output
  std::string format = "csv";
  std::string fixture;     // named input, command specific
  std::string mode = "convex";  // slln track: convex | raw
  bool raw_points = false;      // cancellation on unconvexified points
  bool reverse = false;         // martingale: decreasing filtration
  bool conditional = false;     // jensen: blockwise on a random partition
  std::string functional = "distance";  // jensen: distance | support-max
  int p = 1;                            // martingale: Delta_p
  std::size_t modulus = 1000;           // ergodic N
  std::size_t step = 7;                 // ergodic k
  std::size_t atoms = 16;               // martingale sample space size
  double x = 1.0, y = -0.5;             // counterexample inputs
  std::size_t atom_cap = 512;
  std::size_t set_cap = 100000;
  double prune_resolution = 0.0;
};

struct RunOutcome {
  int exit_code = 0;   // 0 pass, 1 violation found
  std::string report;  // formatted per RunConfig::format
};

// Throws UsageError on invalid configurations.
RunOutcome run(const RunConfig& config);

const std::vector<std::string>& command_names();

// Write via a temporary file in the same directory and rename over `path`.
void write_atomic(const std::string& path, const std::string& content);

// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ccspace::cli
