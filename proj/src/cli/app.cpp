#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ccspace/cli.hpp"

namespace ccspace::cli {

namespace {

const char* kFooter =
    "Environment:\n"
    "  CCSPACE_SEED  default seed when --seed is not given (built-in default 7)\n"
    "\n"
    "Point text used by --fixture:\n"
    "  euclidean/power   comma-separated coordinates, e.g. 1,2\n"
    "  compact-sets      finite set as whitespace-separated tuples, e.g. \"0 1\" or \"0,0 1,0\";\n"
    "                    convex hull as \"co 0,0 1,0 0,1\"; sum as \"0 2 + co 0 1\"\n"
    "  distributions     atom:prob pairs, e.g. \"0:0.5 1:0.5\"\n"
    "  several points (slln, prop55) are separated by ';'\n"
    "\n"
    "Exit codes: 0 all checks pass, 1 violation found, 2 usage error.\n";

std::uint64_t env_seed() {
  const char* s = std::getenv(kSeedEnv);
  if (s == nullptr || *s == '\0') return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 10);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(kSeedEnv) + " must be a non-negative integer");
  }
}

void add_options(CLI::App& app, RunConfig& c) {
  app.add_option("--space", c.space, "euclidean | power | compact-sets | distributions")
      ->check(CLI::IsMember({"euclidean", "power", "compact-sets", "distributions"}));
  app.add_option("--dim", c.dim, "dimension (1-3; compact-sets 1-2; distributions 1)");
  app.add_option("--exponent", c.exponent, "power space exponent r > 1");
  app.add_option("--seed", c.seed, "seed (default from CCSPACE_SEED, else 7)");
  app.add_option("--trials", c.trials, "random trials for suites");
  app.add_option("--n-max", c.n_max, "trace length (0 picks the command default)");
  app.add_option("--tolerance", c.tolerance, "tolerance (negative picks the command default)");
  app.add_option("--output", c.output, "report path (default standard output)");
  app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--fixture", c.fixture, "named fixture or point text");
  app.add_option("--mode", c.mode, "slln track: convex | raw")->check(CLI::IsMember({"convex", "raw"}));
  app.add_flag("--raw-points", c.raw_points, "cancellation on unconvexified points");
  app.add_flag("--reverse", c.reverse, "martingale on the decreasing filtration");
  app.add_flag("--conditional", c.conditional, "jensen blockwise on random partitions");
  app.add_option("--functional", c.functional, "jensen functional: distance | support-max")
      ->check(CLI::IsMember({"distance", "support-max"}));
  app.add_option("--p", c.p, "martingale distance exponent (1 or 2)");
  app.add_option("--modulus", c.modulus, "ergodic sample space size N");
  app.add_option("--step", c.step, "ergodic rotation step k (coprime to N)");
  app.add_option("--atoms", c.atoms, "martingale sample space size (power of two)");
  app.add_option("--x", c.x, "counterexample point x");
  app.add_option("--y", c.y, "counterexample point y");
  app.add_option("--atom-cap", c.atom_cap, "distribution atom cap");
  app.add_option("--set-cap", c.set_cap, "finite set enumeration cap");
  app.add_option("--prune-resolution", c.prune_resolution, "grid-snap pruning for finite sets (0 disables)");
}

const char* describe_command(const std::string& name) {
  if (name == "check-axioms") return "run the axiom and derived-law suite";
  if (name == "cancellation") return "metric cancellation law on convex points";
  if (name == "slln") return "strong law of large numbers trace";
  if (name == "ergodic") return "orbit averages of a cyclic rotation";
  if (name == "martingale") return "conditional expectations along a dyadic filtration";
  if (name == "jensen") return "Jensen inequality for certified convex functionals";
  if (name == "embed-verify") return "support-function embedding: isometry and affinity";
  if (name == "convexify-rate") return "distance of equal-weight self-averages to Kx";
  if (name == "counterexample") return "weight bound failing on non-convex points";
  if (name == "prop52") return "weight perturbation bound on convex points";
  if (name == "prop55") return "raw and convexified averages over a compact family";
  return "";
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Convex combination spaces: axiom checks and limit theorem experiments", "ccspace"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.set_config("--config", "", "config file with flag names as keys; flags win");
  add_options(app, config);
  for (const auto& name : command_names()) app.add_subcommand(name, describe_command(name))->fallthrough();

  try {
    config.seed = env_seed();
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    const RunOutcome result = run(config);
    if (config.output.empty()) {
      out << result.report;
    } else {
      write_atomic(config.output, result.report);
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace ccspace::cli
