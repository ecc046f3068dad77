#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <type_traits>
#include <unistd.h>

#include <json.hpp>

#include "ccspace/checks.hpp"
#include "ccspace/cli.hpp"
#include "ccspace/embedding.hpp"
#include "ccspace/limits.hpp"
#include "ccspace/probability.hpp"
#include "ccspace/spaces.hpp"

namespace ccspace::cli {

namespace {

using json = nlohmann::ordered_json;

struct Result {
  bool pass = true;
  json params = json::object();
  json details = json::object();
  std::string csv;
  std::string paper_ref;
};

// JSON has no infinities; keep them readable.
json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

const char* verdict_word(const CheckResult& c) {
  if (c.not_applicable()) return "n/a";
  return c.passed ? "pass" : "fail";
}

std::string suite_csv(const AxiomReport& r) {
  std::string out = "check,worst_violation,trials,verdict\n";
  for (const auto& c : r.checks)
    out += c.name + ',' + format_real(c.worst_violation) + ',' + std::to_string(c.trials) + ',' + verdict_word(c) + '\n';
  return out;
}

json suite_json(const AxiomReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"check", c.name},
           {"worst_violation", number(c.worst_violation)},
           {"trials", c.trials},
           {"skipped", c.skipped},
           {"verdict", verdict_word(c)}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    checks.push_back(j);
  }
  return json{{"tolerance", r.tolerance}, {"checks", checks}};
}

Result suite_result(const AxiomReport& r) {
  Result res;
  res.pass = r.all_passed();
  res.details = suite_json(r);
  res.csv = suite_csv(r);
  return res;
}

json trace_json(const ConvergenceTrace& t) {
  json dist = json::array();
  for (double d : t.distances) dist.push_back(number(d));
  return json{{"target", t.target},
              {"tolerance", t.tolerance},
              {"final_distance", number(t.final_distance())},
              {"verdict", t.verdict ? "pass" : "fail"},
              {"n", t.ns},
              {"distance", dist}};
}

Result trace_result(const ConvergenceTrace& t) {
  Result res;
  res.pass = t.verdict;
  res.details = trace_json(t);
  res.csv = trace_to_csv(t);
  return res;
}

double tol_or(const RunConfig& c, double fallback) { return c.tolerance < 0.0 ? fallback : c.tolerance; }
std::size_t n_or(const RunConfig& c, std::size_t fallback) { return c.n_max == 0 ? fallback : c.n_max; }

template <class S>
constexpr bool is_sets = std::is_same_v<S, CompactSetSpace>;
template <class S>
constexpr bool is_laws = std::is_same_v<S, DistributionSpace>;

// ---------------------------------------------------------------------------
// Fixtures

template <class S>
typename S::Point constant_point(const S& space, double c) {
  if constexpr (is_sets<S>) {
    return CompactSet::finite(FinitePointSet(space.dimension(), {{c, 0.0}}));
  } else if constexpr (is_laws<S>) {
    return DiscreteDistribution::dirac(c);
  } else {
    return EuclideanPoint{std::vector<double>(static_cast<std::size_t>(space.dimension()), c)};
  }
}

template <class S>
typename S::Point two_point(const S& space) {
  if constexpr (is_sets<S>) {
    return CompactSet::finite(FinitePointSet(space.dimension(), {{0.0, 0.0}, {1.0, 0.0}}));
  } else if constexpr (is_laws<S>) {
    return DiscreteDistribution::bernoulli(0.5);
  } else {
    return constant_point(space, 1.0);
  }
}

template <class S>
typename S::Point fixture_point(const S& space, const std::string& fixture) {
  if (fixture.empty() || fixture == "two-point") return two_point(space);
  try {
    return space.parse(fixture);
  } catch (const std::exception& e) {
    throw UsageError("cannot read fixture '" + fixture + "': " + e.what());
  }
}

// Points separated by ';'.
template <class S>
std::vector<typename S::Point> fixture_points(const S& space, const std::string& fixture) {
  std::vector<typename S::Point> out;
  std::stringstream in(fixture);
  for (std::string part; std::getline(in, part, ';');) out.push_back(fixture_point(space, part));
  if (out.empty()) throw UsageError("fixture lists no points");
  return out;
}

template <class S>
PointLaw<typename S::Point> slln_law(const S& space, const RunConfig& c) {
  using P = typename S::Point;
  if (c.fixture == "constant") return {{two_point(space)}, {1.0}};
  if (!c.fixture.empty() && c.fixture != "default") {
    auto pts = fixture_points(space, c.fixture);
    return {pts, std::vector<double>(pts.size(), 1.0 / static_cast<double>(pts.size()))};
  }
  P a = constant_point(space, 0.0), b = constant_point(space, 1.0);
  if constexpr (is_sets<S>) {
    if (space.dimension() == 1) {
      a = CompactSet::convex(ConvexPolytope::interval(0.0, 1.0));
      b = CompactSet::finite(FinitePointSet::of_reals({2.0}));
    } else {
      a = CompactSet::convex(ConvexPolytope::hull_of(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
      b = CompactSet::finite(FinitePointSet(2, {{2.0, 0.0}}));
    }
  } else if constexpr (is_laws<S>) {
    a = DiscreteDistribution::bernoulli(0.5);
    b = DiscreteDistribution::dirac(2.0);
  }
  return {{a, b}, {0.5, 0.5}};
}

// Convex-valued for sets: intervals (d = 1) or boxes (d = 2).
template <class S>
typename S::Point ergodic_value(const S& space, std::size_t w) {
  const double a = static_cast<double>((w * 37) % 101) / 10.0;
  const double b = static_cast<double>(w % 5) / 4.0;
  if constexpr (is_sets<S>) {
    if (space.dimension() == 1) return CompactSet::convex(ConvexPolytope::interval(a, a + b));
    return CompactSet::convex(ConvexPolytope::hull_of(2, {{a, 0}, {a + b, 0}, {a + b, 1 + b}, {a, 1 + b}}));
  } else if constexpr (is_laws<S>) {
    return DiscreteDistribution::bernoulli(0.1 * static_cast<double>(w % 9 + 1), 0.0, 1.0 + static_cast<double>(w % 4));
  } else {
    (void)b;
    return constant_point(space, static_cast<double>(w));
  }
}

template <class S>
typename S::Point martingale_value(const S& space, std::size_t w) {
  const double x = static_cast<double>(w);
  if constexpr (is_sets<S>) {
    if (space.dimension() == 1) return CompactSet::finite(FinitePointSet::of_reals({x, x + 1.0 + static_cast<double>(w % 3)}));
    return CompactSet::finite(FinitePointSet(2, {{x, 0.0}, {x, 1.0}, {x + 1.0, 0.0}}));
  } else if constexpr (is_laws<S>) {
    return DiscreteDistribution::bernoulli(0.5, x, x + 1.0);
  } else {
    return constant_point(space, x);
  }
}

template <class S>
std::vector<typename S::Point> family_fixture(const S& space, const RunConfig& c) {
  if (!c.fixture.empty()) return fixture_points(space, c.fixture);
  if constexpr (is_sets<S>) {
    const int d = space.dimension();
    return {CompactSet::finite(FinitePointSet(d, {{0.0, 0.0}, {1.0, 0.0}})),
            CompactSet::finite(FinitePointSet(d, {{2.0, 0.0}}))};
  } else {
    Rng rng = stream_rng(c.seed, 55, 0);
    return {space.sample(rng), space.sample(rng)};
  }
}

// ---------------------------------------------------------------------------
// Commands

template <class S>
Result cmd_check_axioms(const S& space, const RunConfig& c) {
  const double tol = tol_or(c, default_tolerance(space));
  const auto opts = default_check_options(space);
  Result res = suite_result(check_axioms(space, c.trials, tol, c.seed, opts));
  res.params = {{"trials", c.trials}, {"tolerance", tol}, {"convexify_depth", opts.convexify_depth},
                {"max_terms", opts.max_terms}};
  res.paper_ref = "convex combination axioms and their derived laws";
  return res;
}

template <class S>
Result cmd_cancellation(const S& space, const RunConfig& c) {
  const double tol = tol_or(c, default_tolerance(space));
  Result res = suite_result(check_cancellation(space, c.trials, tol, c.seed, {!c.raw_points}));
  res.params = {{"trials", c.trials}, {"tolerance", tol}, {"inputs", c.raw_points ? "raw" : "convex"}};
  res.paper_ref = "metric cancellation law on convex points";
  return res;
}

template <class S>
Result cmd_slln(const S& space, const RunConfig& c) {
  if (c.mode != "convex" && c.mode != "raw") throw UsageError("--mode must be convex or raw");
  const std::size_t n = n_or(c, 10000);
  const double tol = tol_or(c, 0.05);
  const auto law = slln_law(space, c);
  Result res = trace_result(slln_run(space, law, n, c.seed, c.mode == "raw" ? TrackMode::raw : TrackMode::convex, tol));
  json pts = json::array();
  for (const auto& p : law.points) pts.push_back(space.format(p));
  res.params = {{"n_max", n}, {"tolerance", tol}, {"mode", c.mode}, {"law_points", pts}, {"law_probs", law.probs}};
  res.paper_ref = "strong law of large numbers";
  return res;
}

template <class S>
Result cmd_ergodic(const S& space, const RunConfig& c) {
  std::optional<CyclicTransformation> tau;
  try {
    tau.emplace(c.modulus, c.step);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::size_t n = n_or(c, c.modulus);
  const double tol = tol_or(c, 1e-12);
  RandomElement<typename S::Point> x;
  for (std::size_t w = 0; w < c.modulus; ++w) x.values.push_back(ergodic_value(space, w));
  const auto er = ergodic_run(space, *tau, x, n, tol);
  Result res = trace_result(er.trace);
  res.details["orbit_defect"] = number(er.orbit_defect);
  res.details["bound"] = number(er.bound);
  res.details["non_divergent"] = er.non_divergent;
  res.params = {{"modulus", c.modulus}, {"step", tau->step()}, {"n_max", n}, {"tolerance", tol}};
  res.paper_ref = "ergodic theorem for an ergodic cyclic rotation";
  return res;
}

template <class S>
Result cmd_martingale(const S& space, const RunConfig& c) {
  if (c.p != 1 && c.p != 2) throw UsageError("--p must be 1 or 2");
  if (c.atoms == 0 || (c.atoms & (c.atoms - 1)) != 0) throw UsageError("--atoms must be a power of two");
  const double tol = tol_or(c, 1e-12);
  const auto omega = FiniteSampleSpace::uniform(c.atoms);
  RandomElement<typename S::Point> x;
  for (std::size_t w = 0; w < c.atoms; ++w) x.values.push_back(martingale_value(space, w));
  const auto dir = c.reverse ? Filtration::Direction::decreasing : Filtration::Direction::increasing;
  const auto filt = Filtration::dyadic(c.atoms, dir);
  const double defect = martingale_sequence(space, omega, x, filt).worst_defect;
  auto trace = martingale_convergence_trace(space, omega, x, filt, c.p, tol);
  trace.verdict = trace.verdict && defect <= std::max(tol, 1e-9);
  Result res = trace_result(trace);
  res.details["martingale_defect"] = number(defect);
  res.params = {{"atoms", c.atoms}, {"p", c.p}, {"direction", c.reverse ? "decreasing" : "increasing"},
                {"tolerance", tol}};
  res.paper_ref = "martingale convergence of conditional expectations";
  return res;
}

template <class S>
ConvexFunctional<S> make_functional(const S& space, const RunConfig& c, Rng& rng) {
  if (c.functional == "distance") return ConvexFunctional<S>::distance_to(space, convexify(space, space.sample(rng)));
  if (c.functional == "support-max") {
    if constexpr (HasSupport<S>) {
      std::vector<std::vector<double>> dirs;
      for (int k = 0; k < 3; ++k) {
        std::vector<double> v(static_cast<std::size_t>(space.dimension()));
        double norm = 0.0;
        while (norm < 1e-3) {
          norm = 0.0;
          for (auto& e : v) {
            e = uniform(rng, -1.0, 1.0);
            norm += e * e;
          }
          norm = std::sqrt(norm);
        }
        for (auto& e : v) e /= norm;
        dirs.push_back(v);
      }
      return ConvexFunctional<S>::max_support(space, dirs);
    } else {
      throw UsageError("support-max needs a space with support functions (euclidean or compact-sets)");
    }
  }
  throw UsageError("unknown functional '" + c.functional + "' (certified: distance, support-max)");
}

template <class S>
Result cmd_jensen(const S& space, const RunConfig& c) {
  const double tol = tol_or(c, default_tolerance(space));
  {
    Rng probe(0);
    (void)make_functional(space, c, probe);  // reject bad configurations before the trials
  }
  const auto omega = FiniteSampleSpace::uniform(8);
  AxiomReport rep;
  rep.space = space.name();
  rep.tolerance = tol;
  rep.checks.push_back(detail::run_trials(c.conditional ? "conditional-jensen" : "jensen", 401, c.trials, tol, c.seed,
                                          [&](Rng& rng) {
    RandomElement<typename S::Point> x{detail::sample_points(space, rng, 8)};
    const auto phi = make_functional(space, c, rng);
    std::optional<FinitePartition> g;
    if (c.conditional) {
      std::vector<std::size_t> labels;
      for (int w = 0; w < 8; ++w) labels.push_back(uniform_index(rng, 3));
      g = FinitePartition::from_labels(labels);
    }
    detail::Trial t;
    t.violation = jensen_check(space, omega, x, phi, g, tol).worst_violation;
    t.witness = [&space, x, phi] { return phi.describe(space) + " on " + detail::describe_points(space, x.values); };
    return t;
  }));
  Result res = suite_result(rep);
  res.params = {{"trials", c.trials}, {"tolerance", tol}, {"functional", c.functional}, {"conditional", c.conditional}};
  res.paper_ref = c.conditional ? "conditional Jensen inequality" : "Jensen inequality";
  return res;
}

ConvexPolytope random_polytope(int dim, Rng& rng) {
  const std::size_t n = 3 + uniform_index(rng, 6);
  std::vector<Coord> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({uniform(rng, -3, 3), dim == 2 ? uniform(rng, -3, 3) : 0.0});
  return ConvexPolytope::hull_of(dim, pts);
}

template <class S>
Result cmd_embed_verify(const S& space, const RunConfig& c) {
  if constexpr (!is_sets<S>) {
    (void)space, (void)c;
    throw UsageError("embed-verify runs on the compact-sets space");
  } else {
    const double tol = tol_or(c, 1e-9);
    const int d = space.dimension();
    AxiomReport rep;
    rep.space = space.name();
    rep.tolerance = tol;
    rep.checks.push_back(detail::run_trials("isometry", 501, c.trials, tol, c.seed, [&](Rng& rng) {
      const auto p = random_polytope(d, rng), q = random_polytope(d, rng);
      detail::Trial t;
      t.violation = std::abs(embedded_distance(p, q) - hausdorff_distance(p, q));
      t.witness = [&space, p, q] {
        return space.format(CompactSet::convex(p)) + " | " + space.format(CompactSet::convex(q));
      };
      return t;
    }));
    rep.checks.push_back(detail::run_trials("affinity", 502, c.trials, 1e-12, c.seed, [&](Rng& rng) {
      const auto p = random_polytope(d, rng), q = random_polytope(d, rng);
      const double lam = uniform(rng, 0.0, 1.0);
      const auto dirs = direction_set(d, 64, {p, q});
      detail::Trial t;
      t.violation = sup_norm_distance(embed(polytope_combine({lam, 1.0 - lam}, {p, q}), dirs),
                                      affine_mix(lam, embed(p, dirs), embed(q, dirs)));
      t.witness = [&space, p, q, lam] {
        return "lambda " + format_real(lam) + ", " + space.format(CompactSet::convex(p)) + " | " +
               space.format(CompactSet::convex(q));
      };
      return t;
    }));
    Result res = suite_result(rep);
    res.params = {{"trials", c.trials}, {"tolerance", tol}, {"affinity_tolerance", 1e-12}};
    res.paper_ref = "isometric affine embedding of convex points";
    return res;
  }
}

template <class S>
Result cmd_convexify_rate(const S& space, const RunConfig& c) {
  const std::size_t n = n_or(c, 64);
  std::vector<std::size_t> ns(n);
  for (std::size_t i = 0; i < n; ++i) ns[i] = i + 1;
  const auto x = fixture_point(space, c.fixture);
  Result res = trace_result(convexification_rate(space, x, ns));
  res.params = {{"n_max", n}, {"point", space.format(x)}};
  res.paper_ref = "convexification limit of equal-weight self-combinations";
  return res;
}

Result cmd_counterexample(const RunConfig& c) {
  const auto r = weight_bound_counterexample(c.x, c.y);
  const bool fails = r.lhs > r.rhs;
  Result res;
  res.pass = fails;
  res.details = {{"lhs", r.lhs},
                 {"rhs", r.rhs},
                 {"verdict", fails ? "inequality fails on non-convex points" : "inequality holds"}};
  res.csv = "quantity,value\nlhs," + format_real(r.lhs) + "\nrhs," + format_real(r.rhs) + "\nverdict," +
            (fails ? "inequality fails on non-convex points" : "inequality holds") + '\n';
  res.params = {{"exponent", 2.0}, {"x", c.x}, {"y", c.y}, {"a", {0.8, 0.2}}, {"b", {0.4, 0.6}}, {"u", 0.0}};
  res.paper_ref = "weight perturbation bound fails without convexification";
  return res;
}

std::vector<double> weights_with_zero(Rng& rng, std::size_t n) {
  auto w = random_simplex_weights(rng, n);
  if (uniform01(rng) < 0.25) {
    const std::size_t z = uniform_index(rng, n), to = (z + 1) % n;
    w[to] += w[z];
    w[z] = 0.0;
  }
  return w;
}

template <class S>
Result cmd_weight_perturbation(const S& space, const RunConfig& c) {
  const double tol = tol_or(c, default_tolerance(space));
  AxiomReport rep;
  rep.space = space.name();
  rep.tolerance = tol;
  rep.checks.push_back(detail::run_trials("weight-perturbation-bound", 601, c.trials, tol, c.seed, [&](Rng& rng) {
    const std::size_t n = detail::sample_count(rng, 2, 4);
    const auto a = weights_with_zero(rng, n), b = weights_with_zero(rng, n);
    const auto xs = detail::sample_points(space, rng, n);
    const auto u = space.sample(rng);
    const auto r = weight_perturbation_check(space, a, b, xs, u, tol);
    detail::Trial t;
    t.violation = r.lhs - r.rhs;
    t.witness = [&space, a, b, xs, u] {
      return "a " + detail::describe(space, a, xs) + " b " + detail::describe(space, b, xs) + " u {" +
             space.format(u) + "}";
    };
    return t;
  }));
  Result res = suite_result(rep);
  res.params = {{"trials", c.trials}, {"tolerance", tol}};
  res.paper_ref = "weight perturbation bound on convex points";
  return res;
}

template <class S>
Result cmd_compact_family(const S& space, const RunConfig& c) {
  const std::size_t n = n_or(c, 12);
  const auto family = family_fixture(space, c);
  Result res = trace_result(compact_family_run(space, family, n));
  json fam = json::array();
  for (const auto& p : family) fam.push_back(space.format(p));
  res.params = {{"n_max", n}, {"family", fam}};
  res.paper_ref = "raw and convexified averages merge over a compact family";
  return res;
}

template <class S>
Result dispatch(const S& space, const RunConfig& c) {
  const auto& cmd = c.command;
  if (cmd == "check-axioms") return cmd_check_axioms(space, c);
  if (cmd == "cancellation") return cmd_cancellation(space, c);
  if (cmd == "slln") return cmd_slln(space, c);
  if (cmd == "ergodic") return cmd_ergodic(space, c);
  if (cmd == "martingale") return cmd_martingale(space, c);
  if (cmd == "jensen") return cmd_jensen(space, c);
  if (cmd == "embed-verify") return cmd_embed_verify(space, c);
  if (cmd == "convexify-rate") return cmd_convexify_rate(space, c);
  if (cmd == "prop52") return cmd_weight_perturbation(space, c);
  if (cmd == "prop55") return cmd_compact_family(space, c);
  throw UsageError("unknown command '" + cmd + "'");
}

Result run_on_space(const RunConfig& c) {
  if (c.space == "euclidean") {
    if (c.dim < 1 || c.dim > 3) throw UsageError("euclidean needs --dim 1, 2 or 3");
    return dispatch(EuclideanSpace(c.dim), c);
  }
  if (c.space == "power") {
    if (c.dim < 1 || c.dim > 3) throw UsageError("power needs --dim 1, 2 or 3");
    if (!(c.exponent > 1.0) || !std::isfinite(c.exponent)) throw UsageError("power needs --exponent > 1");
    return dispatch(PowerSpace(c.dim, c.exponent), c);
  }
  if (c.space == "compact-sets") {
    if (c.dim != 1 && c.dim != 2) throw UsageError("compact-sets needs --dim 1 or 2");
    if (c.set_cap == 0 || c.prune_resolution < 0.0) throw UsageError("invalid enumeration cap or prune resolution");
    return dispatch(CompactSetSpace(c.dim, {c.set_cap, c.prune_resolution}), c);
  }
  if (c.space == "distributions") {
    if (c.dim != 1) throw UsageError("distributions live on the line (--dim 1)");
    if (c.atom_cap == 0) throw UsageError("--atom-cap must be positive");
    return dispatch(DistributionSpace(c.atom_cap), c);
  }
  throw UsageError("unknown space '" + c.space + "' (euclidean, power, compact-sets, distributions)");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-axioms", "cancellation",   "slln",           "ergodic",
                                              "martingale",   "jensen",         "embed-verify",   "convexify-rate",
                                              "counterexample", "prop52",       "prop55"};
  return names;
}

RunOutcome run(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.trials == 0) throw UsageError("--trials must be positive");
  if (std::find(command_names().begin(), command_names().end(), c.command) == command_names().end())
    throw UsageError("unknown command '" + c.command + "'");

  Result res;
  try {
    res = c.command == "counterexample" ? cmd_counterexample(c) : run_on_space(c);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const bool power_params = c.space == "power" || c.command == "counterexample";
  json params = json::object();
  params["dim"] = c.command == "counterexample" ? 1 : c.dim;
  if (power_params && c.command != "counterexample") params["exponent"] = c.exponent;
  if (!c.fixture.empty()) params["fixture"] = c.fixture;
  for (auto& [k, v] : res.params.items()) params[k] = v;

  RunOutcome out;
  out.exit_code = res.pass ? 0 : 1;
  if (c.format == "csv") {
    out.report = res.csv;
  } else {
    json doc{{"command", c.command},
             {"space", c.command == "counterexample" ? "power" : c.space},
             {"params", params},
             {"seed", c.seed},
             {"verdict", res.pass ? "pass" : "fail"},
             {"details", res.details},
             {"paper_ref", res.paper_ref}};
    out.report = doc.dump(2) + '\n';
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move report into place at " + path + ": " + ec.message());
  }
}

}  // namespace ccspace::cli
