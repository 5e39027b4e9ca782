#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dfsarc/errors.hpp"
#include "dfsarc/identity_verify.hpp"
#include "dfsarc/joint_counts.hpp"
#include "dfsarc/numeric_eval.hpp"
#include "dfsarc/stats.hpp"

namespace {

using namespace dfsarc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

Rational parse_rational_or_throw(const std::string& text, const std::string& what) {
  auto value = parse_rational(text);
  if (!value) {
    throw std::invalid_argument(what + " must be an integer or num/den rational, got '" +
                                text + "'");
  }
  return *value;
}

// "--at w=1,x=1,z=1": every variable exactly once, exact rational values.
EvalPoint parse_point(const std::string& text) {
  std::optional<Rational> w, x, z;
  std::istringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad point component '" + part + "', expected var=value");
    }
    const std::string var = part.substr(0, eq);
    const Rational value = parse_rational_or_throw(part.substr(eq + 1), "coordinate " + var);
    std::optional<Rational>* slot = nullptr;
    if (var == "w") slot = &w;
    else if (var == "x") slot = &x;
    else if (var == "z") slot = &z;
    else throw std::invalid_argument("unknown variable '" + var + "' in point");
    if (*slot) throw std::invalid_argument("variable '" + var + "' given twice in point");
    *slot = value;
  }
  if (!w || !x || !z) throw std::invalid_argument("point must set w, x and z");
  return EvalPoint{*w, *x, *z};
}

int default_threads() {
  if (const char* env = std::getenv("DFSARC_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 1;
}

struct VerifyArgs {
  std::string identity;
  int n_max = 0;
  std::string mode = "symbolic";
  int points = 20;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int bound = 64;
  int max_index = SymbolicLimits{}.max_index;
  int degree_cap = SymbolicLimits{}.degree_cap;
  bool timing = false;
};

int run_verify(const VerifyArgs& args) {
  VerifyOptions opts;
  if (args.mode == "symbolic") {
    opts.mode = VerifyMode::Symbolic;
  } else if (args.mode == "numeric") {
    opts.mode = VerifyMode::Numeric;
    if (!args.seed_given) {
      throw std::invalid_argument("numeric verification samples points: --seed is required");
    }
  } else {
    throw std::invalid_argument("--mode must be symbolic or numeric");
  }
  opts.points = args.points;
  opts.seed = args.seed;
  opts.point_bound = args.bound;
  opts.limits.max_index = std::max(args.max_index, args.n_max);
  opts.limits.degree_cap = args.degree_cap;

  std::vector<Identity> identities;
  if (args.identity == "all") {
    identities = {Identity::Main, Identity::Transform, Identity::F2,
                  Identity::LastF, Identity::FDifference, Identity::Telescoping};
  } else {
    auto id = identity_from_token(args.identity);
    if (!id) {
      throw std::invalid_argument(
          "--identity must be one of main, transform, thm21, thm22, thm23, telescoping, all");
    }
    identities = {*id};
  }
  for (Identity id : identities) {
    if (args.n_max < identity_min_n(id)) {
      throw std::invalid_argument("--n-max " + std::to_string(args.n_max) +
                                  " is below the smallest index of identity " +
                                  identity_token(id));
    }
  }

  FamilyCache cache(opts.limits);
  bool all_pass = true;
  std::vector<IdentityReport> reports;
  for (Identity id : identities) {
    IdentityReport report = verify_identity(id, args.n_max, opts, cache);
    std::cerr << "[dfsarc] verify " << report.identity << " " << args.mode << " n="
              << report.n_lo << ".." << report.n_hi << ": "
              << (report.pass ? "pass" : "FAIL") << " (" << report.elapsed_ms << " ms)\n";
    all_pass = all_pass && report.pass;
    reports.push_back(std::move(report));
  }

  if (reports.size() == 1) {
    std::cout << to_json(reports.front(), args.timing).dump(2) << "\n";
  } else {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const IdentityReport& report : reports) out.push_back(to_json(report, args.timing));
    std::cout << out.dump(2) << "\n";
  }
  return all_pass ? kExitPass : kExitFail;
}

struct EvalArgs {
  std::string family;
  int n = 0;
  int k = 0;
  bool k_given = false;
  std::string at;
};

int run_eval(const EvalArgs& args) {
  FamilyId id;
  if (args.family == "G") id.family = Family::Std;
  else if (args.family == "hat") id.family = Family::Hat;
  else if (args.family == "check") id.family = Family::Check;
  else if (args.family == "F") id.family = Family::F;
  else throw std::invalid_argument("--family must be one of G, hat, check, F");
  id.n = args.n;
  if (id.family == Family::F) {
    if (!args.k_given) throw std::invalid_argument("--k is required for family F");
    id.k = args.k;
  } else if (args.k_given) {
    throw std::invalid_argument("--k only applies to family F");
  }
  id.validate();

  const EvalPoint pt = parse_point(args.at);
  const Rational value = eval_family(id, pt);
  std::cout << nlohmann::json(to_string(value)).dump() << "\n";
  return kExitPass;
}

struct SimulateArgs {
  int n = 0;
  std::string p;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  int threads = default_threads();
  std::string trace_path;
};

int run_simulate(const SimulateArgs& args) {
  ModelParams params;
  params.n = args.n;
  params.p = parse_rational_or_throw(args.p, "--p");
  params.validate();

  std::vector<ArcCounts> trace;
  const bool want_trace = !args.trace_path.empty();
  JointCounts counts = run_monte_carlo(params, args.samples, args.seed, args.threads, 0,
                                       want_trace ? &trace : nullptr);
  save_counts(counts, args.out_path);

  if (want_trace) {
    std::ofstream trace_file(args.trace_path, std::ios::binary);
    if (!trace_file) throw std::runtime_error("cannot open " + args.trace_path);
    for (std::uint64_t i = 0; i < trace.size(); ++i) {
      trace_file << trace_line(args.seed, i, params, trace[i]) << '\n';
    }
    if (!trace_file.flush()) throw std::runtime_error("failed writing " + args.trace_path);
  }

  std::cerr << "[dfsarc] simulate n=" << params.n << " p=" << to_string(params.p)
            << " samples=" << args.samples << " -> " << args.out_path << "\n";

  nlohmann::ordered_json summary;
  summary["n"] = params.n;
  summary["p"] = to_string(params.p);
  summary["samples"] = args.samples;
  summary["seed"] = args.seed;
  summary["out"] = args.out_path;
  summary["profiles"] = counts.counts.size();
  std::cout << summary.dump(2) << "\n";
  return kExitPass;
}

struct CompareArgs {
  std::vector<std::string> inputs;
  std::string tests = "all";
  std::uint64_t min_cell = 5;
  double alpha = 0.001;
  std::int64_t shift = 0;
  std::string tv_threshold;  // overrides both defaults when set
};

int run_compare(const CompareArgs& args) {
  std::vector<JointCounts> inputs;
  for (const std::string& path : args.inputs) inputs.push_back(load_counts(path));
  if (inputs.empty()) throw std::invalid_argument("compare needs at least one --in file");

  std::vector<std::string> tokens;
  {
    std::istringstream parts(args.tests);
    std::string token;
    while (std::getline(parts, token, ',')) tokens.push_back(token);
  }

  bool want_paired = false, want_fb = false, want_ft = false, want_quad = false;
  for (const std::string& token : tokens) {
    if (token == "all") {
      want_paired = true;
      if (inputs.size() == 2) want_fb = want_quad = true;
    } else if (token == "paired") want_paired = true;
    else if (token == "fb") want_fb = true;
    else if (token == "ft") want_ft = true;
    else if (token == "quad") want_quad = true;
    else throw std::invalid_argument("unknown test '" + token +
                                     "'; expected paired, fb, ft, quad or all");
  }
  if ((want_fb || want_ft || want_quad) && inputs.size() != 2) {
    throw std::invalid_argument("two-sample tests need exactly two --in files");
  }
  if (inputs.size() == 2 &&
      (inputs[0].n != inputs[1].n || inputs[0].p != inputs[1].p)) {
    throw std::invalid_argument("input runs have different (n, p) parameters");
  }

  const Rational fb_threshold = args.tv_threshold.empty()
                                    ? make_rational(1, 50)
                                    : parse_rational_or_throw(args.tv_threshold, "--tv-threshold");
  const Rational quad_threshold = args.tv_threshold.empty()
                                      ? make_rational(1, 20)
                                      : parse_rational_or_throw(args.tv_threshold,
                                                                "--tv-threshold");

  std::vector<ComparisonReport> reports;
  if (want_paired) {
    for (const JointCounts& j : inputs) reports.push_back(paired_mean_test(j, args.shift));
  }
  if (want_fb) {
    const Histogram f = marginal(inputs[0], ArcCoord::F);
    const Histogram b = marginal(inputs[1], ArcCoord::B);
    reports.push_back(two_sample_chi_square(f, b, args.min_cell, args.alpha));
    reports.push_back(tv_report("fb-tv-distance", tv_distance(f, b), fb_threshold, f.total,
                                b.total));
  }
  if (want_ft) {
    const Histogram f = marginal(inputs[0], ArcCoord::F);
    const Histogram t = marginal(inputs[1], ArcCoord::T);
    reports.push_back(two_sample_chi_square(f, t, args.min_cell, args.alpha));
    reports.push_back(tv_report("ft-tv-distance", tv_distance(f, t), fb_threshold, f.total,
                                t.total));
  }
  if (want_quad) {
    const QuadCounts a = project_quad(inputs[0], false);
    const QuadCounts b = project_quad(inputs[1], true);
    reports.push_back(tv_report("quad-tv-distance", tv_distance_quad(a, b, args.min_cell),
                                quad_threshold, inputs[0].total_samples,
                                inputs[1].total_samples));
    reports.push_back(quad_chi_square(a, b, args.min_cell, args.alpha));
  }
  if (reports.empty()) throw std::invalid_argument("no tests selected");

  bool all_pass = true;
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const ComparisonReport& report : reports) {
    all_pass = all_pass && report.pass;
    std::cerr << "[dfsarc] " << report.test << ": " << (report.pass ? "pass" : "FAIL") << "\n";
    out.push_back(to_json(report));
  }
  std::cout << out.dump(2) << "\n";
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the DFS arc-statistics identities and a Monte Carlo "
               "simulator for the geometric-outdegree digraph model"};
  app.require_subcommand(1);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check an identity symbolically or at sampled rational points");
  verify->add_option("--identity", verify_args.identity,
                     "main, transform, thm21, thm22, thm23, telescoping or all")
      ->required();
  verify->add_option("--n-max", verify_args.n_max, "largest family index to check")->required();
  verify->add_option("--mode", verify_args.mode, "symbolic (default) or numeric");
  verify->add_option("--points", verify_args.points, "numeric mode: points per index");
  CLI::Option* verify_seed =
      verify->add_option("--seed", verify_args.seed, "numeric mode: point-sampling seed");
  verify->add_option("--bound", verify_args.bound,
                     "numeric mode: numerator/denominator bound for sampled points");
  verify->add_option("--max-index", verify_args.max_index,
                     "symbolic mode: family index guard rail");
  verify->add_option("--degree-cap", verify_args.degree_cap,
                     "symbolic mode: cross-multiplication degree guard rail");
  verify->add_flag("--timing", verify_args.timing,
                   "include elapsed_ms in stdout JSON (off keeps output byte-stable)");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate one family member exactly at a point");
  eval->add_option("--family", eval_args.family, "G, hat, check or F")->required();
  eval->add_option("--n", eval_args.n, "family index")->required();
  CLI::Option* eval_k = eval->add_option("--k", eval_args.k, "first index for family F");
  eval->add_option("--at", eval_args.at, "evaluation point, e.g. w=1,x=1,z=1")->required();

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Sample digraphs, classify arcs under DFS, write the joint counts as CSV");
  simulate->add_option("--n", sim_args.n, "vertex count")->required();
  simulate->add_option("--p", sim_args.p, "geometric parameter, exact rational in (0,1)")
      ->required();
  simulate->add_option("--samples", sim_args.samples, "number of digraphs")->required();
  simulate->add_option("--seed", sim_args.seed, "master seed (stream per sample index)")
      ->required();
  simulate->add_option("--out", sim_args.out_path, "CSV output path (sidecar <out>.meta.json)")
      ->required();
  simulate->add_option("--threads", sim_args.threads,
                       "worker threads (default: DFSARC_THREADS or 1; output is "
                       "thread-count independent)");
  simulate->add_option("--trace", sim_args.trace_path, "optional per-sample JSONL trace path");

  CompareArgs cmp_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "Statistical comparisons over saved joint-count runs");
  compare->add_option("--in", cmp_args.inputs, "input CSV path (repeat for two batches)")
      ->required();
  compare->add_option("--tests", cmp_args.tests,
                      "comma list of paired, fb, ft, quad or all (default all)");
  compare->add_option("--min-cell", cmp_args.min_cell, "smallest expected count per cell");
  compare->add_option("--alpha", cmp_args.alpha, "chi-square significance level");
  compare->add_option("--shift", cmp_args.shift,
                      "displace every F by this amount in the paired test (sensitivity "
                      "control)");
  compare->add_option("--tv-threshold", cmp_args.tv_threshold,
                      "override the TV decision thresholds (exact rational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    verify_args.seed_given = verify_seed->count() > 0;
    eval_args.k_given = eval_k->count() > 0;
    if (verify->parsed()) return run_verify(verify_args);
    if (eval->parsed()) return run_eval(eval_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (compare->parsed()) return run_compare(cmp_args);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
}
