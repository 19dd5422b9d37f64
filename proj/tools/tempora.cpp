// tempora: bounds on temporal (sequential-measurement) correlations.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempora/classical.hpp"
#include "tempora/moment.hpp"
#include "tempora/realize.hpp"
#include "tempora/regions.hpp"
#include "tempora/report.hpp"
#include "tempora/scenarios.hpp"
#include "tempora/sdp.hpp"

using namespace tempora;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kNumerical = 3;

struct SolveArgs {
  std::string method = "auto";
  std::string solver = "auto";
  std::optional<double> tol;
  std::optional<int> max_iter;
};

void add_solve_flags(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--method", a.method, "simplified | moments | auto")
      ->check(CLI::IsMember({"auto", "simplified", "moments"}));
  cmd->add_option("--solver", a.solver, "ipm | admm | auto")
      ->check(CLI::IsMember({"auto", "ipm", "admm"}));
  cmd->add_option("--tol", a.tol, "solver tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", a.max_iter, "iteration cap")->check(CLI::PositiveNumber);
}

struct Solved {
  std::string method;
  SdpSolution solution;
  DualCertificate certificate;
  double tol = 0.0;
  double wall_ms = 0.0;
  std::optional<CorrelationProblem> correlation;
  std::optional<MomentProblem> moments;
};

Solved solve(const Scenario& scenario, const SolveArgs& a) {
  Solved out;
  out.method = a.method;
  if (out.method == "auto") out.method = is_pairwise_correlator(scenario) ? "simplified" : "moments";
  const auto start = std::chrono::steady_clock::now();

  if (out.method == "simplified") {
    if (a.solver == "admm") throw InputError("the simplified method uses the ipm solver only");
    out.tol = a.tol.value_or(1e-8);
    out.correlation = correlation_problem(scenario);
    out.solution = solve_correlation(*out.correlation, out.tol);
    out.certificate = verify_dual_certificate(*out.correlation, out.solution, 10 * out.tol);
  } else {
    out.moments = build_problem(scenario);
    std::string solver = a.solver;
    if (solver == "auto") solver = out.moments->dimension() <= 300 ? "ipm" : "admm";
    if (solver == "ipm") {
      IpmOptions o;
      if (a.tol) o.tol = *a.tol;
      if (a.max_iter) o.max_iter = *a.max_iter;
      out.tol = o.tol;
      out.solution = solve_moment_ipm(*out.moments, o);
      // Under auto, a stalled interior-point run hands over to ADMM.
      if (!out.solution.converged && a.solver == "auto") solver = "admm";
    }
    if (solver == "admm") {
      AdmmOptions o;
      if (a.tol) o.tol = *a.tol;
      if (a.max_iter) o.max_iter = *a.max_iter;
      out.tol = o.tol;
      out.solution = solve_moment_admm(*out.moments, o);
    }
    out.certificate = verify_dual_certificate(*out.moments, out.solution, 10 * out.tol);
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

int cmd_bound(const std::string& spec, const SolveArgs& a, bool as_json) {
  const Scenario scenario = resolve_scenario(spec);
  const Solved s = solve(scenario, a);
  const RunReport report = make_report(scenario.name, s.method, s.solution, s.certificate,
                                       scenario.reference_values, s.wall_ms);
  std::cout << (as_json ? report_json(report) + "\n" : report_table(report));
  if (!s.solution.converged) {
    std::cerr << "tempora: solver did not converge\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_classical(const std::string& spec, bool as_json) {
  const Scenario scenario = resolve_scenario(spec);
  const double nchv = nchv_bound(scenario);
  const double alg = algebraic_max(scenario);
  if (as_json) {
    json doc = {{"scenario", scenario.name}, {"nchv", nchv}, {"algebraic", alg}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << std::setprecision(12) << "scenario   " << scenario.name << '\n'
              << "nchv       " << nchv << '\n'
              << "algebraic  " << alg << '\n';
  }
  return kOk;
}

int cmd_realize(const std::string& spec, const SolveArgs& a, const std::string& out_path) {
  const Scenario scenario = resolve_scenario(spec);
  const Solved s = solve(scenario, a);
  if (!s.solution.converged) {
    std::cerr << "tempora: solver did not converge; no realization written\n";
    return kNumerical;
  }
  RealizationFile file;
  file.scenario = scenario.name;
  file.method = s.method;
  file.primal_value = s.solution.primal_value;
  file.tolerance = s.tol;
  std::ostringstream info;
  if (s.correlation) {
    const GramVectors g = gram_vectors(s.solution.matrix);
    file.realization = observables_from_vectors(g);
    info << "gram rank          " << g.dimension() << '\n';
  } else {
    const GnsResult gns = gns_from_moments(s.solution, *s.moments, scenario);
    file.realization = std::move(gns.realization);
    info << "moment index size  " << s.moments->dimension() << '\n'
         << "moment rank        " << gns.rank << '\n'
         << "perturbation       " << gns.perturbation << '\n';
  }
  validate(file.realization);
  save_realization(out_path, file);
  const double simulated = simulate_objective(file.realization, scenario);
  std::cout << std::setprecision(12) << "scenario           " << scenario.name << '\n'
            << "method             " << s.method << '\n'
            << info.str() << "dimension          " << file.realization.dimension << '\n'
            << "primal             " << file.primal_value << '\n'
            << "simulated          " << simulated << '\n'
            << "written            " << out_path << '\n';
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& spec, bool as_json) {
  const RealizationFile file = load_realization(path);
  const Scenario scenario = resolve_scenario(spec);
  const RealizationCheck check = check_realization(file.realization);
  const double invariant_tol = 1e-8;
  std::string failure;
  try {
    validate(file.realization, invariant_tol);
  } catch (const NumericalError& e) {
    failure = e.what();
  }
  double simulated = std::nan("");
  double deviation = std::nan("");
  if (failure.empty()) {
    simulated = simulate_objective(file.realization, scenario);
    deviation = std::abs(simulated - file.primal_value);
  }
  const double allowed = 10 * file.tolerance;
  const bool ok = failure.empty() && deviation <= allowed;
  if (as_json) {
    json doc = {{"scenario", scenario.name},
                {"dimension", file.realization.dimension},
                {"recorded_primal", file.primal_value},
                {"simulated", failure.empty() ? json(simulated) : json(nullptr)},
                {"deviation", failure.empty() ? json(deviation) : json(nullptr)},
                {"allowed", allowed},
                {"invariant_violation", check.worst()},
                {"ok", ok}};
    if (!failure.empty()) doc["failure"] = failure;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << std::setprecision(12) << "scenario             " << scenario.name << '\n'
              << "dimension            " << file.realization.dimension << '\n'
              << "invariant violation  " << check.worst() << '\n';
    if (!failure.empty()) {
      std::cout << "FAILED: " << failure << '\n';
    } else {
      std::cout << "recorded primal      " << file.primal_value << '\n'
                << "simulated            " << simulated << '\n'
                << "deviation            " << deviation << " (allowed " << allowed << ")\n"
                << (ok ? "ok" : "FAILED: deviation exceeds 10x the recorded tolerance") << '\n';
    }
  }
  return ok ? kOk : kNumerical;
}

int cmd_lg_region(int grid, const std::string& out_path) {
  const auto points = sample_surface(grid);
  if (out_path.empty() || out_path == "-") {
    write_surface_csv(std::cout, points);
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    write_surface_csv(out, points);
    std::cerr << points.size() << " boundary points written to " << out_path << '\n';
  }
  return kOk;
}

int cmd_ncycle(int n, bool analytic, bool do_solve, double tol, bool as_json) {
  if (n < 3) throw InputError("--n must be at least 3");
  const double closed = ncycle_bound(n);
  if (!analytic && !do_solve) analytic = true;
  json doc = {{"n", n}};
  if (analytic) doc["analytic"] = closed;
  int code = kOk;
  if (do_solve) {
    const auto p = ncycle(NCycleSpec::canonical(n));
    const SdpSolution s = solve_correlation(p, tol);
    doc["sdp"] = s.primal_value;
    doc["difference"] = s.primal_value - closed;
    doc["converged"] = s.converged;
    if (!s.converged) code = kNumerical;
  }
  if (as_json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << std::setprecision(12);
    if (analytic) std::cout << "analytic    " << closed << '\n';
    if (do_solve) {
      std::cout << "sdp         " << doc["sdp"].get<double>() << '\n'
                << "difference  " << std::setprecision(3) << doc["difference"].get<double>()
                << '\n';
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on temporal correlations from sequential measurements"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string file_arg;
  std::string out_arg;
  bool as_json = false;
  SolveArgs solve_args;

  auto* bound = app.add_subcommand("bound", "upper bound on the sequential quantum value");
  bound->add_option("scenario", scenario_arg, "scenario file or builtin:NAME")->required();
  add_solve_flags(bound, solve_args);
  bound->add_flag("--json", as_json, "machine-readable report");

  auto* classical = app.add_subcommand("classical", "noncontextual and algebraic maxima");
  classical->add_option("scenario", scenario_arg, "scenario file or builtin:NAME")->required();
  classical->add_flag("--json", as_json, "machine-readable report");

  auto* realize = app.add_subcommand("realize", "solve and reconstruct a quantum realization");
  realize->add_option("scenario", scenario_arg, "scenario file or builtin:NAME")->required();
  realize->add_option("--out", out_arg, "realization JSON to write")->required();
  add_solve_flags(realize, solve_args);

  auto* verify = app.add_subcommand("verify", "re-simulate a realization file");
  verify->add_option("realization", file_arg, "realization JSON")->required();
  verify->add_option("scenario", scenario_arg, "scenario file or builtin:NAME")->required();
  verify->add_flag("--json", as_json, "machine-readable report");

  int grid = 0;
  auto* lg = app.add_subcommand("lg-region", "sample the quantum Leggett-Garg boundary as CSV");
  lg->add_option("--grid", grid, "points per axis (>= 2)")->required();
  lg->add_option("--out", out_arg, "CSV path (default stdout)");

  int n = 0;
  bool analytic = false;
  bool do_solve = false;
  double ncycle_tol = 1e-8;
  auto* nc = app.add_subcommand("ncycle", "closed-form and numerical n-cycle bound");
  nc->add_option("--n", n, "cycle length (>= 3)")->required();
  nc->add_flag("--analytic", analytic, "print N cos(pi/N)");
  nc->add_flag("--solve", do_solve, "solve the correlation SDP");
  nc->add_option("--tol", ncycle_tol, "solver tolerance")->check(CLI::PositiveNumber);
  nc->add_flag("--json", as_json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*bound) return cmd_bound(scenario_arg, solve_args, as_json);
    if (*classical) return cmd_classical(scenario_arg, as_json);
    if (*realize) return cmd_realize(scenario_arg, solve_args, out_arg);
    if (*verify) return cmd_verify(file_arg, scenario_arg, as_json);
    if (*lg) return cmd_lg_region(grid, out_arg);
    if (*nc) return cmd_ncycle(n, analytic, do_solve, ncycle_tol, as_json);
  } catch (const InputError& e) {
    std::cerr << "tempora: " << e.what() << '\n';
    return kInput;
  } catch (const NumericalError& e) {
    std::cerr << "tempora: " << e.what() << '\n';
    return kNumerical;
  }
  return kInput;
}
