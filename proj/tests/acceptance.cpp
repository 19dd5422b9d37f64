// Acceptance run: one PASS/FAIL line per criterion; exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tempora/classical.hpp"
#include "tempora/moment.hpp"
#include "tempora/numerics.hpp"
#include "tempora/opalg.hpp"
#include "tempora/realize.hpp"
#include "tempora/regions.hpp"
#include "tempora/scenarios.hpp"
#include "tempora/sdp.hpp"

using namespace tempora;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail << std::setprecision(10);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail << " [runtime " << secs << " s exceeds " << limit_s << " s]";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << title << " ("
            << std::setprecision(3) << secs << " s):" << o.detail.str() << std::endl;
}

}  // namespace

int main() {
  std::cout << std::setprecision(10);

  criterion(1, "n-cycle exact bounds, N = 3..10", 1.0, [](Outcome& o) {
    double worst = 0.0, worst_eig = std::numeric_limits<double>::infinity();
    for (int n = 3; n <= 10; ++n) {
      const auto p = ncycle(NCycleSpec::canonical(n));
      const auto s = solve_correlation(p, 1e-8);
      const auto cert = verify_dual_certificate(p, s);
      worst = std::max(worst, std::abs(s.primal_value - n * std::cos(std::numbers::pi / n)));
      worst_eig = std::min(worst_eig, cert.min_eigenvalue);
      o.require(s.converged, "N=" + std::to_string(n) + " converged");
    }
    o.detail << " max |SDP - N cos(pi/N)| = " << worst << ", min slack eigenvalue = " << worst_eig;
    o.require(worst < 1e-6, "value within 1e-6");
    o.require(worst_eig >= -1e-8, "slack eigenvalue >= -1e-8");
  });

  criterion(2, "S5 simplified and general methods", 5.0, [](Outcome& o) {
    const double target = 1.25 * (1 + std::sqrt(5.0));
    const Scenario s = ncycle_scenario(NCycleSpec::canonical(5));
    const auto simple = solve_correlation(correlation_problem(s), 1e-8);
    const MomentProblem p = build_problem(s);
    const auto general = solve_moment_ipm(p, 1e-8);
    o.detail << " simplified = " << simple.primal_value << ", general (" << p.dimension() << "x"
             << p.dimension() << ") = " << general.primal_value;
    o.require(std::abs(simple.primal_value - target) < 1e-6, "simplified within 1e-6");
    o.require(p.dimension() == 26, "26x26 moment matrix");
    o.require(general.converged, "general converged");
    o.require(std::abs(general.primal_value - simple.primal_value) < 1e-4, "agreement within 1e-4");
  });

  criterion(3, "Leggett-Garg value, classical bound, region geometry", 10.0, [](Outcome& o) {
    const Scenario lg = leggett_garg();
    const double q = solve_correlation(correlation_problem(lg), 1e-8).primal_value;
    const double c = nchv_bound(lg);
    int exceptions = 0;
    for (int i = 0; i <= 50; ++i)
      for (int j = 0; j <= 50; ++j)
        for (int k = 0; k <= 50; ++k) {
          const LgPoint p{-1 + i / 25.0, -1 + j / 25.0, -1 + k / 25.0};
          if (classical_member(p) && !quantum_member(p)) ++exceptions;
        }
    double surface = 0.0;
    for (const auto& s : sample_surface(101)) surface = std::max(surface, std::abs(lg_determinant(s.point)));
    o.detail << " quantum = " << q << ", classical = " << c << ", grid exceptions = " << exceptions
             << ", max surface residual = " << surface;
    o.require(std::abs(q - 1.5) < 1e-6, "LG maximum 3/2 within 1e-6");
    o.require(c == 1.0, "classical bound 1");
    o.require(exceptions == 0, "classical subset of quantum");
    o.require(surface < 1e-9, "surface equality within 1e-9");
  });

  criterion(4, "Yu-Oh: NCHV, algebraic, sequential SDP (ADMM)", 600.0, [](Outcome& o) {
    const Scenario y = yu_oh();
    const double nchv = nchv_bound(y);
    const double alg = algebraic_max(y);
    const MomentProblem p = build_problem(y);
    AdmmOptions opts;
    opts.tol = 1e-6;
    const auto s = solve_moment_admm(p, opts);
    o.detail << " nchv = " << nchv << ", algebraic = " << alg << ", SDP (" << p.dimension() << "x"
             << p.dimension() << ", " << s.iterations << " it) = " << s.primal_value;
    o.require(nchv == 16.0, "nchv 16");
    o.require(alg == 50.0, "algebraic 50");
    o.require(p.dimension() == 170, "170x170");
    o.require(s.converged, "ADMM converged");
    o.require(std::abs(s.primal_value - 17.794) < 1e-2, "SDP 17.794 within 1e-2");
  });

  criterion(5, "GYNI: classical, algebraic, sequential SDP", 30.0, [](Outcome& o) {
    const Scenario g = gyni();
    const double c = nchv_bound(g);
    const double alg = algebraic_max(g);
    const MomentProblem p = build_problem(g);
    const auto ipm = solve_moment_ipm(p, 1e-8);
    const auto admm = solve_moment_admm(p, 1e-6, 50000);
    o.detail << " classical = " << c << ", algebraic = " << alg << ", IPM = " << ipm.primal_value
             << ", ADMM = " << admm.primal_value << " (target 1.0225)";
    o.require(c == 1.0, "classical 1");
    o.require(alg == 2.0, "algebraic 2");
    o.require(ipm.converged && admm.converged, "both backends converged");
    o.require(std::abs(ipm.primal_value - admm.primal_value) < 1e-4, "backends agree within 1e-4");
    o.require(std::abs(ipm.primal_value - 1.0225) < 1e-3, "SDP 1.0225 within 1e-3");
  });

  criterion(6, "realization round trips", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(6);
    // (a) Clifford construction for N = 5 on random states.
    const int n = 5;
    MatrixXd x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = std::cos((i - j) * (n + 1) * std::numbers::pi / n);
    QuantumRealization r = observables_from_vectors(gram_vectors(x));
    double worst_a = 0.0;
    for (int t = 0; t < 10; ++t) {
      r.state = testing_support::random_density(r.dimension, rng);
      for (int i = 0; i < n; ++i)
        worst_a = std::max(worst_a, std::abs(sequential_correlator(r, {i, (i + 1) % n}) +
                                             std::cos(std::numbers::pi / n)));
    }
    // (b) GNS from the GYNI optimum.
    const Scenario g = gyni();
    const MomentProblem p = build_problem(g);
    const double tol = 1e-8;
    const auto sol = solve_moment_ipm(p, tol);
    const GnsResult gns = gns_from_moments(sol, p, g);
    validate(gns.realization);
    const double dev_b = std::abs(simulate_objective(gns.realization, g) - sol.primal_value);
    // (c) order independence on random binary realizations.
    double worst_c = 0.0;
    const Scenario three = testing_support::binary_scenario(3, 1);
    for (int t = 0; t < 100; ++t) {
      const auto m = testing_support::random_model(three, 2 + t % 3, rng);
      QuantumRealization q;
      q.dimension = m.dim;
      q.state = m.rho;
      for (int i = 0; i < 3; ++i) {
        q.outcome_counts.push_back(2);
        q.projectors[{i, 0}] = m.proj[static_cast<std::size_t>(i)][0];
        q.projectors[{i, 1}] = m.proj[static_cast<std::size_t>(i)][1];
      }
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          worst_c = std::max(worst_c, std::abs(sequential_correlator(q, {i, j}) -
                                               sequential_correlator(q, {j, i})));
    }
    o.detail << " (a) max deviation = " << worst_a << "; (b) GNS dim " << gns.rank
             << ", |simulated - primal| = " << dev_b << "; (c) max asymmetry = " << worst_c;
    o.require(worst_a < 1e-10, "(a) within 1e-10");
    o.require(dev_b < 10 * tol, "(b) within 10x solver tolerance");
    o.require(worst_c < 1e-10, "(c) within 1e-10");
  });

  criterion(7, "property suites", 0.0, [](Outcome& o) {
    // Confluence to length 3 over 3 settings (one ternary).
    const Scenario s = testing_support::make_scenario({2, 3, 2}, 3);
    auto words = enumerate_words(s, 3);
    words.push_back(Word::zero());
    long violations = 0, triples = 0;
    for (const auto& a : words)
      for (const auto& b : words)
        for (const auto& c : words) {
          ++triples;
          if (concat_reduce(concat_reduce(a, b), c) != concat_reduce(a, concat_reduce(b, c))) ++violations;
        }
    // Clifford anticommutation.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    double cliff = 0.0;
    for (int d = 1; d <= 6; ++d) {
      const auto gam = clifford_generators(d);
      const auto dim = gam.front().rows();
      for (int t = 0; t < 20; ++t) {
        VectorXd u(d), v(d);
        for (int k = 0; k < d; ++k) {
          u(k) = gauss(rng);
          v(k) = gauss(rng);
        }
        u.normalize();
        v.normalize();
        MatrixXcd au = MatrixXcd::Zero(dim, dim), av = MatrixXcd::Zero(dim, dim);
        for (int k = 0; k < d; ++k) {
          au += u(k) * gam[k];
          av += v(k) * gam[k];
        }
        cliff = std::max(cliff, (au * av + av * au - 2 * u.dot(v) * MatrixXcd::Identity(dim, dim))
                                    .cwiseAbs()
                                    .maxCoeff());
      }
    }
    // Circulant spectrum.
    double circ = 0.0;
    for (int n = 3; n <= 12; ++n) {
      const auto eig = sym_eig(cycle_matrix(n));
      std::vector<double> expect;
      for (int j = 0; j < n; ++j) expect.push_back(-2 * std::cos(2 * std::numbers::pi * j / n));
      std::sort(expect.begin(), expect.end());
      for (int j = 0; j < n; ++j) circ = std::max(circ, std::abs(eig.values(j) - expect[static_cast<std::size_t>(j)]));
    }
    // Sandwich on every builtin.
    int sandwich_fail = 0;
    for (const auto& name : builtin_names()) {
      const Scenario b = builtin_scenario(name);
      const MomentProblem p = build_problem(b);
      const auto sol = p.dimension() <= 300 ? solve_moment_ipm(p, 1e-8) : solve_moment_admm(p);
      if (!(nchv_bound(b) <= sol.primal_value + 1e-6 && sol.primal_value <= algebraic_max(b) + 1e-6)) {
        ++sandwich_fail;
        o.detail << " sandwich broken for " << name;
      }
    }
    o.detail << " confluence violations " << violations << "/" << triples
             << ", Clifford residual = " << cliff << ", circulant error = " << circ
             << ", sandwich failures = " << sandwich_fail << "/" << builtin_names().size();
    o.require(violations == 0, "confluence");
    o.require(cliff < 1e-10, "Clifford < 1e-10");
    o.require(circ < 1e-10, "circulant within 1e-10");
    o.require(sandwich_fail == 0, "sandwich");
  });

  criterion(8, "Opt2/Opt3 scenario-file path", 0.0, [](Outcome& o) {
    const Scenario s = load_scenario(std::string(TEMPORA_DATA) + "/opt2_shaped.json");
    const MomentProblem p = build_problem(s);
    const auto sol = solve_moment_admm(p);
    o.detail << " Opt2-shaped file: " << s.num_settings() << " settings, " << p.dimension() << "x"
             << p.dimension() << ", value " << sol.primal_value;
    o.require(p.dimension() == 170, "Opt2 shape 170x170");
    o.require(sol.converged, "solved");
    o.require(nchv_bound(s) <= sol.primal_value + 1e-4 && sol.primal_value <= algebraic_max(s) + 1e-4,
              "sandwich");
    // Published coefficient tables are external; check targets only when supplied.
    const std::pair<const char*, double> targets[] = {{"TEMPORA_OPT2_FILE", 20.287},
                                                      {"TEMPORA_OPT3_FILE", 32.791}};
    for (const auto& [var, target] : targets) {
      const char* path = std::getenv(var);
      if (path == nullptr) {
        o.detail << "; " << var << " not set, target " << target << " not checked";
        continue;
      }
      const Scenario user = load_scenario(path);
      const auto value = solve_moment_admm(build_problem(user)).primal_value;
      o.detail << "; " << path << " = " << value;
      o.require(std::abs(value - target) < 1e-2, std::string(var) + " target");
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures;
}
