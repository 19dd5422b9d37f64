#include <algorithm>
#include <cmath>
#include <iostream>

#include "tempora/numerics.hpp"
#include "tempora/sdp.hpp"

namespace tempora {

namespace {

// Dual multipliers in the constraint order of to_standard_form(MomentProblem)
// for a dual matrix T = sum_k y_k A_k that already lies in span{A_k}.
VectorXd multipliers_from_dual_matrix(const MomentProblem& p, const MatrixXd& t) {
  std::vector<double> y;
  y.push_back(t(0, 0));
  auto half = [](int i, int j) { return i == j ? 1.0 : 0.5; };
  for (const auto& [i, j] : p.zero_entries) y.push_back(t(i, j) / half(i, j));
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    if (static_cast<int>(c) == p.normalization_class) continue;
    const auto& entries = p.classes[c].entries;
    for (std::size_t e = 1; e < entries.size(); ++e) {
      const auto [i, j] = entries[e];
      y.push_back(-t(i, j) / half(i, j));
    }
  }
  return Eigen::Map<VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

// Orthogonal projection onto span{A_k}: remove the weighted mean on each free class.
MatrixXd project_constraint_span(const MomentProblem& p, const MatrixXd& t) {
  MatrixXd out = t;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    if (static_cast<int>(c) == p.normalization_class) continue;
    const auto& entries = p.classes[c].entries;
    double sum = 0.0, weight = 0.0;
    for (const auto& [i, j] : entries) {
      const double w = i == j ? 1.0 : 2.0;
      sum += w * t(i, j);
      weight += w;
    }
    const double mean = sum / weight;
    for (const auto& [i, j] : entries) {
      out(i, j) -= mean;
      if (i != j) out(j, i) -= mean;
    }
  }
  return out;
}

}  // namespace

SdpSolution solve_moment_admm(const MomentProblem& p, const AdmmOptions& options) {
  const auto n = static_cast<Eigen::Index>(p.dimension());
  const MatrixXd& c = p.objective;

  double rho = options.rho;
  MatrixXd z = MatrixXd::Identity(n, n);
  z = project_affine(p, z);
  MatrixXd u = MatrixXd::Zero(n, n);
  MatrixXd x = z;

  SdpSolution out;
  out.backend = "admm";
  const double alpha = options.relaxation;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    x = project_affine(p, z - u + c / rho);
    const MatrixXd xr = alpha * x + (1.0 - alpha) * z;
    const MatrixXd z_prev = z;
    z = psd_project(xr + u);
    u += xr - z;

    const double r_prim = (x - z).norm() / std::max(1.0, std::max(x.norm(), z.norm()));
    const double r_dual = rho * (z - z_prev).norm() / std::max(1.0, rho * u.norm());
    out.iterations = iter;
    out.primal_residual = r_prim;
    out.dual_residual = r_dual;
    if (options.verbose && iter % 100 == 0) {
      std::cerr << "admm " << iter << " obj=" << c.cwiseProduct(x).sum() << " rp=" << r_prim
                << " rd=" << r_dual << " rho=" << rho << "\n";
    }
    if (r_prim <= options.tol && r_dual <= options.tol) {
      out.converged = true;
      break;
    }
    // Residual balancing.
    if (iter % 10 == 0) {
      if (r_prim > 10.0 * r_dual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (r_dual > 10.0 * r_prim) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }

  // Dual slack S = -rho U is PSD by construction; C + S is moved into the
  // constraint span to read off multipliers.
  const MatrixXd t = project_constraint_span(p, symmetrize(c - rho * u));
  out.matrix = x;
  out.primal_value = c.cwiseProduct(x).sum();
  out.dual_variables = multipliers_from_dual_matrix(p, t);
  out.dual_value = t(0, 0);
  return out;
}

SdpSolution solve_moment_admm(const MomentProblem& p, double tol, int max_iter) {
  AdmmOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return solve_moment_admm(p, opts);
}

}  // namespace tempora
