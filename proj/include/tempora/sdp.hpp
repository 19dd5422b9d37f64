#pragma once

#include <string>
#include <vector>

#include "tempora/moment.hpp"
#include "tempora/types.hpp"

namespace tempora {

// maximize sum_ij lambda_ij X_ij  s.t.  X >= 0, X_ii = 1.
// The diagonal of lambda is folded into `offset` since X_ii = 1 fixes it.
struct CorrelationProblem {
  MatrixXd coefficients;  // symmetric, zero diagonal
  double offset = 0.0;

  std::size_t dimension() const { return static_cast<std::size_t>(coefficients.rows()); }
};

CorrelationProblem make_correlation_problem(const MatrixXd& lambda);

// One linear functional <A, X> = sum_t value_t * X(row_t, col_t) over the
// upper triangle of a symmetric X.
struct LinearConstraint {
  struct Term {
    int row = 0;
    int col = 0;
    double value = 0.0;
  };
  std::vector<Term> terms;
};

// Standard primal form
//   maximize <C, X> + offset  s.t.  <A_k, X> = b_k,  X >= 0,
// with dual
//   minimize b^T y + offset   s.t.  Z = sum_k y_k A_k - C >= 0.
struct StandardSdp {
  MatrixXd c;
  std::vector<LinearConstraint> constraints;
  VectorXd b;
  double offset = 0.0;
  // Upper bound on tr(X) over the primal feasible set; used to turn a
  // slightly infeasible dual into a rigorous bound.
  double trace_bound = 0.0;

  Eigen::Index dimension() const { return c.rows(); }
};

StandardSdp to_standard_form(const CorrelationProblem& p);
// Constraint order: normalization, zero entries, then for each remaining class
// the chain X(first) - X(other) = 0 over its entries.
StandardSdp to_standard_form(const MomentProblem& p);

VectorXd apply_constraints(const StandardSdp& sdp, const MatrixXd& x);  // A(X)
MatrixXd adjoint(const StandardSdp& sdp, const VectorXd& y);            // sum_k y_k A_k

struct SdpSolution {
  MatrixXd matrix;
  double primal_value = 0.0;
  double dual_value = 0.0;
  VectorXd dual_variables;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string backend;

  double gap() const { return dual_value - primal_value; }
};

struct IpmOptions {
  double tol = 1e-8;
  int max_iter = 100;
  std::size_t size_cap = 300;  // moment-index cap for solve_moment_ipm
  bool verbose = false;
};

struct AdmmOptions {
  double tol = 1e-6;
  int max_iter = 50000;
  double rho = 1.0;
  double relaxation = 1.6;
  bool verbose = false;
};

// Primal-dual path following (HKM direction, Mehrotra predictor-corrector).
// Returns the last iterate with converged = false if the cap is hit.
SdpSolution solve_ipm(const StandardSdp& sdp, const IpmOptions& options = {});

SdpSolution solve_correlation(const CorrelationProblem& p, double tol = 1e-8);
SdpSolution solve_moment_ipm(const MomentProblem& p, const IpmOptions& options = {});
SdpSolution solve_moment_ipm(const MomentProblem& p, double tol);

// Splitting method: alternate the closed-form affine projection (class
// averaging, pinned entries) with PSD projection and scaled dual updates.
SdpSolution solve_moment_admm(const MomentProblem& p, const AdmmOptions& options = {});
SdpSolution solve_moment_admm(const MomentProblem& p, double tol, int max_iter);

struct DualCertificate {
  double dual_value = 0.0;      // b^T y + offset as reported
  double min_eigenvalue = 0.0;  // of the dual slack sum y_k A_k - C
  double certified_bound = 0.0; // rigorous upper bound on the primal optimum
  double primal_value = 0.0;
  bool valid = false;           // certified_bound >= primal_value - tol
};

DualCertificate verify_dual_certificate(const StandardSdp& sdp, const SdpSolution& s,
                                        double tol = 1e-6);
DualCertificate verify_dual_certificate(const CorrelationProblem& p, const SdpSolution& s,
                                        double tol = 1e-6);
DualCertificate verify_dual_certificate(const MomentProblem& p, const SdpSolution& s,
                                        double tol = 1e-6);

}  // namespace tempora
