#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "tempora/numerics.hpp"
#include "tempora/sdp.hpp"

namespace tempora {

namespace {

// tr(S_ab X S_cd W) with S_ab = (e_a e_b^T + e_b e_a^T) / 2.
inline double pair_trace(const MatrixXd& x, const MatrixXd& w, int a, int b, int c, int d) {
  return 0.25 * (x(b, c) * w(d, a) + x(b, d) * w(c, a) + x(a, c) * w(d, b) + x(a, d) * w(c, b));
}

// M_kl = tr(A_k X A_l Z^{-1}).
MatrixXd schur_complement(const StandardSdp& sdp, const MatrixXd& x, const MatrixXd& zinv) {
  const auto m = static_cast<Eigen::Index>(sdp.constraints.size());
  MatrixXd schur(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& tk = sdp.constraints[static_cast<std::size_t>(k)].terms;
    for (Eigen::Index l = k; l < m; ++l) {
      const auto& tl = sdp.constraints[static_cast<std::size_t>(l)].terms;
      double v = 0.0;
      for (const auto& s : tk) {
        for (const auto& t : tl) v += s.value * t.value * pair_trace(x, zinv, s.row, s.col, t.row, t.col);
      }
      schur(k, l) = schur(l, k) = v;
    }
  }
  return schur;
}

// Largest step alpha with m + alpha * d still PSD (infinity if unbounded).
double max_step(const MatrixXd& m, const MatrixXd& d) {
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  MatrixXd l = llt.matrixL();
  MatrixXd t = l.triangularView<Eigen::Lower>().solve(d);
  t = l.triangularView<Eigen::Lower>().solve(t.transpose()).transpose();
  const double lo = min_eigenvalue(t);
  return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

struct Direction {
  MatrixXd dx;
  VectorXd dy;
  MatrixXd dz;
};

class SchurSolver {
 public:
  explicit SchurSolver(MatrixXd schur) : schur_(std::move(schur)) {
    llt_.compute(schur_);
    use_llt_ = llt_.info() == Eigen::Success;
    if (!use_llt_) {
      // Near the optimum the Schur complement can lose definiteness to rounding.
      MatrixXd reg = schur_;
      reg.diagonal().array() += 1e-12 * std::max(1.0, schur_.diagonal().cwiseAbs().maxCoeff());
      ldlt_.compute(reg);
    }
  }

  // Two rounds of iterative refinement recover most of the accuracy lost to
  // the conditioning of M late in the run.
  VectorXd solve(const VectorXd& rhs) const {
    VectorXd x = raw_solve(rhs);
    for (int round = 0; round < 2; ++round) x += raw_solve(rhs - schur_ * x);
    return x;
  }

 private:
  VectorXd raw_solve(const VectorXd& rhs) const {
    if (use_llt_) return llt_.solve(rhs);
    return ldlt_.solve(rhs);
  }

  MatrixXd schur_;
  Eigen::LLT<MatrixXd> llt_;
  Eigen::LDLT<MatrixXd> ldlt_;
  bool use_llt_ = true;
};

// Factored A A^T, used to put a step back onto A(dX) = rp exactly.
class ConstraintGram {
 public:
  explicit ConstraintGram(const StandardSdp& sdp) {
    const auto m = static_cast<Eigen::Index>(sdp.constraints.size());
    std::map<std::pair<int, int>, std::vector<std::pair<Eigen::Index, double>>> touching;
    for (Eigen::Index k = 0; k < m; ++k) {
      for (const auto& t : sdp.constraints[static_cast<std::size_t>(k)].terms) {
        touching[{std::min(t.row, t.col), std::max(t.row, t.col)}].push_back({k, t.value});
      }
    }
    MatrixXd g = MatrixXd::Zero(m, m);
    for (const auto& [pos, list] : touching) {
      const double w = pos.first == pos.second ? 1.0 : 0.5;
      for (const auto& [k, vk] : list) {
        for (const auto& [l, vl] : list) g(k, l) += w * vk * vl;
      }
    }
    llt_.compute(g);
    ok_ = llt_.info() == Eigen::Success;
  }

  // Least-norm shift of x toward A(X) = b, shortened to keep x positive definite.
  void restore(const StandardSdp& sdp, MatrixXd& x) const {
    if (!ok_) return;
    const MatrixXd shift = adjoint(sdp, llt_.solve(sdp.b - apply_constraints(sdp, x)));
    const double t = std::min(1.0, 0.95 * max_step(x, shift));
    if (t > 0.0) x = symmetrize(x + t * shift);
  }

 private:
  Eigen::LLT<MatrixXd> llt_;
  bool ok_ = false;
};

// HKM direction for complementarity target tau*I with second-order term k.
Direction direction(const StandardSdp& sdp, const SchurSolver& schur, const MatrixXd& x,
                    const MatrixXd& zinv, const VectorXd& rp, const MatrixXd& rd, double tau,
                    const MatrixXd* k) {
  MatrixXd g = tau * zinv - x + x * rd * zinv;
  if (k != nullptr) g -= (*k) * zinv;
  Direction d;
  d.dy = schur.solve(apply_constraints(sdp, g) - rp);
  const MatrixXd ady = adjoint(sdp, d.dy);
  d.dz = ady - rd;
  d.dx = symmetrize(g - x * ady * zinv);
  return d;
}

}  // namespace

SdpSolution solve_ipm(const StandardSdp& sdp, const IpmOptions& options) {
  const Eigen::Index n = sdp.dimension();
  const auto m = static_cast<Eigen::Index>(sdp.constraints.size());
  if (sdp.c.rows() != sdp.c.cols() || sdp.b.size() != m) throw InputError("ipm: malformed problem");

  const double c_norm = sdp.c.norm();
  const double b_norm = sdp.b.norm();
  const double scale = std::max({10.0, std::sqrt(static_cast<double>(n)), c_norm});
  MatrixXd x = MatrixXd::Identity(n, n) * std::max(10.0, std::sqrt(static_cast<double>(n)));
  MatrixXd z = MatrixXd::Identity(n, n) * scale;
  VectorXd y = VectorXd::Zero(m);

  const ConstraintGram gram(sdp);
  SdpSolution out;
  out.backend = "ipm";
  // Late iterations can lose accuracy to conditioning; keep the best point seen.
  SdpSolution best;
  double best_merit = std::numeric_limits<double>::infinity();
  MatrixXd best_x = x;
  VectorXd best_y = y;
  int best_iter = 0;
  for (int iter = 0; iter <= options.max_iter; ++iter) {
    const VectorXd rp = sdp.b - apply_constraints(sdp, x);
    const MatrixXd rd = sdp.c - adjoint(sdp, y) + z;
    const double pobj = sdp.c.cwiseProduct(x).sum();
    const double dobj = sdp.b.dot(y);
    const double mu = x.cwiseProduct(z).sum() / static_cast<double>(n);

    out.iterations = iter;
    out.primal_residual = rp.norm() / (1.0 + b_norm);
    out.dual_residual = rd.norm() / (1.0 + c_norm);
    out.primal_value = pobj + sdp.offset;
    out.dual_value = dobj + sdp.offset;
    if (options.verbose) {
      std::cerr << "ipm " << iter << " p=" << out.primal_value << " d=" << out.dual_value
                << " rp=" << out.primal_residual << " rd=" << out.dual_residual << " mu=" << mu << "\n";
    }
    const double gap_scale = std::max(1.0, std::abs(out.primal_value));
    const double rel_gap = std::abs(out.dual_value - out.primal_value) / gap_scale;
    if (out.primal_residual <= options.tol && out.dual_residual <= options.tol &&
        rel_gap <= options.tol) {
      out.converged = true;
      best = out;
      best_x = x;
      best_y = y;
      break;
    }
    const double merit = std::max({out.primal_residual, out.dual_residual, rel_gap});
    if (merit < best_merit) {
      best_merit = merit;
      best = out;
      best_x = x;
      best_y = y;
      best_iter = iter;
    }
    if (iter == options.max_iter || iter - best_iter > 8) break;

    Eigen::LLT<MatrixXd> zfac(z);
    if (zfac.info() != Eigen::Success) break;  // rounding at the end of a stalled run
    const MatrixXd zinv = symmetrize(zfac.solve(MatrixXd::Identity(n, n)));
    const SchurSolver schur(schur_complement(sdp, x, zinv));

    // Predictor (affine scaling).
    const Direction pred = direction(sdp, schur, x, zinv, rp, rd, 0.0, nullptr);
    const double ap = std::min(1.0, max_step(x, pred.dx));
    const double ad = std::min(1.0, max_step(z, pred.dz));
    const double mu_aff =
        (x + ap * pred.dx).cwiseProduct(z + ad * pred.dz).sum() / static_cast<double>(n);
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    const MatrixXd second = pred.dx * pred.dz;
    const Direction corr = direction(sdp, schur, x, zinv, rp, rd, sigma * mu, &second);
    const double step = iter < 3 ? 0.9 : 0.98;
    const double alpha_p = std::min(1.0, step * max_step(x, corr.dx));
    const double alpha_d = std::min(1.0, step * max_step(z, corr.dz));
    if (alpha_p < 1e-12 && alpha_d < 1e-12) break;

    x = symmetrize(x + alpha_p * corr.dx);
    gram.restore(sdp, x);
    y += alpha_d * corr.dy;
    z = symmetrize(z + alpha_d * corr.dz);
  }
  best.iterations = out.iterations;
  best.matrix = best_x;
  best.dual_variables = best_y;
  return best;
}

SdpSolution solve_correlation(const CorrelationProblem& p, double tol) {
  IpmOptions opts;
  opts.tol = tol;
  return solve_ipm(to_standard_form(p), opts);
}

SdpSolution solve_moment_ipm(const MomentProblem& p, const IpmOptions& options) {
  if (p.dimension() > options.size_cap) {
    throw InputError("moment index of size " + std::to_string(p.dimension()) +
                     " exceeds the interior-point cap of " + std::to_string(options.size_cap));
  }
  return solve_ipm(to_standard_form(p), options);
}

SdpSolution solve_moment_ipm(const MomentProblem& p, double tol) {
  IpmOptions opts;
  opts.tol = tol;
  return solve_moment_ipm(p, opts);
}

}  // namespace tempora
