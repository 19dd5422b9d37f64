#include "tempora/sdp.hpp"

#include "tempora/numerics.hpp"

namespace tempora {

CorrelationProblem make_correlation_problem(const MatrixXd& lambda) {
  if (lambda.rows() != lambda.cols()) throw InputError("coefficient matrix is not square");
  if (!lambda.allFinite()) throw InputError("coefficient matrix has non-finite entries");
  CorrelationProblem p;
  p.coefficients = symmetrize(lambda);
  p.offset = p.coefficients.diagonal().sum();
  p.coefficients.diagonal().setZero();
  return p;
}

StandardSdp to_standard_form(const CorrelationProblem& p) {
  const auto n = static_cast<int>(p.dimension());
  StandardSdp sdp;
  sdp.c = p.coefficients;
  sdp.offset = p.offset;
  sdp.b = VectorXd::Ones(n);
  sdp.trace_bound = n;
  sdp.constraints.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sdp.constraints[static_cast<std::size_t>(i)].terms = {{i, i, 1.0}};
  return sdp;
}

StandardSdp to_standard_form(const MomentProblem& p) {
  StandardSdp sdp;
  sdp.c = p.objective;
  // Every diagonal entry of a feasible moment matrix is at most X(0,0) = 1:
  // X(u,u) = X(u,v) for v = u without its last letter, and the 2x2 minor on
  // (u, v) then gives X(u,u) <= X(v,v).
  sdp.trace_bound = static_cast<double>(p.dimension());

  std::vector<double> b;
  sdp.constraints.push_back({{{0, 0, 1.0}}});
  b.push_back(1.0);
  for (const auto& [i, j] : p.zero_entries) {
    sdp.constraints.push_back({{{i, j, 1.0}}});
    b.push_back(0.0);
  }
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    if (static_cast<int>(c) == p.normalization_class) continue;
    const auto& entries = p.classes[c].entries;
    const auto [i0, j0] = entries.front();
    for (std::size_t e = 1; e < entries.size(); ++e) {
      sdp.constraints.push_back({{{i0, j0, 1.0}, {entries[e].first, entries[e].second, -1.0}}});
      b.push_back(0.0);
    }
  }
  sdp.b = Eigen::Map<VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return sdp;
}

VectorXd apply_constraints(const StandardSdp& sdp, const MatrixXd& x) {
  VectorXd out(static_cast<Eigen::Index>(sdp.constraints.size()));
  for (std::size_t k = 0; k < sdp.constraints.size(); ++k) {
    double v = 0.0;
    for (const auto& t : sdp.constraints[k].terms) v += t.value * 0.5 * (x(t.row, t.col) + x(t.col, t.row));
    out(static_cast<Eigen::Index>(k)) = v;
  }
  return out;
}

MatrixXd adjoint(const StandardSdp& sdp, const VectorXd& y) {
  MatrixXd out = MatrixXd::Zero(sdp.dimension(), sdp.dimension());
  for (std::size_t k = 0; k < sdp.constraints.size(); ++k) {
    const double yk = y(static_cast<Eigen::Index>(k));
    for (const auto& t : sdp.constraints[k].terms) {
      if (t.row == t.col) {
        out(t.row, t.row) += yk * t.value;
      } else {
        out(t.row, t.col) += 0.5 * yk * t.value;
        out(t.col, t.row) += 0.5 * yk * t.value;
      }
    }
  }
  return out;
}

}  // namespace tempora
