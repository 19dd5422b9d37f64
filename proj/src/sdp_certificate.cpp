#include <algorithm>

#include "tempora/numerics.hpp"
#include "tempora/sdp.hpp"

namespace tempora {

DualCertificate verify_dual_certificate(const StandardSdp& sdp, const SdpSolution& s,
                                        double tol) {
  if (s.dual_variables.size() != static_cast<Eigen::Index>(sdp.constraints.size())) {
    throw InputError("dual certificate: solution carries " +
                     std::to_string(s.dual_variables.size()) + " multipliers, problem has " +
                     std::to_string(sdp.constraints.size()) + " constraints");
  }
  DualCertificate cert;
  cert.primal_value = s.primal_value;
  cert.dual_value = sdp.b.dot(s.dual_variables) + sdp.offset;
  const MatrixXd slack = adjoint(sdp, s.dual_variables) - sdp.c;
  cert.min_eigenvalue = min_eigenvalue(slack);
  // <C,X> = b^T y - <slack, X> <= b^T y - min(0, nu) tr(X).
  cert.certified_bound =
      cert.dual_value + std::max(0.0, -cert.min_eigenvalue) * sdp.trace_bound;
  cert.valid = cert.certified_bound >= cert.primal_value - tol;
  return cert;
}

DualCertificate verify_dual_certificate(const CorrelationProblem& p, const SdpSolution& s,
                                        double tol) {
  return verify_dual_certificate(to_standard_form(p), s, tol);
}

DualCertificate verify_dual_certificate(const MomentProblem& p, const SdpSolution& s,
                                        double tol) {
  return verify_dual_certificate(to_standard_form(p), s, tol);
}

}  // namespace tempora
