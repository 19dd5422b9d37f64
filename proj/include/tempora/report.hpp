#pragma once

#include <map>
#include <string>

#include "tempora/sdp.hpp"

namespace tempora {

struct ReferenceDelta {
  double value = 0.0;
  double delta = 0.0;  // primal - value
};

struct RunReport {
  std::string scenario;
  std::string method;
  std::string solver;
  double primal = 0.0;
  double dual = 0.0;  // certified upper bound
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  bool converged = false;
  std::map<std::string, ReferenceDelta> references;

  double gap() const { return dual - primal; }
};

// Fills the numeric fields from a solution and its certificate. The reported
// dual is the certified bound, clamped so the gap is never negative.
RunReport make_report(const std::string& scenario, const std::string& method,
                      const SdpSolution& s, const DualCertificate& cert,
                      const std::map<std::string, double>& references, double wall_ms);

std::string report_json(const RunReport& r);
RunReport report_from_json(const std::string& text);
std::string report_table(const RunReport& r);

}  // namespace tempora
