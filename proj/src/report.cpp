#include "tempora/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "tempora/types.hpp"

namespace tempora {

using json = nlohmann::json;

RunReport make_report(const std::string& scenario, const std::string& method,
                      const SdpSolution& s, const DualCertificate& cert,
                      const std::map<std::string, double>& references, double wall_ms) {
  RunReport r;
  r.scenario = scenario;
  r.method = method;
  r.solver = s.backend;
  r.primal = s.primal_value;
  r.dual = std::max(cert.certified_bound, s.primal_value);
  r.primal_residual = s.primal_residual;
  r.dual_residual = s.dual_residual;
  r.iterations = s.iterations;
  r.wall_ms = wall_ms;
  r.converged = s.converged;
  for (const auto& [name, value] : references) r.references[name] = {value, s.primal_value - value};
  return r;
}

std::string report_json(const RunReport& r) {
  json refs = json::object();
  for (const auto& [name, ref] : r.references) refs[name] = {{"value", ref.value}, {"delta", ref.delta}};
  json doc = {{"scenario", r.scenario},
              {"method", r.method},
              {"solver", r.solver},
              {"primal", r.primal},
              {"dual", r.dual},
              {"gap", r.gap()},
              {"residuals", {{"primal", r.primal_residual}, {"dual", r.dual_residual}}},
              {"iterations", r.iterations},
              {"wall_ms", r.wall_ms},
              {"converged", r.converged},
              {"references", refs}};
  return doc.dump(2);
}

RunReport report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    RunReport r;
    r.scenario = doc.at("scenario").get<std::string>();
    r.method = doc.at("method").get<std::string>();
    r.solver = doc.at("solver").get<std::string>();
    r.primal = doc.at("primal").get<double>();
    r.dual = doc.at("dual").get<double>();
    r.primal_residual = doc.at("residuals").at("primal").get<double>();
    r.dual_residual = doc.at("residuals").at("dual").get<double>();
    r.iterations = doc.at("iterations").get<int>();
    r.wall_ms = doc.at("wall_ms").get<double>();
    r.converged = doc.value("converged", true);
    for (const auto& [name, ref] : doc.at("references").items()) {
      r.references[name] = {ref.at("value").get<double>(), ref.at("delta").get<double>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

std::string report_table(const RunReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "scenario    " << r.scenario << '\n'
     << "method      " << r.method << '\n'
     << "solver      " << r.solver << (r.converged ? "" : " (not converged)") << '\n'
     << "primal      " << r.primal << '\n'
     << "dual bound  " << r.dual << '\n'
     << "gap         " << std::setprecision(3) << r.gap() << '\n'
     << "residuals   " << r.primal_residual << " / " << r.dual_residual << '\n'
     << "iterations  " << r.iterations << '\n'
     << "wall        " << std::fixed << std::setprecision(1) << r.wall_ms << " ms\n";
  os.unsetf(std::ios::fixed);
  for (const auto& [name, ref] : r.references) {
    os << "  " << std::left << std::setw(22) << name << std::right << std::setprecision(10)
       << ref.value << "  delta " << std::setprecision(3) << ref.delta << '\n';
  }
  return os.str();
}

}  // namespace tempora
