#include "tempora/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tempora {

using nlohmann::json;

NCycleSpec NCycleSpec::canonical(int n) {
  NCycleSpec spec{n, std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), 1)};
  if (n > 0) spec.signs.back() = -1;
  return spec;
}

void validate(const NCycleSpec& spec) {
  if (spec.n < 3) throw InputError("n-cycle needs n >= 3");
  if (static_cast<int>(spec.signs.size()) != spec.n) throw InputError("n-cycle sign vector has wrong length");
  int negatives = 0;
  for (int g : spec.signs) {
    if (g != 1 && g != -1) throw InputError("n-cycle signs must be +1 or -1");
    negatives += g == -1;
  }
  if (negatives % 2 == 0) throw InputError("n-cycle needs an odd number of -1 signs");
}

CorrelationProblem ncycle(const NCycleSpec& spec) {
  validate(spec);
  MatrixXd lambda = MatrixXd::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const int j = (i + 1) % spec.n;
    lambda(i, j) += 0.5 * spec.signs[static_cast<std::size_t>(i)];
    lambda(j, i) += 0.5 * spec.signs[static_cast<std::size_t>(i)];
  }
  return make_correlation_problem(lambda);
}

Scenario ncycle_scenario(const NCycleSpec& spec) {
  validate(spec);
  Scenario s;
  s.name = "ncycle" + std::to_string(spec.n);
  for (int i = 0; i < spec.n; ++i) s.settings.push_back({i, 2});
  s.sequence_length = 2;
  for (int i = 0; i < spec.n; ++i) {
    const int j = (i + 1) % spec.n;
    s.objective.push_back({TermKind::correlator, {std::min(i, j), std::max(i, j)}, {},
                           static_cast<double>(spec.signs[static_cast<std::size_t>(i)])});
  }
  s.reference_values = {{"quantum", ncycle_bound(spec.n)},
                        {"classical", spec.n - 2.0},
                        {"algebraic", static_cast<double>(spec.n)}};
  return s;
}

double ncycle_bound(int n) {
  if (n < 3) throw InputError("n-cycle bound needs n >= 3");
  return n * std::cos(std::numbers::pi / n);
}

MatrixXd cycle_matrix(int n) {
  if (n < 3) throw InputError("cycle matrix needs n >= 3");
  MatrixXd w = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, (i + 1) % n) = -1.0;
    w((i + 1) % n, i) = -1.0;
  }
  return w;
}

RaySet yu_oh_rays() {
  return {{"z1", {1, 0, 0}},  {"z2", {0, 1, 0}},  {"z3", {0, 0, 1}},  {"y1-", {0, 1, -1}},
          {"y1+", {0, 1, 1}}, {"y2-", {1, 0, -1}}, {"y2+", {1, 0, 1}}, {"y3-", {1, -1, 0}},
          {"y3+", {1, 1, 0}}, {"h0", {1, 1, 1}},  {"h1", {-1, 1, 1}}, {"h2", {1, -1, 1}},
          {"h3", {1, 1, -1}}};
}

std::vector<std::pair<int, int>> orthogonality_edges(const RaySet& rays) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      int dot = 0;
      for (int k = 0; k < 3; ++k) dot += rays[i].v[static_cast<std::size_t>(k)] * rays[j].v[static_cast<std::size_t>(k)];
      if (dot == 0) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return edges;
}

Scenario leggett_garg() {
  Scenario s;
  s.name = "lg";
  s.settings = {{0, 2}, {1, 2}, {2, 2}};
  s.sequence_length = 2;
  s.objective = {{TermKind::correlator, {0, 1}, {}, 1.0},
                 {TermKind::correlator, {1, 2}, {}, 1.0},
                 {TermKind::correlator, {0, 2}, {}, -1.0}};
  s.reference_values = {{"classical", 1.0}, {"quantum", 1.5}};
  return s;
}

Scenario yu_oh() {
  const RaySet rays = yu_oh_rays();
  Scenario s;
  s.name = "yu-oh";
  for (std::size_t i = 0; i < rays.size(); ++i) s.settings.push_back({static_cast<int>(i), 2});
  s.sequence_length = 2;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    s.objective.push_back({TermKind::correlator, {static_cast<int>(i)}, {}, 2.0});
  }
  for (const auto& [i, j] : orthogonality_edges(rays)) {
    s.objective.push_back({TermKind::correlator, {i, j}, {}, -1.0});
  }
  s.reference_values = {{"nchv", 16.0},
                        {"state-independent", 50.0 / 3.0},
                        {"algebraic", 50.0},
                        {"sequential", 17.794}};
  return s;
}

Scenario gyni() {
  Scenario s;
  s.name = "gyni";
  s.settings = {{0, 2}, {1, 2}};
  s.sequence_length = 3;
  s.objective = {{TermKind::probability, {0, 0, 0}, {0, 0, 0}, 1.0},
                 {TermKind::probability, {0, 1, 1}, {1, 1, 0}, 1.0},
                 {TermKind::probability, {1, 0, 1}, {0, 1, 1}, 1.0},
                 {TermKind::probability, {1, 1, 0}, {1, 0, 1}, 1.0}};
  s.reference_values = {{"classical", 1.0}, {"sequential", 1.0225}, {"no-signalling", 4.0 / 3.0}};
  return s;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (int n = 3; n <= 12; ++n) names.push_back("ncycle" + std::to_string(n));
  names.insert(names.end(), {"lg", "yu-oh", "gyni"});
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "lg") return leggett_garg();
  if (name == "yu-oh") return yu_oh();
  if (name == "gyni") return gyni();
  if (name.rfind("ncycle", 0) == 0) {
    const std::string digits = name.substr(6);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int n = std::stoi(digits);
      if (n >= 3 && n <= 12) return ncycle_scenario(NCycleSpec::canonical(n));
    }
  }
  throw InputError("unknown builtin scenario '" + name + "'");
}

Scenario resolve_scenario(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return builtin_scenario(spec.substr(prefix.size()));
  return load_scenario(spec);
}

namespace {

[[noreturn]] void schema_error(const std::string& source, const std::string& pointer,
                               const std::string& what) {
  throw InputError(source + ": " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& source, const std::string& pointer) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) schema_error(source, pointer + "/" + key, "unknown key");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& source,
                    const std::string& pointer) {
  if (!obj.contains(key)) schema_error(source, pointer + "/" + key, "missing required key");
  return obj.at(key);
}

int as_int(const json& v, const std::string& source, const std::string& pointer) {
  if (!v.is_number_integer()) schema_error(source, pointer, "expected integer");
  return v.get<int>();
}

double as_number(const json& v, const std::string& source, const std::string& pointer) {
  if (!v.is_number()) schema_error(source, pointer, "expected number");
  return v.get<double>();
}

std::vector<int> as_int_array(const json& v, const std::string& source, const std::string& pointer) {
  if (!v.is_array()) schema_error(source, pointer, "expected array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_int(v[i], source, pointer + "/" + std::to_string(i)));
  }
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error(source, "", "expected a JSON object");
  reject_unknown_keys(doc, {"name", "settings", "sequence_length", "objective", "reference_values"},
                      source, "");

  Scenario s;
  const json& name = require(doc, "name", source, "");
  if (!name.is_string()) schema_error(source, "/name", "expected string");
  s.name = name.get<std::string>();

  const json& settings = require(doc, "settings", source, "");
  if (!settings.is_array()) schema_error(source, "/settings", "expected array");
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const std::string ptr = "/settings/" + std::to_string(i);
    if (!settings[i].is_object()) schema_error(source, ptr, "expected object");
    reject_unknown_keys(settings[i], {"id", "outcomes"}, source, ptr);
    SettingSpec spec{as_int(require(settings[i], "id", source, ptr), source, ptr + "/id"),
                     as_int(require(settings[i], "outcomes", source, ptr), source, ptr + "/outcomes")};
    if (spec.id != static_cast<int>(i)) schema_error(source, ptr + "/id", "setting ids must be 0..k-1 in order");
    if (spec.outcomes < 2) schema_error(source, ptr + "/outcomes", "at least 2 outcomes required");
    s.settings.push_back(spec);
  }

  s.sequence_length = as_int(require(doc, "sequence_length", source, ""), source, "/sequence_length");
  if (s.sequence_length < 1) schema_error(source, "/sequence_length", "must be at least 1");

  const json& objective = require(doc, "objective", source, "");
  if (!objective.is_array()) schema_error(source, "/objective", "expected array");
  for (std::size_t t = 0; t < objective.size(); ++t) {
    const std::string ptr = "/objective/" + std::to_string(t);
    const json& term = objective[t];
    if (!term.is_object()) schema_error(source, ptr, "expected object");
    const json& kind = require(term, "kind", source, ptr);
    ObjectiveTerm out;
    if (kind == "correlator") {
      reject_unknown_keys(term, {"kind", "sequence", "coeff"}, source, ptr);
      out.kind = TermKind::correlator;
      out.sequence = as_int_array(require(term, "sequence", source, ptr), source, ptr + "/sequence");
    } else if (kind == "probability") {
      reject_unknown_keys(term, {"kind", "settings", "outcomes", "coeff"}, source, ptr);
      out.kind = TermKind::probability;
      out.sequence = as_int_array(require(term, "settings", source, ptr), source, ptr + "/settings");
      out.outcomes = as_int_array(require(term, "outcomes", source, ptr), source, ptr + "/outcomes");
    } else {
      schema_error(source, ptr + "/kind", "expected \"correlator\" or \"probability\"");
    }
    out.coefficient = as_number(require(term, "coeff", source, ptr), source, ptr + "/coeff");
    if (out.sequence.empty()) schema_error(source, ptr, "empty sequence");
    if (static_cast<int>(out.sequence.size()) > s.sequence_length) {
      schema_error(source, ptr, "sequence longer than sequence_length");
    }
    for (std::size_t k = 0; k < out.sequence.size(); ++k) {
      const int id = out.sequence[k];
      if (id < 0 || id >= s.num_settings()) {
        schema_error(source, ptr + (out.kind == TermKind::correlator ? "/sequence/" : "/settings/") +
                                 std::to_string(k), "unknown setting " + std::to_string(id));
      }
      if (out.kind == TermKind::correlator && s.outcome_count(id) != 2) {
        schema_error(source, ptr + "/sequence/" + std::to_string(k), "correlator requires binary setting");
      }
    }
    if (out.kind == TermKind::probability) {
      if (out.outcomes.size() != out.sequence.size()) {
        schema_error(source, ptr + "/outcomes", "inconsistent outcome count: expected " +
                                                    std::to_string(out.sequence.size()) + " entries");
      }
      for (std::size_t k = 0; k < out.outcomes.size(); ++k) {
        const int r = out.outcomes[k];
        if (r < 0 || r >= s.outcome_count(out.sequence[k])) {
          schema_error(source, ptr + "/outcomes/" + std::to_string(k), "outcome out of range");
        }
      }
    }
    s.objective.push_back(std::move(out));
  }

  if (doc.contains("reference_values")) {
    const json& refs = doc.at("reference_values");
    if (!refs.is_object()) schema_error(source, "/reference_values", "expected object");
    for (const auto& [key, value] : refs.items()) {
      s.reference_values[key] = as_number(value, source, "/reference_values/" + key);
    }
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string dump_scenario(const Scenario& scenario) {
  json doc;
  doc["name"] = scenario.name;
  doc["settings"] = json::array();
  for (const auto& s : scenario.settings) doc["settings"].push_back({{"id", s.id}, {"outcomes", s.outcomes}});
  doc["sequence_length"] = scenario.sequence_length;
  doc["objective"] = json::array();
  for (const auto& t : scenario.objective) {
    if (t.kind == TermKind::correlator) {
      doc["objective"].push_back({{"kind", "correlator"}, {"sequence", t.sequence}, {"coeff", t.coefficient}});
    } else {
      doc["objective"].push_back({{"kind", "probability"},
                                  {"settings", t.sequence},
                                  {"outcomes", t.outcomes},
                                  {"coeff", t.coefficient}});
    }
  }
  if (!scenario.reference_values.empty()) doc["reference_values"] = scenario.reference_values;
  return doc.dump(2);
}

CorrelationProblem correlation_problem(const Scenario& scenario) {
  validate(scenario);
  if (!is_pairwise_correlator(scenario)) {
    throw InputError("simplified method requires an objective of length-2 correlators only");
  }
  const int n = scenario.num_settings();
  MatrixXd lambda = MatrixXd::Zero(n, n);
  for (const auto& t : scenario.objective) {
    lambda(t.sequence[0], t.sequence[1]) += 0.5 * t.coefficient;
    lambda(t.sequence[1], t.sequence[0]) += 0.5 * t.coefficient;
  }
  return make_correlation_problem(lambda);
}

}  // namespace tempora
