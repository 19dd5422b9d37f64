#include "tempora/realize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tempora/numerics.hpp"
#include "tempora/opalg.hpp"

namespace tempora {

namespace {

using cd = std::complex<double>;
using json = nlohmann::json;

double norm_max(const MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Appends the orthonormalized part of v to `basis` if it is not (numerically)
// inside the span already. Two passes of modified Gram-Schmidt.
void extend_basis(std::vector<VectorXd>& basis, VectorXd v, double drop_tol) {
  const double original = v.norm();
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) v -= q.dot(v) * q;
  }
  const double rest = v.norm();
  if (rest > drop_tol && rest > 1e-10 * original) basis.push_back(v / rest);
}

MatrixXd span_projector(const std::vector<VectorXd>& basis, int dim) {
  MatrixXd p = MatrixXd::Zero(dim, dim);
  for (const auto& q : basis) p.noalias() += q * q.transpose();
  return p;
}

void check_sequences(const QuantumRealization& r, const std::vector<int>& outcomes,
                     const std::vector<int>& settings) {
  if (outcomes.size() != settings.size()) {
    throw InputError("sequential_probability: outcome and setting sequences differ in length");
  }
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const int s = settings[k];
    if (s < 0 || s >= r.num_settings()) {
      throw InputError("sequential_probability: unknown setting " + std::to_string(s));
    }
    if (outcomes[k] < 0 || outcomes[k] >= r.outcome_counts[s]) {
      throw InputError("sequential_probability: outcome " + std::to_string(outcomes[k]) +
                       " out of range for setting " + std::to_string(s));
    }
  }
}

json matrix_to_json(const MatrixXcd& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return {{"real", re}, {"imag", im}};
}

MatrixXcd matrix_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_object() || !j.contains("real") || !j.contains("imag")) {
    throw InputError(where + ": expected an object with real and imag arrays");
  }
  const auto& re = j.at("real");
  const auto& im = j.at("imag");
  const std::size_t n = static_cast<std::size_t>(dim) * dim;
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n) {
    throw InputError(where + ": expected " + std::to_string(n) + " row-major entries");
  }
  MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      const auto& a = re[static_cast<std::size_t>(i * dim + k)];
      const auto& b = im[static_cast<std::size_t>(i * dim + k)];
      if (!a.is_number() || !b.is_number()) throw InputError(where + ": non-numeric entry");
      m(i, k) = cd(a.get<double>(), b.get<double>());
    }
  }
  return m;
}

}  // namespace

const MatrixXcd& QuantumRealization::projector(int setting, int outcome) const {
  auto it = projectors.find({setting, outcome});
  if (it == projectors.end()) {
    throw InputError("realization has no projector for setting " + std::to_string(setting) +
                     ", outcome " + std::to_string(outcome));
  }
  return it->second;
}

double RealizationCheck::worst() const {
  return std::max({state_hermiticity, state_trace, state_negativity, idempotence, hermiticity,
                   orthogonality, completeness});
}

RealizationCheck check_realization(const QuantumRealization& r) {
  const int d = r.dimension;
  if (d <= 0 || r.state.rows() != d || r.state.cols() != d) {
    throw InputError("realization: state does not match dimension " + std::to_string(d));
  }
  RealizationCheck c;
  c.state_hermiticity = norm_max(r.state - r.state.adjoint());
  c.state_trace = std::abs(r.state.trace() - cd(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es((r.state + r.state.adjoint()) / 2.0,
                                              Eigen::EigenvaluesOnly);
  c.state_negativity = std::max(0.0, -es.eigenvalues()(0));

  const MatrixXcd id = MatrixXcd::Identity(d, d);
  for (int s = 0; s < r.num_settings(); ++s) {
    MatrixXcd sum = MatrixXcd::Zero(d, d);
    for (int a = 0; a < r.outcome_counts[s]; ++a) {
      const MatrixXcd& p = r.projector(s, a);
      if (p.rows() != d || p.cols() != d) {
        throw InputError("realization: projector (" + std::to_string(s) + ", " +
                         std::to_string(a) + ") does not match dimension");
      }
      c.idempotence = std::max(c.idempotence, norm_max(p * p - p));
      c.hermiticity = std::max(c.hermiticity, norm_max(p - p.adjoint()));
      for (int b = a + 1; b < r.outcome_counts[s]; ++b) {
        c.orthogonality = std::max(c.orthogonality, norm_max(p * r.projector(s, b)));
      }
      sum += p;
    }
    c.completeness = std::max(c.completeness, norm_max(sum - id));
  }
  return c;
}

void validate(const QuantumRealization& r, double tol) {
  const auto c = check_realization(r);
  auto fail = [&](const char* what, double v) {
    if (v > tol) {
      std::ostringstream os;
      os << "realization invariant violated: " << what << " (" << v << " > " << tol << ")";
      throw NumericalError(os.str());
    }
  };
  fail("state not Hermitian", c.state_hermiticity);
  fail("state trace != 1", c.state_trace);
  fail("state not positive", c.state_negativity);
  fail("projector not idempotent", c.idempotence);
  fail("projector not Hermitian", c.hermiticity);
  fail("projectors of one setting not orthogonal", c.orthogonality);
  fail("projectors of one setting do not sum to identity", c.completeness);
}

GramVectors gram_vectors(const MatrixXd& x, double rank_tol) {
  if (x.rows() != x.cols()) throw InputError("gram_vectors: matrix is not square");
  if (!is_symmetric(x, 1e-9)) throw InputError("gram_vectors: matrix is not symmetric");
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (std::abs(x(i, i) - 1.0) > 1e-8) throw InputError("gram_vectors: diagonal is not 1");
  }
  GramVectors g;
  g.vectors = sqrt_psd(x, rank_tol);
  // Undo the small norm loss from discarded eigenvalues.
  for (Eigen::Index i = 0; i < g.vectors.cols(); ++i) {
    const double n = g.vectors.col(i).norm();
    if (n == 0.0) throw NumericalError("gram_vectors: zero vector after rank truncation");
    g.vectors.col(i) /= n;
  }
  return g;
}

std::vector<MatrixXcd> clifford_generators(int d) {
  if (d < 1 || d > 12) throw InputError("clifford_generators: d must be in 1..12");
  const int modes = std::max(1, d / 2);
  MatrixXcd x(2, 2), y(2, 2), z(2, 2), id2 = MatrixXcd::Identity(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cd(0, -1), cd(0, 1), 0;
  z << 1, 0, 0, -1;

  auto string_op = [&](int site, const MatrixXcd& op) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int k = 0; k < modes; ++k) {
      const MatrixXcd& f = k < site ? z : (k == site ? op : id2);
      MatrixXcd next(out.rows() * 2, out.cols() * 2);
      for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
      out = std::move(next);
    }
    return out;
  };

  std::vector<MatrixXcd> gammas;
  for (int k = 0; k < modes; ++k) {
    gammas.push_back(string_op(k, x));
    gammas.push_back(string_op(k, y));
  }
  // Z on every site anticommutes with every string above.
  gammas.push_back(string_op(modes, x));
  gammas.resize(static_cast<std::size_t>(d));
  return gammas;
}

QuantumRealization observables_from_vectors(const GramVectors& v) {
  const auto gammas = clifford_generators(std::max(1, v.dimension()));
  const int dim = static_cast<int>(gammas.front().rows());
  const MatrixXcd id = MatrixXcd::Identity(dim, dim);
  QuantumRealization r;
  r.dimension = dim;
  r.state = id / static_cast<double>(dim);
  for (int i = 0; i < v.count(); ++i) {
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < v.dimension(); ++k) a += v.vectors(k, i) * gammas[k];
    r.outcome_counts.push_back(2);
    r.projectors[{i, 0}] = (id + a) / 2.0;
    r.projectors[{i, 1}] = (id - a) / 2.0;
  }
  return r;
}

MatrixXcd observable(const QuantumRealization& r, int setting) {
  if (setting < 0 || setting >= r.num_settings() || r.outcome_counts[setting] != 2) {
    throw InputError("observable: setting " + std::to_string(setting) + " is not binary");
  }
  return r.projector(setting, 0) - r.projector(setting, 1);
}

GnsResult gns_from_moments(const SdpSolution& s, const MomentProblem& p,
                           const Scenario& scenario, double rank_tol) {
  const auto n = static_cast<Eigen::Index>(p.dimension());
  if (s.matrix.rows() != n || s.matrix.cols() != n) {
    throw InputError("gns_from_moments: solution does not match the moment index");
  }
  const double residual = class_residual(p, s.matrix);
  if (residual > 1e-4) {
    throw NumericalError("gns_from_moments: moment matrix violates its equalities by " +
                         std::to_string(residual));
  }

  // Alternate class averaging and PSD clipping; a handful of rounds brings
  // both residuals to rounding level for the near-feasible inputs accepted above.
  MatrixXd x = project_affine(p, symmetrize(s.matrix));
  for (int round = 0; round < 20; ++round) {
    if (min_eigenvalue(x) >= -1e-13) break;
    x = project_affine(p, psd_project(x));
  }
  x = psd_project(x);

  GnsResult out;
  out.perturbation = (x - s.matrix).norm();
  const MatrixXd f = sqrt_psd(x, rank_tol);
  const int dim = static_cast<int>(f.rows());
  if (dim == 0) throw NumericalError("gns_from_moments: moment matrix has rank zero");
  out.rank = dim;

  QuantumRealization& r = out.realization;
  r.dimension = dim;
  const VectorXd psi = f.col(0);
  r.state = (psi * psi.transpose()).cast<cd>();
  r.state /= r.state.trace().real();

  const MatrixXd id = MatrixXd::Identity(dim, dim);
  const double drop_tol = 1e-6;
  for (int setting = 0; setting < scenario.num_settings(); ++setting) {
    const int count = scenario.outcome_count(setting);
    r.outcome_counts.push_back(count);
    // Kept outcomes share one running basis so their ranges come out exactly
    // orthogonal; each outcome owns the slice it added.
    std::vector<VectorXd> basis;
    MatrixXd kept_sum = MatrixXd::Zero(dim, dim);
    for (int outcome = 0; outcome + 1 < count; ++outcome) {
      const std::size_t start = basis.size();
      for (Eigen::Index u = 1; u < n; ++u) {
        const Word& w = p.index[static_cast<std::size_t>(u)];
        if (w.back().setting == setting && w.back().outcome == outcome) {
          extend_basis(basis, f.col(u), drop_tol);
        }
      }
      std::vector<VectorXd> own(basis.begin() + static_cast<std::ptrdiff_t>(start), basis.end());
      const MatrixXd proj = span_projector(own, dim);
      kept_sum += proj;
      r.projectors[{setting, outcome}] = proj.cast<cd>();
    }
    r.projectors[{setting, count - 1}] = (id - kept_sum).cast<cd>();
  }
  return out;
}

double sequential_probability(const QuantumRealization& r, const std::vector<int>& outcomes,
                              const std::vector<int>& settings) {
  check_sequences(r, outcomes, settings);
  MatrixXcd rho = r.state;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    const MatrixXcd& p = r.projector(settings[k], outcomes[k]);
    rho = p * rho * p;
  }
  return rho.trace().real();
}

double sequential_correlator(const QuantumRealization& r, const std::vector<int>& settings) {
  for (int s : settings) {
    if (s < 0 || s >= r.num_settings()) {
      throw InputError("sequential_correlator: unknown setting " + std::to_string(s));
    }
    if (r.outcome_counts[s] != 2) {
      throw InputError("sequential_correlator: setting " + std::to_string(s) + " is not binary");
    }
  }
  const std::size_t len = settings.size();
  double total = 0.0;
  std::vector<int> outcomes(len, 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
    int sign = 1;
    for (std::size_t k = 0; k < len; ++k) {
      outcomes[k] = static_cast<int>((mask >> k) & 1u);
      if (outcomes[k] == 1) sign = -sign;
    }
    total += sign * sequential_probability(r, outcomes, settings);
  }
  return total;
}

double simulate_objective(const QuantumRealization& r, const Scenario& scenario) {
  double total = 0.0;
  for (const auto& t : scenario.objective) {
    const double v = t.kind == TermKind::correlator
                         ? sequential_correlator(r, t.sequence)
                         : sequential_probability(r, t.outcomes, t.sequence);
    total += t.coefficient * v;
  }
  return total;
}

std::string realization_to_json(const RealizationFile& file) {
  const QuantumRealization& r = file.realization;
  json doc;
  doc["dimension"] = r.dimension;
  doc["state"] = matrix_to_json(r.state);
  json settings = json::array();
  for (int s = 0; s < r.num_settings(); ++s) {
    json projs = json::array();
    for (int a = 0; a < r.outcome_counts[s]; ++a) projs.push_back(matrix_to_json(r.projector(s, a)));
    settings.push_back({{"id", s}, {"projectors", projs}});
  }
  doc["settings"] = settings;
  doc["metadata"] = {{"scenario", file.scenario},
                     {"method", file.method},
                     {"primal", file.primal_value},
                     {"tol", file.tolerance}};
  return doc.dump(1);
}

RealizationFile realization_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("realization: ") + e.what());
  }
  try {
    RealizationFile file;
    QuantumRealization& r = file.realization;
    r.dimension = doc.at("dimension").get<int>();
    if (r.dimension <= 0) throw InputError("realization: dimension must be positive");
    r.state = matrix_from_json(doc.at("state"), r.dimension, "/state");
    const auto& settings = doc.at("settings");
    if (!settings.is_array()) throw InputError("realization: /settings must be an array");
    for (std::size_t s = 0; s < settings.size(); ++s) {
      const auto& entry = settings[s];
      if (entry.at("id").get<int>() != static_cast<int>(s)) {
        throw InputError("realization: setting ids must be 0, 1, ... in order");
      }
      const auto& projs = entry.at("projectors");
      if (!projs.is_array() || projs.size() < 2) {
        throw InputError("realization: setting " + std::to_string(s) + " needs >= 2 projectors");
      }
      r.outcome_counts.push_back(static_cast<int>(projs.size()));
      for (std::size_t a = 0; a < projs.size(); ++a) {
        const std::string where =
            "/settings/" + std::to_string(s) + "/projectors/" + std::to_string(a);
        r.projectors[{static_cast<int>(s), static_cast<int>(a)}] =
            matrix_from_json(projs[a], r.dimension, where);
      }
    }
    if (doc.contains("metadata")) {
      const auto& m = doc.at("metadata");
      file.scenario = m.value("scenario", "");
      file.method = m.value("method", "");
      file.primal_value = m.value("primal", 0.0);
      file.tolerance = m.value("tol", 0.0);
    }
    return file;
  } catch (const json::exception& e) {
    throw InputError(std::string("realization: ") + e.what());
  }
}

void save_realization(const std::string& path, const RealizationFile& file) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << realization_to_json(file) << '\n';
}

RealizationFile load_realization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return realization_from_json(buf.str());
}

}  // namespace tempora
