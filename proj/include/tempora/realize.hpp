#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tempora/moment.hpp"
#include "tempora/scenario.hpp"
#include "tempora/sdp.hpp"
#include "tempora/types.hpp"

namespace tempora {

// Initial state and one projective measurement per setting on C^dimension.
struct QuantumRealization {
  int dimension = 0;
  MatrixXcd state;
  std::vector<int> outcome_counts;  // per setting
  std::map<std::pair<int, int>, MatrixXcd> projectors;  // (setting, outcome)

  int num_settings() const { return static_cast<int>(outcome_counts.size()); }
  const MatrixXcd& projector(int setting, int outcome) const;
};

// Worst violation of each realization invariant.
struct RealizationCheck {
  double state_hermiticity = 0.0;
  double state_trace = 0.0;        // |tr(rho) - 1|
  double state_negativity = 0.0;   // max(0, -lambda_min(rho))
  double idempotence = 0.0;        // max ||P^2 - P||
  double hermiticity = 0.0;        // max ||P - P^dagger||
  double orthogonality = 0.0;      // max ||P_a P_b||, a != b within a setting
  double completeness = 0.0;       // max ||sum_a P_a - 1||

  double worst() const;
};

RealizationCheck check_realization(const QuantumRealization& r);
// Throws NumericalError naming the first invariant violated beyond tol.
void validate(const QuantumRealization& r, double tol = 1e-8);

// Unit vectors as columns of a d x N matrix.
struct GramVectors {
  MatrixXd vectors;

  int dimension() const { return static_cast<int>(vectors.rows()); }
  int count() const { return static_cast<int>(vectors.cols()); }
};

GramVectors gram_vectors(const MatrixXd& x, double rank_tol = 1e-8);

// d pairwise anticommuting Hermitian involutions. Jordan-Wigner strings over
// floor(d/2) qubits (at least one), plus the chirality element for odd d.
std::vector<MatrixXcd> clifford_generators(int d);

// A_i = sum_k x_i[k] Gamma_k with projectors (1 +- A_i)/2 on a maximally
// mixed state; outcome 0 carries value +1.
QuantumRealization observables_from_vectors(const GramVectors& v);

// P_0 - P_1 of a binary setting.
MatrixXcd observable(const QuantumRealization& r, int setting);

struct GnsResult {
  QuantumRealization realization;
  double perturbation = 0.0;  // Frobenius distance of the repaired moment matrix
  int rank = 0;
};

// Gram factorization of a (repaired) moment matrix: the vector of word u is
// E(u)^dagger psi, so the span of vectors whose last letter is E_i is the
// range of E_i. Solver optima are only numerically rank deficient, so the
// default cut keeps directions down to 1e-12 of the top eigenvalue.
GnsResult gns_from_moments(const SdpSolution& s, const MomentProblem& p,
                           const Scenario& scenario, double rank_tol = 1e-12);

// Tr[Pi(r|s) Pi(r|s)^dagger rho], first measurement leftmost.
double sequential_probability(const QuantumRealization& r, const std::vector<int>& outcomes,
                              const std::vector<int>& settings);
double sequential_correlator(const QuantumRealization& r, const std::vector<int>& settings);
double simulate_objective(const QuantumRealization& r, const Scenario& scenario);

struct RealizationFile {
  QuantumRealization realization;
  std::string scenario;
  std::string method;
  double primal_value = 0.0;
  double tolerance = 0.0;
};

std::string realization_to_json(const RealizationFile& file);
RealizationFile realization_from_json(const std::string& text);
void save_realization(const std::string& path, const RealizationFile& file);
RealizationFile load_realization(const std::string& path);

}  // namespace tempora
