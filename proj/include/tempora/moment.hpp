#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tempora/opalg.hpp"
#include "tempora/scenario.hpp"
#include "tempora/types.hpp"

namespace tempora {

class MomentIndex {
 public:
  MomentIndex() = default;
  explicit MomentIndex(std::vector<Word> words);

  std::size_t size() const { return words_.size(); }
  const Word& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }
  // -1 when the word is not part of the index.
  int position(const Word& w) const;

 private:
  std::vector<Word> words_;
  std::map<Word, int> lookup_;
};

using Entry = std::pair<int, int>;  // (row, col), row <= col

struct EntryClass {
  Word key;
  std::vector<Entry> entries;
};

// Moment-matrix SDP: maximize <C, X> over real symmetric X >= 0 with
// X(0,0) = 1, entries of one class equal and zero-monomial entries zero.
struct MomentProblem {
  MomentIndex index;
  std::vector<EntryClass> classes;
  std::vector<Entry> zero_entries;
  Eigen::MatrixXi class_of;  // class id per position, -1 on zero entries
  MatrixXd objective;        // symmetric coefficient matrix C
  int normalization_class = 0;

  std::size_t dimension() const { return index.size(); }
};

MomentIndex build_index(const Scenario& scenario);
MomentProblem build_problem(const Scenario& scenario);

// Symmetric coefficient matrix G with <G, X> = P(outcomes|settings) on any
// moment matrix X of the index (the expansion of Pi(r|s) Pi(r|s)^dagger).
MatrixXd probability_form(const MomentIndex& index, const Scenario& scenario,
                          const std::vector<int>& settings, const std::vector<int>& outcomes);

// Same for a correlator of binary settings: sum_r (prod values) P(r|s).
MatrixXd correlator_form(const MomentIndex& index, const Scenario& scenario,
                         const std::vector<int>& settings);

MatrixXd objective_matrix(const MomentIndex& index, const Scenario& scenario);

double evaluate_objective(const MomentProblem& problem, const MatrixXd& x);

struct ProbabilityRecord {
  std::vector<int> settings;
  std::vector<int> outcomes;
  double value = 0.0;
};

// Every P(r|s) with |s| <= sequence_length read off the matrix. Throws
// NumericalError if a value falls outside [-tol, 1 + tol].
std::vector<ProbabilityRecord> extract_probabilities(const MatrixXd& x,
                                                     const MomentProblem& problem,
                                                     const Scenario& scenario,
                                                     double tol = 1e-6);

// Largest |X_p - X_q| within a class, |X_00 - 1| and |X_zero| over all positions.
double class_residual(const MomentProblem& problem, const MatrixXd& x);

// Frobenius-nearest matrix of the affine set: weighted class averages,
// normalization and zero entries pinned.
MatrixXd project_affine(const MomentProblem& problem, const MatrixXd& x);

}  // namespace tempora
