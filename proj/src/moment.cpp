#include "tempora/moment.hpp"

#include "tempora/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace tempora {

MomentIndex::MomentIndex(std::vector<Word> words) : words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!lookup_.emplace(words_[i], static_cast<int>(i)).second) {
      throw InputError("duplicate word in moment index: " + words_[i].str());
    }
  }
}

int MomentIndex::position(const Word& w) const {
  auto it = lookup_.find(w);
  return it == lookup_.end() ? -1 : it->second;
}

MomentIndex build_index(const Scenario& scenario) {
  validate(scenario);
  return MomentIndex(enumerate_words(scenario, scenario.sequence_length));
}

namespace {

// <G, X> = sum_ab c_a c_b X_ab reproduces <Pi Pi^dagger> for Pi = sum_a c_a a.
void accumulate_outer(MatrixXd& g, const MomentIndex& index, const WordPoly& poly,
                      double weight) {
  std::vector<std::pair<int, double>> coords;
  coords.reserve(poly.size());
  for (const auto& [w, c] : poly) {
    const int pos = index.position(w);
    if (pos < 0) throw InputError("word " + w.str() + " exceeds the moment index");
    coords.emplace_back(pos, c);
  }
  for (const auto& [a, ca] : coords) {
    for (const auto& [b, cb] : coords) g(a, b) += weight * ca * cb;
  }
}

}  // namespace

MatrixXd probability_form(const MomentIndex& index, const Scenario& scenario,
                          const std::vector<int>& settings, const std::vector<int>& outcomes) {
  const auto n = static_cast<Eigen::Index>(index.size());
  MatrixXd g = MatrixXd::Zero(n, n);
  accumulate_outer(g, index, sequence_operator(settings, outcomes, scenario), 1.0);
  return g;
}

MatrixXd correlator_form(const MomentIndex& index, const Scenario& scenario,
                         const std::vector<int>& settings) {
  const auto n = static_cast<Eigen::Index>(index.size());
  MatrixXd g = MatrixXd::Zero(n, n);
  const std::size_t len = settings.size();
  std::vector<int> outcomes(len, 0);
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    double sign = 1.0;
    for (std::size_t k = 0; k < len; ++k) {
      outcomes[k] = (mask >> k) & 1u;
      if (outcomes[k] == 1) sign = -sign;
    }
    accumulate_outer(g, index, sequence_operator(settings, outcomes, scenario), sign);
  }
  return g;
}

MatrixXd objective_matrix(const MomentIndex& index, const Scenario& scenario) {
  const auto n = static_cast<Eigen::Index>(index.size());
  MatrixXd c = MatrixXd::Zero(n, n);
  for (const auto& term : scenario.objective) {
    if (term.kind == TermKind::probability) {
      c += term.coefficient * probability_form(index, scenario, term.sequence, term.outcomes);
    } else {
      c += term.coefficient * correlator_form(index, scenario, term.sequence);
    }
  }
  return c;
}

MomentProblem build_problem(const Scenario& scenario) {
  MomentProblem p;
  p.index = build_index(scenario);
  const auto n = static_cast<int>(p.index.size());
  p.class_of = Eigen::MatrixXi::Constant(n, n, -1);

  std::map<Word, int> class_ids;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Word w = concat_reduce(p.index[i], reverse(p.index[j]));
      if (w.is_zero()) {
        p.zero_entries.emplace_back(i, j);
        continue;
      }
      const Word key = class_key(w);
      auto [it, inserted] = class_ids.emplace(key, static_cast<int>(p.classes.size()));
      if (inserted) p.classes.push_back({key, {}});
      p.classes[it->second].entries.emplace_back(i, j);
      p.class_of(i, j) = p.class_of(j, i) = it->second;
    }
  }
  p.normalization_class = p.class_of(0, 0);
  p.objective = objective_matrix(p.index, scenario);
  return p;
}

double evaluate_objective(const MomentProblem& problem, const MatrixXd& x) {
  if (x.rows() != problem.objective.rows() || x.cols() != problem.objective.cols()) {
    throw InputError("evaluate_objective: dimension mismatch (" + std::to_string(x.rows()) +
                     " vs " + std::to_string(problem.objective.rows()) + ")");
  }
  return problem.objective.cwiseProduct(x).sum();
}

std::vector<ProbabilityRecord> extract_probabilities(const MatrixXd& x,
                                                     const MomentProblem& problem,
                                                     const Scenario& scenario, double tol) {
  if (x.rows() != static_cast<Eigen::Index>(problem.dimension())) {
    throw InputError("extract_probabilities: dimension mismatch");
  }
  std::vector<ProbabilityRecord> out;
  std::vector<int> settings, outcomes;

  auto evaluate = [&](const std::vector<int>& s, const std::vector<int>& r) {
    const WordPoly poly = sequence_operator(s, r, scenario);
    double value = 0.0;
    for (const auto& [wa, ca] : poly) {
      for (const auto& [wb, cb] : poly) {
        value += ca * cb * x(problem.index.position(wa), problem.index.position(wb));
      }
    }
    if (value < -tol || value > 1.0 + tol) {
      throw NumericalError("probability out of range: " + std::to_string(value));
    }
    out.push_back({s, r, value});
  };

  std::function<void()> over_outcomes = [&]() {
    if (outcomes.size() == settings.size()) {
      evaluate(settings, outcomes);
      return;
    }
    const int count = scenario.outcome_count(settings[outcomes.size()]);
    for (int r = 0; r < count; ++r) {
      outcomes.push_back(r);
      over_outcomes();
      outcomes.pop_back();
    }
  };
  std::function<void()> over_settings = [&]() {
    if (!settings.empty()) over_outcomes();
    if (static_cast<int>(settings.size()) == scenario.sequence_length) return;
    for (int s = 0; s < scenario.num_settings(); ++s) {
      settings.push_back(s);
      over_settings();
      settings.pop_back();
    }
  };
  over_settings();
  return out;
}

double class_residual(const MomentProblem& problem, const MatrixXd& x) {
  double worst = std::abs(x(0, 0) - 1.0);
  for (const auto& [i, j] : problem.zero_entries) worst = std::max(worst, std::abs(x(i, j)));
  for (const auto& cls : problem.classes) {
    const auto [i0, j0] = cls.entries.front();
    for (const auto& [i, j] : cls.entries) {
      worst = std::max(worst, std::abs(x(i, j) - x(i0, j0)));
    }
  }
  return std::max(worst, max_abs(x - x.transpose()));
}

MatrixXd project_affine(const MomentProblem& problem, const MatrixXd& x) {
  MatrixXd out(x.rows(), x.cols());
  for (const auto& [i, j] : problem.zero_entries) out(i, j) = out(j, i) = 0.0;
  for (std::size_t c = 0; c < problem.classes.size(); ++c) {
    const auto& entries = problem.classes[c].entries;
    double value = 1.0;
    if (static_cast<int>(c) != problem.normalization_class) {
      // Frobenius weights: off-diagonal positions appear twice.
      double sum = 0.0, weight = 0.0;
      for (const auto& [i, j] : entries) {
        const double w = i == j ? 1.0 : 2.0;
        sum += w * 0.5 * (x(i, j) + x(j, i));
        weight += w;
      }
      value = sum / weight;
    }
    for (const auto& [i, j] : entries) out(i, j) = out(j, i) = value;
  }
  return out;
}

}  // namespace tempora
