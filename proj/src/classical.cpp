#include "tempora/classical.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tempora/types.hpp"

namespace tempora {

namespace {

double outcome_value(int outcome) { return outcome == 0 ? 1.0 : -1.0; }

double term_value(const ObjectiveTerm& term, const std::vector<int>& assignment) {
  if (term.kind == TermKind::correlator) {
    double v = 1.0;
    for (int s : term.sequence) v *= outcome_value(assignment[static_cast<std::size_t>(s)]);
    return v;
  }
  for (std::size_t k = 0; k < term.sequence.size(); ++k) {
    if (assignment[static_cast<std::size_t>(term.sequence[k])] != term.outcomes[k]) return 0.0;
  }
  return 1.0;
}

// Terms that pass through a history node, with the factor accumulated so far
// (correlators) or whether the outcomes so far still match (probabilities).
struct ActiveTerm {
  const ObjectiveTerm* term;
  double factor;
};

class HistoryTree {
 public:
  HistoryTree(const Scenario& s, std::uint64_t cap) : scenario_(s), cap_(cap) {}

  // Best total over the subtree rooted at position `depth` with setting
  // `setting`, given the terms that reached it.
  double best(const std::vector<ActiveTerm>& active, std::size_t depth, int setting) {
    if (++visited_ > cap_) {
      throw InputError("algebraic_max: history tree exceeds " + std::to_string(cap_) + " nodes");
    }
    double best_value = -std::numeric_limits<double>::infinity();
    for (int o = 0; o < scenario_.outcome_count(setting); ++o) {
      double value = 0.0;
      std::vector<std::vector<ActiveTerm>> children(static_cast<std::size_t>(scenario_.num_settings()));
      for (const ActiveTerm& a : active) {
        const ObjectiveTerm& t = *a.term;
        double factor = a.factor;
        if (t.kind == TermKind::correlator) {
          factor *= outcome_value(o);
        } else if (t.outcomes[depth] != o) {
          factor = 0.0;
        }
        if (depth + 1 == t.sequence.size()) {
          value += t.coefficient * factor;
        } else if (factor != 0.0) {
          children[static_cast<std::size_t>(t.sequence[depth + 1])].push_back({a.term, factor});
        }
      }
      for (int next = 0; next < scenario_.num_settings(); ++next) {
        const auto& group = children[static_cast<std::size_t>(next)];
        if (!group.empty()) value += best(group, depth + 1, next);
      }
      best_value = std::max(best_value, value);
    }
    return best_value;
  }

 private:
  const Scenario& scenario_;
  std::uint64_t cap_;
  std::uint64_t visited_ = 0;
};

}  // namespace

double evaluate_assignment(const Scenario& scenario, const DeterministicAssignment& a) {
  if (static_cast<int>(a.outcomes.size()) != scenario.num_settings()) {
    throw InputError("assignment size does not match the number of settings");
  }
  double total = 0.0;
  for (const auto& term : scenario.objective) total += term.coefficient * term_value(term, a.outcomes);
  return total;
}

double nchv_bound(const Scenario& scenario, std::uint64_t cap) {
  validate(scenario);
  std::uint64_t space = 1;
  for (const auto& s : scenario.settings) {
    space *= static_cast<std::uint64_t>(s.outcomes);
    if (space > cap) {
      throw InputError("nchv_bound: assignment space exceeds cap of " + std::to_string(cap));
    }
  }
  const auto k = static_cast<std::size_t>(scenario.num_settings());
  std::vector<int> assignment(k, 0);
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t rest = code;
    for (std::size_t s = 0; s < k; ++s) {
      const auto count = static_cast<std::uint64_t>(scenario.settings[s].outcomes);
      assignment[s] = static_cast<int>(rest % count);
      rest /= count;
    }
    double total = 0.0;
    for (const auto& term : scenario.objective) total += term.coefficient * term_value(term, assignment);
    best = std::max(best, total);
  }
  return best;
}

double algebraic_max(const Scenario& scenario, std::uint64_t node_cap) {
  validate(scenario);
  // Terms sharing a first setting share the root node; different roots are
  // independent.
  std::vector<std::vector<ActiveTerm>> roots(static_cast<std::size_t>(scenario.num_settings()));
  for (const auto& term : scenario.objective) {
    roots[static_cast<std::size_t>(term.sequence.front())].push_back({&term, 1.0});
  }
  HistoryTree tree(scenario, node_cap);
  double total = 0.0;
  for (int s = 0; s < scenario.num_settings(); ++s) {
    if (!roots[static_cast<std::size_t>(s)].empty()) total += tree.best(roots[static_cast<std::size_t>(s)], 0, s);
  }
  return total;
}

}  // namespace tempora
