#include "tempora/scenario.hpp"

#include <string>

#include "tempora/types.hpp"

namespace tempora {

int Scenario::outcome_count(int setting) const {
  if (!has_setting(setting)) {
    throw InputError("unknown setting " + std::to_string(setting));
  }
  return settings[static_cast<std::size_t>(setting)].outcomes;
}

void validate(const Scenario& scenario) {
  if (scenario.sequence_length < 1) {
    throw InputError("sequence_length must be at least 1");
  }
  if (scenario.settings.empty()) {
    throw InputError("scenario has no settings");
  }
  for (std::size_t i = 0; i < scenario.settings.size(); ++i) {
    const auto& s = scenario.settings[i];
    if (s.id != static_cast<int>(i)) {
      throw InputError("setting ids must be contiguous 0..k-1; found id " +
                       std::to_string(s.id) + " at position " + std::to_string(i));
    }
    if (s.outcomes < 2) {
      throw InputError("setting " + std::to_string(s.id) + " needs at least 2 outcomes");
    }
  }
  for (std::size_t t = 0; t < scenario.objective.size(); ++t) {
    const auto& term = scenario.objective[t];
    const std::string where = "objective term " + std::to_string(t) + ": ";
    if (term.sequence.empty()) throw InputError(where + "empty sequence");
    if (static_cast<int>(term.sequence.size()) > scenario.sequence_length) {
      throw InputError(where + "sequence longer than sequence_length");
    }
    for (int s : term.sequence) {
      if (!scenario.has_setting(s)) {
        throw InputError(where + "unknown setting " + std::to_string(s));
      }
      if (term.kind == TermKind::correlator && scenario.outcome_count(s) != 2) {
        throw InputError(where + "correlator requires binary setting (setting " +
                         std::to_string(s) + ")");
      }
    }
    if (term.kind == TermKind::probability) {
      if (term.outcomes.size() != term.sequence.size()) {
        throw InputError(where + "outcomes and settings differ in length");
      }
      for (std::size_t k = 0; k < term.sequence.size(); ++k) {
        const int r = term.outcomes[k];
        if (r < 0 || r >= scenario.outcome_count(term.sequence[k])) {
          throw InputError(where + "outcome " + std::to_string(r) + " out of range");
        }
      }
    } else if (!term.outcomes.empty()) {
      throw InputError(where + "correlator terms take no outcomes");
    }
  }
}

bool is_pairwise_correlator(const Scenario& scenario) {
  for (const auto& term : scenario.objective) {
    if (term.kind != TermKind::correlator || term.sequence.size() != 2) return false;
  }
  return true;
}

}  // namespace tempora
