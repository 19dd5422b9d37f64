#pragma once

#include <map>
#include <string>
#include <vector>

namespace tempora {

struct SettingSpec {
  int id = 0;
  int outcomes = 2;

  bool operator==(const SettingSpec&) const = default;
};

enum class TermKind { correlator, probability };

// One summand of a linear objective over sequential statistics.
//
// A correlator term <A_{s1} ... A_{sn}>_seq assigns value +1 to outcome 0 and
// -1 to outcome 1 of each (binary) setting. A probability term is
// P(outcomes | settings) with the first entry measured first.
struct ObjectiveTerm {
  TermKind kind = TermKind::correlator;
  std::vector<int> sequence;
  std::vector<int> outcomes;  // probability terms only
  double coefficient = 1.0;

  bool operator==(const ObjectiveTerm&) const = default;
};

struct Scenario {
  std::string name;
  std::vector<SettingSpec> settings;
  int sequence_length = 1;
  std::vector<ObjectiveTerm> objective;
  std::map<std::string, double> reference_values;

  int num_settings() const { return static_cast<int>(settings.size()); }
  int outcome_count(int setting) const;
  // Leave-one-out convention: the highest outcome index is never a letter.
  int dropped_outcome(int setting) const { return outcome_count(setting) - 1; }
  bool has_setting(int setting) const {
    return setting >= 0 && setting < num_settings();
  }

  bool operator==(const Scenario&) const = default;
};

// Throws InputError describing the first violated invariant.
void validate(const Scenario& scenario);

// True when every term is a correlator of length exactly two.
bool is_pairwise_correlator(const Scenario& scenario);

}  // namespace tempora
