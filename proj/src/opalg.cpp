#include "tempora/opalg.hpp"

#include <algorithm>
#include <string>

#include "tempora/types.hpp"

namespace tempora {

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!letters_.empty() && letters_.back().setting == l.setting) {
      if (letters_.back().outcome == l.outcome) continue;
      *this = zero();
      return;
    }
    letters_.push_back(l);
  }
}

Word Word::zero() {
  Word w;
  w.zero_ = true;
  return w;
}

std::string Word::str() const {
  if (zero_) return "0";
  if (letters_.empty()) return "1";
  std::string out;
  for (const Letter& l : letters_) {
    out += "E" + std::to_string(l.setting) + "." + std::to_string(l.outcome);
  }
  return out;
}

Letter make_letter(int setting, int outcome, const Scenario& scenario) {
  if (!scenario.has_setting(setting)) {
    throw InputError("unknown setting " + std::to_string(setting));
  }
  const int count = scenario.outcome_count(setting);
  if (outcome < 0 || outcome >= count) {
    throw InputError("outcome " + std::to_string(outcome) + " out of range for setting " +
                     std::to_string(setting));
  }
  if (outcome == scenario.dropped_outcome(setting)) {
    throw InputError("dropped outcome " + std::to_string(outcome) + " of setting " +
                     std::to_string(setting) + " is not a letter");
  }
  return Letter{setting, outcome};
}

Word concat_reduce(const Word& a, const Word& b) {
  if (a.is_zero() || b.is_zero()) return Word::zero();
  std::vector<Letter> joined = a.letters();
  joined.insert(joined.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(joined));
}

Word reverse(const Word& w) {
  if (w.is_zero()) return w;
  std::vector<Letter> r(w.letters().rbegin(), w.letters().rend());
  return Word(std::move(r));
}

Word class_key(const Word& w) {
  Word r = reverse(w);
  return std::min(w, r);
}

WordPoly expand_outcome(int setting, int outcome, const Scenario& scenario) {
  if (!scenario.has_setting(setting)) {
    throw InputError("unknown setting " + std::to_string(setting));
  }
  const int count = scenario.outcome_count(setting);
  if (outcome < 0 || outcome >= count) {
    throw InputError("outcome " + std::to_string(outcome) + " out of range for setting " +
                     std::to_string(setting));
  }
  WordPoly poly;
  if (outcome != scenario.dropped_outcome(setting)) {
    poly[Word({Letter{setting, outcome}})] = 1.0;
    return poly;
  }
  poly[Word::identity()] = 1.0;
  for (int o = 0; o < count - 1; ++o) poly[Word({Letter{setting, o}})] = -1.0;
  return poly;
}

WordPoly multiply(const WordPoly& a, const WordPoly& b) {
  WordPoly out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      Word w = concat_reduce(wa, wb);
      if (w.is_zero()) continue;
      out[w] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

WordPoly sequence_operator(const std::vector<int>& settings,
                           const std::vector<int>& outcomes, const Scenario& scenario) {
  if (settings.size() != outcomes.size()) {
    throw InputError("settings and outcomes differ in length");
  }
  WordPoly poly{{Word::identity(), 1.0}};
  for (std::size_t k = 0; k < settings.size(); ++k) {
    poly = multiply(poly, expand_outcome(settings[k], outcomes[k], scenario));
  }
  return poly;
}

std::vector<Word> enumerate_words(const Scenario& scenario, int max_length) {
  std::vector<Letter> alphabet;
  for (int s = 0; s < scenario.num_settings(); ++s) {
    for (int o = 0; o < scenario.dropped_outcome(s); ++o) alphabet.push_back({s, o});
  }
  std::vector<Word> words{Word::identity()};
  std::vector<std::vector<Letter>> layer{{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& prefix : layer) {
      for (const Letter& l : alphabet) {
        if (!prefix.empty() && prefix.back().setting == l.setting) continue;
        auto w = prefix;
        w.push_back(l);
        next.push_back(std::move(w));
      }
    }
    // Prefixes are sorted and letters appended in sorted order, so `next` is
    // already lexicographic.
    for (const auto& w : next) words.emplace_back(w);
    layer = std::move(next);
  }
  return words;
}

}  // namespace tempora
