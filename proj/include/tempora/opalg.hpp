#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "tempora/scenario.hpp"

namespace tempora {

// A kept projector Pi_outcome^setting. The dropped outcome of a setting is
// never a letter; it is recovered from completeness by expand_outcome.
struct Letter {
  int setting = 0;
  int outcome = 0;

  auto operator<=>(const Letter&) const = default;
};

// Reduced product of projector letters, leftmost letter measured first.
//
// Canonical form has no two adjacent letters of the same setting. The empty
// word is the identity; the zero word is a distinct value that absorbs
// everything it is multiplied with.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);  // reduces its argument

  static Word identity() { return Word(); }
  static Word zero();

  bool is_zero() const { return zero_; }
  bool is_identity() const { return !zero_ && letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& back() const { return letters_.back(); }

  std::string str() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
  bool zero_ = false;
};

// Real linear combination of words; zero words are never stored.
using WordPoly = std::map<Word, double>;

Letter make_letter(int setting, int outcome, const Scenario& scenario);

Word concat_reduce(const Word& a, const Word& b);
Word reverse(const Word& w);

// Hermitian-conjugate representative used as an equality-class key:
// lexicographic minimum of w and reverse(w).
Word class_key(const Word& w);

// Projector Pi_outcome^setting as a combination of words: a kept outcome is a
// single letter, the dropped outcome is 1 - (sum of kept letters).
WordPoly expand_outcome(int setting, int outcome, const Scenario& scenario);

// Pi(r|s) = Pi_{r1}^{s1} ... Pi_{rn}^{sn} expanded and reduced.
WordPoly sequence_operator(const std::vector<int>& settings,
                           const std::vector<int>& outcomes, const Scenario& scenario);

WordPoly multiply(const WordPoly& a, const WordPoly& b);

// All canonical nonzero words of length <= max_length, identity first, then
// by length and lexicographically.
std::vector<Word> enumerate_words(const Scenario& scenario, int max_length);

}  // namespace tempora
