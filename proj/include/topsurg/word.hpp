#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace topsurg {

struct Letter {
  int gen = 0;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Word in a free group, stored as runs g^e. Runs are not merged on append, so
// an unreduced word such as a a^-1 is representable; equality compares the
// freely reduced forms.
class Word {
 public:
  struct Run {
    int gen = 0;
    std::int64_t exp = 0;
    friend bool operator==(const Run&, const Run&) = default;
  };

  Word() = default;
  static Word letter(int gen, int sign = 1);
  static Word power(int gen, std::int64_t exp);
  static Word from_letters(const std::vector<Letter>& letters);

  Word& append(int gen, std::int64_t exp);
  Word& append(const Word& w);

  const std::vector<Run>& runs() const { return runs_; }
  std::vector<Letter> letters() const;

  bool empty() const;
  std::int64_t length() const;
  std::int64_t exponent_sum() const;
  std::int64_t exponent_sum(int gen) const;
  std::int64_t occurrences(int gen) const;
  int max_generator() const;  // -1 for the empty word

  Word inverse() const;

  friend Word operator*(Word a, const Word& b) { return a.append(b); }
  friend bool operator==(const Word& a, const Word& b);

 private:
  std::vector<Run> runs_;
};

Word free_reduce(const Word& w);
// Freely and cyclically reduced conjugate of w.
Word cyclic_reduce(const Word& w);
// Replaces each generator g by images[g]; images must cover every generator of w.
Word substitute(const Word& w, const std::vector<Word>& images);

// Letters separated by spaces; an uppercase name denotes the inverse, "x^k"
// a power, "1" the empty word.
std::string to_text(const Word& w, const std::vector<std::string>& names);

}  // namespace topsurg
