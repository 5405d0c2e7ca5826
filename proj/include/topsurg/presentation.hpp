#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "topsurg/smith.hpp"
#include "topsurg/word.hpp"

namespace topsurg {

// Finitely presented group. Relators are kept freely reduced and only use
// generators of this presentation.
class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(std::vector<std::string> generators, std::vector<Word> relators = {});

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }

  int index_of(std::string_view name) const;  // -1 when absent
  int add_generator(const std::string& name);
  void add_relator(const Word& w);

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // each >= 2, divisibility chain

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

std::string to_string(const AbelianInvariants& a);  // e.g. "Z^1 + Z/2"
std::string to_json(const AbelianInvariants& a);

// Relator exponent-sum matrix: one row per relator, one column per generator.
IntegerMatrix relation_matrix(const Presentation& p);
AbelianInvariants abelianize(const Presentation& p);

Presentation free_product(const Presentation& p1, const Presentation& p2);
Presentation direct_product(const Presentation& p1, const Presentation& p2);
Presentation quotient_by_relator(const Presentation& p, const Word& w);

// Eliminates generators defined by a relator in which they occur exactly once,
// lowest generator index first, then drops trivial and duplicate relators.
Presentation tietze_eliminate(const Presentation& p);

// Text form: "gens: a,b ; rels: a b a B A B, a^2". Uppercase names are
// inverses; a relator may also be written as an equation "a b a = b a b".
Presentation parse_presentation_text(std::string_view text);
Presentation parse_presentation_json(std::string_view text);
// JSON when the first non-blank character is '{', text otherwise.
Presentation parse_presentation(std::string_view text);
// Parses a word over the generators of p in the text syntax.
Word parse_word(std::string_view text, const Presentation& p);

std::string to_text(const Presentation& p);
std::string to_json(const Presentation& p);

}  // namespace topsurg
