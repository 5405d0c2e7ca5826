#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topsurg/presentation.hpp"

namespace topsurg {

inline constexpr std::size_t kDefaultMaxCosets = 100000;
// Largest n!^generators that count_homs will enumerate.
inline constexpr double kDefaultHomSearchBudget = 5e8;

// Coset table of the trivial subgroup. Column 2g is generator g, column
// 2g+1 its inverse; -1 marks an undefined entry. Row 0 is the subgroup coset.
struct CosetTable {
  int generators = 0;
  std::vector<std::vector<int>> rows;
};

struct EnumerationResult {
  enum class Outcome { Finite, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  std::size_t order = 0;        // valid when Finite
  std::size_t cosets_used = 0;  // total cosets defined during the run
  CosetTable table;             // closed table when Finite

  bool finite() const { return outcome == Outcome::Finite; }
};

// Hasselgrove-Leech-Trotter enumeration with lookahead over the trivial
// subgroup. Inconclusive means the bound was hit, not that the group is
// infinite.
EnumerationResult todd_coxeter(const Presentation& p, std::size_t max_cosets = kDefaultMaxCosets);

std::string to_json(const EnumerationResult& r);

// Homomorphisms into the symmetric group on n letters (n <= 6), by exhaustive
// search with relators checked as soon as their generators are assigned.
std::uint64_t count_homs(const Presentation& p, int n, double budget = kDefaultHomSearchBudget);
std::uint64_t count_surjections(const Presentation& p, int n, double budget = kDefaultHomSearchBudget);

struct Verdict {
  bool different = false;
  std::string witness;  // empty when indistinguishable
};

// Abelianization, then homomorphism counts into S2, S3, S4, then group orders
// when both enumerations close. Indistinguishable is not an isomorphism proof.
Verdict distinguish(const Presentation& p1, const Presentation& p2,
                    std::size_t max_cosets = kDefaultMaxCosets);

std::string to_json(const Verdict& v);

}  // namespace topsurg
