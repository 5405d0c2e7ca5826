#pragma once

#include <random>
#include <string>
#include <vector>

#include "topsurg/knot.hpp"
#include "topsurg/presentation.hpp"

namespace fixtures {

inline const std::string kTrefoilGauss = "U1+,O2+,U3+,O1+,U2+,O3+";
inline const std::string kTrefoilPd = "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)";

inline topsurg::KnotDiagram trefoil() { return topsurg::parse_gauss(kTrefoilGauss); }

// <l,m,n> = (a,b,c | a^l b^-m, a^l c^-n, a^l (abc)^-1)
inline topsurg::Presentation triangle_group(int l, int m, int n) {
  std::string text = "gens: a,b,c ; rels: a^" + std::to_string(l) + " b^-" + std::to_string(m) +
                     ", a^" + std::to_string(l) + " c^-" + std::to_string(n) + ", a^" +
                     std::to_string(l) + " C B A";
  return topsurg::parse_presentation_text(text);
}

// Random walk of Reidemeister moves. R1 additions are taken with low weight so
// diagrams stay small; R1 removals are skipped so the walk does not just undo.
inline topsurg::KnotDiagram random_walk(topsurg::KnotDiagram d, int steps, std::mt19937_64& rng,
                                        int max_crossings = 9) {
  using Type = topsurg::ReidemeisterMove::Type;
  for (int s = 0; s < steps; ++s) {
    auto moves = topsurg::applicable_moves(d);
    std::vector<topsurg::ReidemeisterMove> pool;
    for (const auto& m : moves) {
      if (m.type == Type::R1Remove) continue;
      const bool grows = m.type == Type::R1Add || m.type == Type::R2Add;
      const int growth = m.type == Type::R2Add ? 2 : 1;
      if (grows && d.crossing_count() + growth > max_crossings) continue;
      pool.push_back(m);
    }
    if (pool.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    d = topsurg::reidemeister_apply(d, pool[pick(rng)]);
  }
  return d;
}

}  // namespace fixtures
