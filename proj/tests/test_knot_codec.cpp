#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "topsurg/analysis.hpp"
#include "topsurg/error.hpp"
#include "topsurg/knot.hpp"
#include "topsurg/wirtinger.hpp"

using namespace topsurg;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::string rotate_code(const std::string& code, int by) {
  std::vector<std::string> toks;
  std::size_t start = 0;
  while (true) {
    const auto at = code.find(',', start);
    toks.push_back(code.substr(start, at == std::string::npos ? std::string::npos : at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ",";
    out += toks[(i + by) % toks.size()];
  }
  return out;
}

}  // namespace

TEST_CASE("parse_gauss examples") {
  const auto t = fixtures::trefoil();
  CHECK(t.crossing_count() == 3);
  CHECK(t.arc_count() == 3);
  for (const auto& x : t.crossings()) CHECK(x.sign == 1);

  const auto u = parse_gauss("");
  CHECK(u.crossing_count() == 0);
  CHECK(u.arc_count() == 1);

  const auto curl = parse_gauss("U1+,O1+");
  CHECK(curl.crossing_count() == 1);
  CHECK(writhe(curl) == 1);
}

TEST_CASE("parse_gauss errors") {
  CHECK(kind_of([] { parse_gauss("U1+,O2+"); }) == ErrorKind::InconsistentCode);
  CHECK(kind_of([] { parse_gauss("U1+,O1-"); }) == ErrorKind::InconsistentCode);
  CHECK(kind_of([] { parse_gauss("U1+,Q1+"); }) == ErrorKind::MalformedToken);
  CHECK(kind_of([] { parse_gauss("U1+,O1+;U2+,O2+"); }) == ErrorKind::InconsistentCode);
  // Virtual knot: the Gauss code has no planar realization.
  CHECK(kind_of([] { parse_gauss("O1+,O2+,U1+,U2+"); }) == ErrorKind::InconsistentCode);
}

TEST_CASE("parse_pd agrees with parse_gauss") {
  const auto pd = parse_pd(fixtures::kTrefoilPd);
  CHECK(writhe(pd) == 3);
  CHECK(serialize(pd) == serialize(fixtures::trefoil()));
  CHECK(parse_pd("").crossing_count() == 0);
  CHECK(parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").crossing_count() == 3);
  CHECK(kind_of([] { parse_pd("X(1,1,2,1),X(3,2,4,3)"); }) == ErrorKind::OrientationInconsistent);
  CHECK(kind_of([] { parse_pd("X(1,2,3)"); }) == ErrorKind::MalformedTuple);
}

TEST_CASE("writhe") {
  CHECK(writhe(fixtures::trefoil()) == 3);
  CHECK(writhe(KnotDiagram()) == 0);
  auto d = reidemeister_apply(fixtures::trefoil(), ReidemeisterMove::r1_add(0, 1));
  d = reidemeister_apply(d, ReidemeisterMove::r1_add(1, -1));
  int pos = 0, neg = 0;
  for (const auto& x : d.crossings()) (x.sign > 0 ? pos : neg)++;
  CHECK(pos == 4);
  CHECK(neg == 1);
  CHECK(writhe(d) == 3);
}

TEST_CASE("serialize is rotation invariant") {
  std::set<std::string> seen;
  for (int r = 0; r < 6; ++r) seen.insert(serialize(parse_gauss(rotate_code(fixtures::kTrefoilGauss, r))));
  CHECK(seen.size() == 1);
  CHECK(serialize(KnotDiagram()).empty());
  CHECK(serialize(parse_gauss("O7-,U7-")) == "U1-,O1-");
}

TEST_CASE("serialize round trips through the parsers") {
  const auto t = fixtures::trefoil();
  CHECK(parse_gauss(serialize(t)) == t);
  CHECK(parse_diagram(to_json(t)) == t);
  CHECK(parse_diagram(fixtures::kTrefoilPd) == t);
}

TEST_CASE("reidemeister moves") {
  auto d = reidemeister_apply(KnotDiagram(), ReidemeisterMove::r1_add(0, 1));
  CHECK(d.crossing_count() == 1);
  CHECK(writhe(d) == 1);
  CHECK(reidemeister_apply(d, ReidemeisterMove::r1_remove(0)) == KnotDiagram());

  const auto t = fixtures::trefoil();
  auto moves = applicable_moves(t);
  int r2_tried = 0;
  for (const auto& m : moves) {
    if (m.type != ReidemeisterMove::Type::R2Add) continue;
    const auto bigger = reidemeister_apply(t, m);
    CHECK(bigger.crossing_count() == 5);
    bool undone = false;
    for (const auto& back : applicable_moves(bigger)) {
      if (back.type != ReidemeisterMove::Type::R2Remove) continue;
      if (serialize(reidemeister_apply(bigger, back)) == serialize(t)) undone = true;
    }
    CHECK(undone);
    ++r2_tried;
  }
  CHECK(r2_tried > 0);

  auto twice = reidemeister_apply(t, ReidemeisterMove::r1_add(0, 1));
  twice = reidemeister_apply(twice, ReidemeisterMove::r1_add(0, 1));
  CHECK(writhe(twice) == 5);
  CHECK(count_homs(tietze_eliminate(wirtinger(twice)), 3) == 12);
}

TEST_CASE("inapplicable moves are rejected") {
  const auto t = fixtures::trefoil();
  CHECK(kind_of([&] { reidemeister_apply(t, ReidemeisterMove::r1_remove(0)); }) ==
        ErrorKind::MoveNotApplicable);
  CHECK(kind_of([&] { reidemeister_apply(t, ReidemeisterMove::r2_remove(0, 1)); }) ==
        ErrorKind::MoveNotApplicable);
  CHECK(kind_of([&] { reidemeister_apply(t, ReidemeisterMove::r1_add(9, 1)); }) ==
        ErrorKind::MoveNotApplicable);
}

TEST_CASE("random move walks keep diagrams valid and invariants fixed") {
  std::mt19937_64 rng(11);
  const auto base = fixtures::trefoil();
  bool saw_r3 = false;
  for (int i = 0; i < 12; ++i) {
    const auto d = fixtures::random_walk(base, 6, rng);
    // every emitted diagram re-parses to itself
    CHECK(parse_gauss(serialize(d)) == d);
    CHECK(faces(d).size() == static_cast<std::size_t>(d.crossing_count() + 2));
    const auto p = tietze_eliminate(wirtinger(d));
    CHECK(abelianize(p).free_rank == 1);
    CHECK(abelianize(p).torsion.empty());
    CHECK(count_homs(p, 3) == 12);
    for (const auto& m : applicable_moves(d))
      if (m.type == ReidemeisterMove::Type::R3) saw_r3 = true;
  }
  CHECK(saw_r3);
}

TEST_CASE("R3 preserves crossing signs and writhe") {
  std::mt19937_64 rng(5);
  int applied = 0;
  for (int i = 0; i < 40 && applied < 5; ++i) {
    const auto d = fixtures::random_walk(fixtures::trefoil(), 4, rng);
    for (const auto& m : applicable_moves(d)) {
      if (m.type != ReidemeisterMove::Type::R3) continue;
      const auto e = reidemeister_apply(d, m);
      CHECK(writhe(e) == writhe(d));
      CHECK(e.crossing_count() == d.crossing_count());
      CHECK(count_homs(tietze_eliminate(wirtinger(e)), 3) == 12);
      ++applied;
      break;
    }
  }
  CHECK(applied > 0);
}
