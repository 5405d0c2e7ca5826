#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "topsurg/error.hpp"
#include "topsurg/presentation.hpp"
#include "topsurg/smith.hpp"
#include "topsurg/word.hpp"

using namespace topsurg;

namespace {

Word w(std::initializer_list<std::pair<int, int>> letters) {
  Word out;
  for (auto [g, s] : letters) out.append(g, s);
  return out;
}

const std::vector<std::string> abc{"a", "b", "c"};

// Determinantal divisors: d_k = gcd of all k x k minors, factor_k = d_k / d_{k-1}.
long long det(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  long long total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const long long term = m[0][c] * det(minor);
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<long long> oracle_factors(const std::vector<std::vector<long long>>& m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<long long> out;
  long long prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        g = std::gcd(g, std::llabs(det(sub)));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST_CASE("free_reduce cancels adjacent inverse pairs") {
  CHECK(free_reduce(w({{0, 1}, {0, -1}})).empty());
  CHECK(to_text(free_reduce(w({{2, 1}, {0, 1}, {1, 1}})), abc) == "c a b");
  const Word long_word = w({{2, 1}, {0, 1}, {1, 1}, {0, -1}, {0, 1}, {0, -1}, {0, -1}});
  CHECK(free_reduce(long_word) == w({{2, 1}, {0, 1}, {1, 1}, {0, -2}}));
  CHECK(to_text(free_reduce(long_word), abc) == "c a b A A");
}

TEST_CASE("word text form") {
  CHECK(to_text(Word(), abc) == "1");
  CHECK(to_text(Word::power(0, 5), abc) == "a^5");
  CHECK(to_text(Word::power(1, -7), abc) == "B^7");
}

TEST_CASE("cyclic_reduce strips conjugating letters") {
  const Word x = w({{1, 1}, {0, 1}, {2, 1}, {1, -1}});
  CHECK(cyclic_reduce(x) == w({{0, 1}, {2, 1}}));
}

TEST_CASE("substitute replaces generators by words") {
  const Word x = w({{0, 1}, {1, -1}});
  const Word out = substitute(x, {w({{1, 1}, {1, 1}}), w({{0, 1}})});
  CHECK(out == w({{1, 2}, {0, -1}}));
}

TEST_CASE("smith normal form examples") {
  auto f = smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}});
  CHECK(f.factors == std::vector<BigInt>{1, 6});
  CHECK(f.rank == 2);
  f = smith_normal_form(IntegerMatrix(2, 2));
  CHECK(f.factors.empty());
  CHECK(f.rank == 0);
  f = smith_normal_form(IntegerMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(f.factors == std::vector<BigInt>{1, 1, 1});
  CHECK(f.rank == 3);
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = size(rng), cols = size(rng);
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
    IntegerMatrix im(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        m[r][c] = entry(rng) * (trial % 3 == 0 ? 2 : 1);
        im(r, c) = m[r][c];
      }
    const auto expected = oracle_factors(m, cols);
    const auto got = smith_normal_form(im);
    REQUIRE(got.factors.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(got.factors[i] == expected[i]);
    CHECK(got.rank == expected.size());
  }
}

TEST_CASE("smith normal form does not overflow 64 bits") {
  IntegerMatrix m{{4000000000LL, 0}, {0, 6000000000LL}};
  const auto f = smith_normal_form(m);
  CHECK(f.factors[0] == BigInt(2000000000LL));
  CHECK(f.factors[1] == BigInt("12000000000"));
}

TEST_CASE("abelianize") {
  auto p = parse_presentation_text("gens: a,b ; rels: a b a = b a b");
  auto ab = abelianize(p);
  CHECK(ab.free_rank == 1);
  CHECK(ab.torsion.empty());
  CHECK(to_string(ab) == "Z");

  ab = abelianize(parse_presentation_text("gens: a ; rels: a^5"));
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<BigInt>{5});

  // trefoil group with the framing-1 longitude c a b a^-2 and c = A b a
  p = parse_presentation_text("gens: a,b ; rels: a b a = b a b, A b a a b A A");
  ab = abelianize(p);
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion.empty());
  CHECK(to_string(ab) == "0");
}

TEST_CASE("free product") {
  auto zz = free_product(Presentation({"a"}), Presentation({"b"}));
  CHECK(zz.generators() == std::vector<std::string>{"a", "b"});
  CHECK(zz.relators().empty());

  const auto knot = parse_presentation_text("gens: a,b ; rels: a b a = b a b");
  CHECK(abelianize(free_product(Presentation(), knot)) == abelianize(knot));
  CHECK(free_product(Presentation(), knot).generator_count() == 2);

  const auto z2 = parse_presentation_text("gens: a ; rels: a^2");
  const auto prod = free_product(z2, Presentation({"b"}));
  const auto ab = abelianize(prod);
  CHECK(ab.free_rank == 1);
  CHECK(ab.torsion == std::vector<BigInt>{2});
}

TEST_CASE("free product renames clashing generators") {
  const auto p = free_product(Presentation({"a"}), Presentation({"a"}));
  CHECK(p.generators() == std::vector<std::string>{"a", "a2"});
}

TEST_CASE("direct product") {
  auto p = direct_product(Presentation({"a"}), Presentation());
  CHECK(p.generator_count() == 1);
  CHECK(abelianize(p).free_rank == 1);

  p = direct_product(Presentation({"a"}), Presentation({"b"}));
  REQUIRE(p.relators().size() == 1);
  CHECK(to_text(p.relators()[0], p.generators()) == "a b A B");
  CHECK(abelianize(p).free_rank == 2);

  p = direct_product(Presentation(), Presentation());
  CHECK(p.generator_count() == 0);
  CHECK(abelianize(p).free_rank == 0);
  CHECK(abelianize(p).torsion.empty());
}

TEST_CASE("quotient by relator") {
  auto p = quotient_by_relator(Presentation({"a"}), Word::power(0, 4));
  CHECK(to_text(p) == "gens: a ; rels: a^4");
  const auto knot = parse_presentation_text("gens: a,b ; rels: a b a = b a b");
  CHECK(quotient_by_relator(knot, Word()) == knot);
  CHECK_THROWS_AS(quotient_by_relator(knot, Word::letter(5)), Error);
}

TEST_CASE("tietze elimination") {
  const auto p = parse_presentation_text("gens: a,b,c ; rels: a = B c b, b = C a c, c = A b a");
  const auto q = tietze_eliminate(p);
  CHECK(q.generator_count() == 2);
  REQUIRE(q.relators().size() == 1);
  CHECK(q.relators()[0].length() == 6);
  CHECK(abelianize(q) == abelianize(p));

  CHECK(tietze_eliminate(Presentation({"a"})) == Presentation({"a"}));

  const auto r = tietze_eliminate(parse_presentation_text("gens: a,b ; rels: b = a^2"));
  CHECK(r.generators() == std::vector<std::string>{"a"});
  CHECK(r.relators().empty());
}

TEST_CASE("presentation text parsing") {
  const auto p = parse_presentation_text("gens: a, b ; rels: a b A B, a^3");
  CHECK(p.generator_count() == 2);
  CHECK(p.relators().size() == 2);
  CHECK(to_text(p) == "gens: a,b ; rels: a b A B, a a a");
  CHECK(parse_presentation_text(to_text(p)) == p);
  CHECK(parse_presentation_text("gens: ; rels:").generator_count() == 0);
  CHECK_THROWS_AS(parse_presentation_text("gens: a ; rels: a q"), Error);
  CHECK_THROWS_AS(parse_presentation_text("rels: a"), Error);
}

TEST_CASE("presentation json round trip") {
  const auto p = fixtures::triangle_group(3, 3, 2);
  const auto q = parse_presentation_json(to_json(p));
  CHECK(q == p);
  CHECK(parse_presentation(to_json(p)) == p);
  CHECK(parse_presentation(to_text(p)) == p);
  try {
    parse_presentation_json(R"({"generators":["a"],"relators":[[["z",1]]]})");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownGenerator);
  }
}
