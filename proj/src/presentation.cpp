#include "topsurg/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "topsurg/error.hpp"

namespace topsurg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::MalformedPresentation, msg);
}

bool valid_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '_';
  });
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string fresh_name(const std::string& base, const Presentation& taken) {
  if (taken.index_of(base) < 0) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (taken.index_of(candidate) < 0) return candidate;
  }
}

Word shift(const Word& w, int offset) {
  Word out;
  for (const auto& r : w.runs()) out.append(r.gen + offset, r.exp);
  return out;
}

// Least rotation of w or its inverse, after cyclic reduction.
std::vector<Letter> cyclic_key(const Word& w) {
  const Word c = cyclic_reduce(w);
  std::vector<Letter> best;
  bool have = false;
  for (const Word& v : {c, c.inverse()}) {
    const auto letters = v.letters();
    for (std::size_t r = 0; r < letters.size(); ++r) {
      std::vector<Letter> rot(letters.begin() + r, letters.end());
      rot.insert(rot.end(), letters.begin(), letters.begin() + r);
      const auto less = [](const std::vector<Letter>& a, const std::vector<Letter>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const Letter& x, const Letter& y) {
                                              return std::pair{x.gen, x.sign} < std::pair{y.gen, y.sign};
                                            });
      };
      if (!have || less(rot, best)) {
        best = std::move(rot);
        have = true;
      }
    }
  }
  return best;
}

}  // namespace

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!valid_name(g)) malformed("invalid generator name '" + g + "'");
    if (!seen.insert(g).second) malformed("duplicate generator '" + g + "'");
  }
  for (const auto& w : relators) add_relator(w);
}

int Presentation::index_of(std::string_view name) const {
  for (int i = 0; i < generator_count(); ++i) {
    if (generators_[i] == name) return i;
  }
  return -1;
}

int Presentation::add_generator(const std::string& name) {
  if (!valid_name(name)) malformed("invalid generator name '" + name + "'");
  if (index_of(name) >= 0) malformed("duplicate generator '" + name + "'");
  generators_.push_back(name);
  return generator_count() - 1;
}

void Presentation::add_relator(const Word& w) {
  if (w.max_generator() >= generator_count()) {
    throw Error(ErrorKind::UnknownGenerator, "relator uses a generator outside the presentation");
  }
  relators_.push_back(free_reduce(w));
}

IntegerMatrix relation_matrix(const Presentation& p) {
  IntegerMatrix m(p.relators().size(), p.generators().size());
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    for (const auto& run : p.relators()[r].runs()) m(r, run.gen) += run.exp;
  }
  return m;
}

AbelianInvariants abelianize(const Presentation& p) {
  const SmithForm snf = smith_normal_form(relation_matrix(p));
  AbelianInvariants a;
  a.free_rank = p.generators().size() - snf.rank;
  for (const auto& f : snf.factors) {
    if (f != 1) a.torsion.push_back(f);
  }
  return a;
}

std::string to_string(const AbelianInvariants& a) {
  std::ostringstream os;
  bool first = true;
  if (a.free_rank > 0) {
    os << "Z";
    if (a.free_rank > 1) os << "^" << a.free_rank;
    first = false;
  }
  for (const auto& t : a.torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string to_json(const AbelianInvariants& a) {
  nlohmann::json j;
  j["free_rank"] = a.free_rank;
  j["torsion"] = nlohmann::json::array();
  for (const auto& t : a.torsion) {
    // Torsion past 64 bits is emitted as a decimal string.
    if (t <= BigInt(std::numeric_limits<std::int64_t>::max())) {
      j["torsion"].push_back(static_cast<std::int64_t>(t));
    } else {
      j["torsion"].push_back(t.str());
    }
  }
  return j.dump();
}

Presentation free_product(const Presentation& p1, const Presentation& p2) {
  Presentation out = p1;
  const int offset = p1.generator_count();
  for (const auto& g : p2.generators()) out.add_generator(fresh_name(g, out));
  for (const auto& r : p2.relators()) out.add_relator(shift(r, offset));
  return out;
}

Presentation direct_product(const Presentation& p1, const Presentation& p2) {
  Presentation out = free_product(p1, p2);
  const int offset = p1.generator_count();
  for (int g = 0; g < p1.generator_count(); ++g) {
    for (int h = 0; h < p2.generator_count(); ++h) {
      Word c;
      c.append(g, 1).append(h + offset, 1).append(g, -1).append(h + offset, -1);
      out.add_relator(c);
    }
  }
  return out;
}

Presentation quotient_by_relator(const Presentation& p, const Word& w) {
  if (w.max_generator() >= p.generator_count()) {
    throw Error(ErrorKind::UnknownGenerator, "quotient word uses an unknown generator");
  }
  Presentation out = p;
  if (!free_reduce(w).empty()) out.add_relator(w);
  return out;
}

Presentation tietze_eliminate(const Presentation& p) {
  std::vector<std::string> gens = p.generators();
  std::vector<Word> rels;
  for (const auto& r : p.relators()) rels.push_back(cyclic_reduce(r));

  bool changed = true;
  while (changed) {
    changed = false;
    for (int g = 0; g < static_cast<int>(gens.size()) && !changed; ++g) {
      for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        if (rels[ri].occurrences(g) != 1) continue;
        // Rotate the relator so g^e leads: g^e u = 1.
        const auto letters = rels[ri].letters();
        std::size_t at = 0;
        while (letters[at].gen != g) ++at;
        const int e = letters[at].sign;
        std::vector<Letter> rest(letters.begin() + at + 1, letters.end());
        rest.insert(rest.end(), letters.begin(), letters.begin() + at);
        const Word u = Word::from_letters(rest);
        const Word image = e > 0 ? u.inverse() : u;

        std::vector<Word> images;
        for (int k = 0; k < static_cast<int>(gens.size()); ++k) {
          if (k == g) {
            images.push_back(image);
          } else {
            images.push_back(Word::letter(k));
          }
        }
        std::vector<Word> next;
        for (std::size_t rj = 0; rj < rels.size(); ++rj) {
          if (rj == ri) continue;
          Word sub = substitute(rels[rj], images);
          // Close the gap left by g.
          Word renamed;
          for (const auto& run : sub.runs()) renamed.append(run.gen > g ? run.gen - 1 : run.gen, run.exp);
          next.push_back(cyclic_reduce(renamed));
        }
        gens.erase(gens.begin() + g);
        rels = std::move(next);
        changed = true;
        break;
      }
    }
  }

  Presentation out(gens);
  std::set<std::vector<std::pair<int, int>>> seen;
  for (const auto& r : rels) {
    if (r.runs().empty()) continue;
    std::vector<std::pair<int, int>> key;
    for (const auto& l : cyclic_key(r)) key.push_back({l.gen, l.sign});
    if (!seen.insert(key).second) continue;
    out.add_relator(r);
  }
  return out;
}

Word parse_word(std::string_view text, const Presentation& p) {
  text = trim(text);
  Word w;
  if (text.empty() || text == "1") return w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    std::int64_t power = 1;
    const auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      const std::string exp = tok.substr(caret + 1);
      try {
        std::size_t used = 0;
        power = std::stoll(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (const std::exception&) {
        malformed("bad exponent in '" + tok + "'");
      }
    }
    int g = p.index_of(name);
    int sign = 1;
    if (g < 0) {
      for (int k = 0; k < p.generator_count(); ++k) {
        if (upper(p.generators()[k]) == name && upper(name) != p.generators()[k]) {
          g = k;
          sign = -1;
        }
      }
    }
    if (g < 0) throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + name + "'");
    w.append(g, sign * power);
  }
  return w;
}

Presentation parse_presentation_text(std::string_view text) {
  text = trim(text);
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) malformed("expected 'gens: ... ; rels: ...'");
  std::string_view gpart = trim(text.substr(0, semi));
  std::string_view rpart = trim(text.substr(semi + 1));
  if (gpart.rfind("gens:", 0) != 0) malformed("missing 'gens:'");
  if (rpart.rfind("rels:", 0) != 0) malformed("missing 'rels:'");
  gpart = trim(gpart.substr(5));
  rpart = trim(rpart.substr(5));

  std::vector<std::string> gens;
  if (!gpart.empty()) {
    for (auto g : split(gpart, ',')) gens.emplace_back(g);
  }
  Presentation p(gens);
  if (!rpart.empty()) {
    for (auto r : split(rpart, ',')) {
      if (r.empty()) malformed("empty relator entry");
      const auto eq = r.find('=');
      if (eq == std::string_view::npos) {
        p.add_relator(parse_word(r, p));
      } else {
        const Word lhs = parse_word(r.substr(0, eq), p);
        const Word rhs = parse_word(r.substr(eq + 1), p);
        p.add_relator(lhs * rhs.inverse());
      }
    }
  }
  return p;
}

Presentation parse_presentation_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    Presentation p(j.at("generators").get<std::vector<std::string>>());
    for (const auto& rel : j.at("relators")) {
      Word w;
      for (const auto& syl : rel) {
        const auto name = syl.at(0).get<std::string>();
        const int g = p.index_of(name);
        if (g < 0) throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + name + "'");
        w.append(g, syl.at(1).get<std::int64_t>());
      }
      p.add_relator(w);
    }
    return p;
  } catch (const json::exception& e) {
    malformed(std::string("invalid presentation JSON: ") + e.what());
  }
}

Presentation parse_presentation(std::string_view text) {
  const auto t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_presentation_json(t);
  return parse_presentation_text(t);
}

std::string to_text(const Presentation& p) {
  std::string out = "gens:";
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    out += (i == 0 ? " " : ",") + p.generators()[i];
  }
  out += " ; rels:";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    out += (i == 0 ? " " : ", ") + to_text(p.relators()[i], p.generators());
  }
  return out;
}

std::string to_json(const Presentation& p) {
  nlohmann::json j;
  j["generators"] = p.generators();
  j["relators"] = nlohmann::json::array();
  for (const auto& r : p.relators()) {
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& run : r.runs()) rel.push_back({p.generators()[run.gen], run.exp});
    j["relators"].push_back(rel);
  }
  return j.dump();
}

}  // namespace topsurg
