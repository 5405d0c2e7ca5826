#include "topsurg/knot.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "topsurg/error.hpp"

namespace topsurg {

namespace {

using Kind = GaussToken::Kind;

[[noreturn]] void inconsistent(const std::string& msg) {
  throw Error(ErrorKind::InconsistentCode, msg);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

// Rotation system of the diagram graph. Half-edge ("end") 2e is the tail of
// traversal edge e, 2e+1 its head. Ends around each crossing are listed
// counterclockwise for the standard picture of a crossing of the given sign.
struct Rotation {
  std::vector<std::array<int, 4>> around;  // per crossing
  std::vector<std::pair<int, int>> slot;   // end -> (crossing, index)
};

Rotation rotation_of(const std::vector<GaussToken>& code, const std::vector<int>& over_pos,
                     const std::vector<int>& under_pos) {
  const int m = static_cast<int>(code.size());
  const int n = m / 2;
  Rotation r;
  r.around.resize(n);
  r.slot.resize(2 * m);
  for (int c = 0; c < n; ++c) {
    const int po = over_pos[c];
    const int pu = under_pos[c];
    const int under_in = 2 * mod(pu - 1, m) + 1;
    const int under_out = 2 * pu;
    const int over_in = 2 * mod(po - 1, m) + 1;
    const int over_out = 2 * po;
    if (code[pu].sign > 0) {
      r.around[c] = {under_in, over_out, under_out, over_in};
    } else {
      r.around[c] = {under_in, over_in, under_out, over_out};
    }
    for (int k = 0; k < 4; ++k) r.slot[r.around[c][k]] = {c, k};
  }
  return r;
}

std::vector<Face> trace_faces(const std::vector<GaussToken>& code, const std::vector<int>& over_pos,
                              const std::vector<int>& under_pos) {
  const int m = static_cast<int>(code.size());
  std::vector<Face> result;
  if (m == 0) return result;
  const Rotation rot = rotation_of(code, over_pos, under_pos);
  // dart id: 2e for forward, 2e+1 for backward
  std::vector<char> seen(2 * m, 0);
  for (int start = 0; start < 2 * m; ++start) {
    if (seen[start]) continue;
    Face face;
    int dart = start;
    while (!seen[dart]) {
      seen[dart] = 1;
      const int e = dart / 2;
      const bool fwd = (dart % 2) == 0;
      face.push_back({e, fwd});
      const int arrival = fwd ? 2 * e + 1 : 2 * e;
      const auto [c, k] = rot.slot[arrival];
      const int leave = rot.around[c][(k + 1) % 4];
      const int e2 = leave / 2;
      dart = (leave % 2 == 1) ? 2 * e2 + 1 : 2 * e2;
    }
    result.push_back(std::move(face));
  }
  return result;
}

GaussToken make_token(Kind kind, int label, int sign) { return GaussToken{kind, label, sign}; }

// Signed Gauss code read from position r, labels renumbered by first appearance.
std::string code_string(const std::vector<GaussToken>& code, int r) {
  const int m = static_cast<int>(code.size());
  std::map<int, int> label;
  std::string s;
  for (int i = 0; i < m; ++i) {
    const auto& t = code[(r + i) % m];
    const int l = label.emplace(t.label, static_cast<int>(label.size()) + 1).first->second;
    if (i > 0) s += ',';
    s += t.is_over() ? 'O' : 'U';
    s += std::to_string(l);
    s += t.sign > 0 ? '+' : '-';
  }
  return s;
}

// Starting under-passage whose code string is least.
int canonical_start(const std::vector<GaussToken>& code) {
  int best = -1;
  std::string best_s;
  for (int r = 0; r < static_cast<int>(code.size()); ++r) {
    if (code[r].is_over()) continue;
    std::string s = code_string(code, r);
    if (best < 0 || s < best_s) {
      best = r;
      best_s = std::move(s);
    }
  }
  return best;
}

}  // namespace

KnotDiagram::KnotDiagram() : arc_order_{0} {}

KnotDiagram KnotDiagram::from_traversal(const std::vector<GaussToken>& tokens) {
  KnotDiagram d;
  if (tokens.empty()) return d;

  struct Seen {
    int overs = 0;
    int unders = 0;
    int sign = 0;
  };
  std::map<int, Seen> seen;
  for (const auto& t : tokens) {
    if (t.sign != 1 && t.sign != -1) inconsistent("crossing sign must be +1 or -1");
    auto& s = seen[t.label];
    (t.is_over() ? s.overs : s.unders) += 1;
    if (s.sign != 0 && s.sign != t.sign) {
      inconsistent("crossing " + std::to_string(t.label) + " has mismatched signs");
    }
    s.sign = t.sign;
  }
  for (const auto& [label, s] : seen) {
    if (s.overs != 1 || s.unders != 1) {
      inconsistent("crossing " + std::to_string(label) +
                   " must appear exactly once over and once under");
    }
  }

  const int m = static_cast<int>(tokens.size());
  const int n = m / 2;
  const int first_under = canonical_start(tokens);

  std::map<int, int> relabel;
  d.code_.reserve(m);
  for (int i = 0; i < m; ++i) {
    GaussToken t = tokens[(first_under + i) % m];
    if (t.is_over()) relabel.emplace(t.label, static_cast<int>(relabel.size()));
    d.code_.push_back(t);
  }
  for (auto& t : d.code_) t.label = relabel.at(t.label);

  d.over_pos_.assign(n, -1);
  d.under_pos_.assign(n, -1);
  for (int p = 0; p < m; ++p) {
    const auto& t = d.code_[p];
    (t.is_over() ? d.over_pos_ : d.under_pos_)[t.label] = p;
  }

  d.arc_at_.resize(m);
  for (int p = 0, unders = 0; p < m; ++p) {
    if (!d.code_[p].is_over()) ++unders;
    d.arc_at_[p] = unders - 1;
  }

  d.arc_count_ = n;
  d.arc_order_.resize(n);
  for (int k = 0; k < n; ++k) d.arc_order_[k] = k;

  d.crossings_.resize(n);
  for (int c = 0; c < n; ++c) {
    const int out = d.arc_of_position(d.under_pos_[c]);
    d.crossings_[c] = Crossing{d.code_[d.under_pos_[c]].sign, d.arc_of_position(d.over_pos_[c]),
                               mod(out - 1, n), out};
  }

  const auto fs = trace_faces(d.code_, d.over_pos_, d.under_pos_);
  if (static_cast<int>(fs.size()) != n + 2) {
    inconsistent("signed Gauss code is not realizable as a planar diagram");
  }
  return d;
}

int KnotDiagram::arc_of_position(int pos) const {
  return code_.empty() ? 0 : arc_at_[pos];
}

std::vector<Face> faces(const KnotDiagram& d) {
  std::vector<int> over_pos(d.crossing_count());
  std::vector<int> under_pos(d.crossing_count());
  for (int c = 0; c < d.crossing_count(); ++c) {
    over_pos[c] = d.over_position(c);
    under_pos[c] = d.under_position(c);
  }
  return trace_faces(d.traversal(), over_pos, under_pos);
}

KnotDiagram parse_gauss(std::string_view text) {
  text = trim(text);
  if (text.empty()) return KnotDiagram{};
  if (text.find(';') != std::string_view::npos || text.find('|') != std::string_view::npos) {
    inconsistent("multi-component codes are not supported");
  }
  std::vector<GaussToken> tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view tok = trim(text.substr(start, comma - start));
    const auto bad = [&]() {
      throw Error(ErrorKind::MalformedToken, "malformed Gauss token '" + std::string(tok) + "'");
    };
    if (tok.size() < 3) bad();
    GaussToken t;
    switch (tok.front()) {
      case 'O': case 'o': t.kind = Kind::Over; break;
      case 'U': case 'u': t.kind = Kind::Under; break;
      default: bad();
    }
    const char s = tok.back();
    if (s == '+') {
      t.sign = 1;
    } else if (s == '-') {
      t.sign = -1;
    } else {
      bad();
    }
    const std::string_view digits = tok.substr(1, tok.size() - 2);
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      bad();
    }
    t.label = std::stoi(std::string(digits));
    tokens.push_back(t);
    start = comma + 1;
  }
  return KnotDiagram::from_traversal(tokens);
}

KnotDiagram parse_pd(std::string_view text) {
  text = trim(text);
  if (text.empty()) return KnotDiagram{};
  const auto malformed = [](const std::string& msg) {
    throw Error(ErrorKind::MalformedTuple, msg);
  };

  std::string body(text);
  if (body.rfind("PD", 0) == 0) {
    body = body.substr(2);
    const auto b = trim(body);
    if (b.size() < 2 || (b.front() != '(' && b.front() != '[') ||
        (b.back() != ')' && b.back() != ']')) {
      malformed("unbalanced PD wrapper");
    }
    body = std::string(b.substr(1, b.size() - 2));
  }

  std::vector<std::array<int, 4>> tuples;
  std::size_t i = 0;
  const auto skip_ws = [&]() {
    while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',')) ++i;
  };
  skip_ws();
  while (i < body.size()) {
    if (body[i] != 'X' && body[i] != 'x') malformed("expected X( at offset " + std::to_string(i));
    ++i;
    if (i >= body.size() || (body[i] != '(' && body[i] != '[')) malformed("expected '(' after X");
    const char close = body[i] == '(' ? ')' : ']';
    const std::size_t end = body.find(close, i);
    if (end == std::string::npos) malformed("unterminated tuple");
    std::string inner = body.substr(i + 1, end - i - 1);
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::istringstream in(inner);
    std::array<int, 4> tuple{};
    for (int k = 0; k < 4; ++k) {
      if (!(in >> tuple[k])) malformed("tuple needs four integer entries");
    }
    std::string extra;
    if (in >> extra) malformed("tuple has more than four entries");
    tuples.push_back(tuple);
    i = end + 1;
    skip_ws();
  }
  if (tuples.empty()) return KnotDiagram{};

  // label -> occurrences (tuple, slot)
  std::map<int, std::vector<std::pair<int, int>>> where;
  for (int t = 0; t < static_cast<int>(tuples.size()); ++t) {
    for (int k = 0; k < 4; ++k) where[tuples[t][k]].push_back({t, k});
  }
  for (const auto& [label, occ] : where) {
    if (occ.size() != 2) {
      throw Error(ErrorKind::OrientationInconsistent,
                  "edge label " + std::to_string(label) + " appears " +
                      std::to_string(occ.size()) + " times");
    }
  }
  const auto other_end = [&](int t, int k) {
    const auto& occ = where.at(tuples[t][k]);
    return (occ[0] == std::pair{t, k}) ? occ[1] : occ[0];
  };

  std::vector<GaussToken> tokens;
  std::vector<int> passes(tuples.size(), 0);
  int t = 0;
  int exit_slot = 2;
  tokens.push_back(make_token(Kind::Under, 0, 0));
  passes[0] = 1;
  const std::size_t limit = 2 * tuples.size();
  while (true) {
    const auto [nt, slot] = other_end(t, exit_slot);
    if (nt == 0 && slot == 0) break;
    if (tokens.size() >= limit) {
      throw Error(ErrorKind::OrientationInconsistent, "traversal does not close");
    }
    switch (slot) {
      case 0:
        tokens.push_back(make_token(Kind::Under, nt, 0));
        exit_slot = 2;
        break;
      case 1:
        tokens.push_back(make_token(Kind::Over, nt, 1));
        exit_slot = 3;
        break;
      case 3:
        tokens.push_back(make_token(Kind::Over, nt, -1));
        exit_slot = 1;
        break;
      default:
        throw Error(ErrorKind::OrientationInconsistent,
                    "strand enters tuple " + std::to_string(nt) + " through its outgoing under slot");
    }
    if (++passes[nt] > 2) {
      throw Error(ErrorKind::OrientationInconsistent, "tuple traversed more than twice");
    }
    t = nt;
  }
  if (tokens.size() != limit) inconsistent("PD code describes more than one component");

  std::vector<int> sign_of(tuples.size(), 0);
  for (const auto& tok : tokens) {
    if (tok.is_over()) sign_of[tok.label] = tok.sign;
  }
  for (auto& tok : tokens) {
    if (sign_of[tok.label] == 0) inconsistent("tuple is never passed over");
    tok.sign = sign_of[tok.label];
  }
  return KnotDiagram::from_traversal(tokens);
}

KnotDiagram parse_diagram_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedToken, std::string("invalid diagram JSON: ") + e.what());
  }
  std::vector<Crossing> xs;
  int arcs = 0;
  try {
    arcs = j.at("arcs").get<int>();
    for (const auto& c : j.at("crossings")) {
      xs.push_back(Crossing{c.at("sign").get<int>(), c.at("over").get<int>(),
                            c.at("under_in").get<int>(), c.at("under_out").get<int>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedToken, std::string("invalid diagram JSON: ") + e.what());
  }
  const int n = static_cast<int>(xs.size());
  if (n == 0) {
    if (arcs != 1) inconsistent("a diagram without crossings has exactly one arc");
    return KnotDiagram{};
  }
  if (arcs != n) inconsistent("arc count must equal crossing count");
  std::vector<int> ends_at(n, -1);
  std::vector<int> starts_at(n, -1);
  std::vector<std::vector<int>> overs_on(n);
  for (int c = 0; c < n; ++c) {
    const auto& x = xs[c];
    if (x.sign != 1 && x.sign != -1) inconsistent("crossing sign must be +1 or -1");
    for (int a : {x.over, x.under_in, x.under_out}) {
      if (a < 0 || a >= n) inconsistent("arc id out of range");
    }
    if (ends_at[x.under_in] != -1 || starts_at[x.under_out] != -1) {
      inconsistent("each arc must start and end at exactly one undercrossing");
    }
    ends_at[x.under_in] = c;
    starts_at[x.under_out] = c;
    overs_on[x.over].push_back(c);
  }

  // Over passages along an arc are taken in list order; if that is not planar,
  // try the other orders arc by arc.
  std::vector<int> chain;
  {
    int arc = 0;
    for (int step = 0; step < n; ++step) {
      chain.push_back(arc);
      arc = xs[ends_at[arc]].under_out;
      if (arc == 0 && step + 1 < n) inconsistent("diagram has more than one component");
    }
    if (arc != 0) inconsistent("arc chain does not close");
  }
  const auto build = [&]() {
    std::vector<GaussToken> tokens;
    for (int arc : chain) {
      const int start = starts_at[arc];
      tokens.push_back(make_token(Kind::Under, start, xs[start].sign));
      for (int c : overs_on[arc]) tokens.push_back(make_token(Kind::Over, c, xs[c].sign));
    }
    return tokens;
  };

  long budget = 200000;
  std::function<bool(int, KnotDiagram&)> search = [&](int arc, KnotDiagram& out) -> bool {
    if (arc == n) {
      if (--budget < 0) return false;
      try {
        out = KnotDiagram::from_traversal(build());
        return true;
      } catch (const Error&) {
        return false;
      }
    }
    auto& v = overs_on[arc];
    std::vector<int> original = v;
    do {
      if (search(arc + 1, out)) return true;
      if (budget < 0) break;
    } while (std::next_permutation(v.begin(), v.end()));
    v = original;
    return false;
  };
  // First attempt keeps the given order exactly.
  try {
    return KnotDiagram::from_traversal(build());
  } catch (const Error&) {
  }
  for (auto& v : overs_on) std::sort(v.begin(), v.end());
  KnotDiagram out;
  if (search(0, out)) return out;
  inconsistent("no planar ordering of overpasses matches the crossing data");
}

KnotDiagram parse_diagram(std::string_view text) {
  const auto t = trim(text);
  if (t.empty()) return KnotDiagram{};
  if (t.front() == '{') return parse_diagram_json(t);
  if (t.front() == 'X' || t.front() == 'P') return parse_pd(t);
  return parse_gauss(t);
}

int writhe(const KnotDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings()) w += c.sign;
  return w;
}

std::string serialize(const KnotDiagram& d) {
  // The stored traversal already starts at the minimizing rotation.
  return code_string(d.traversal(), 0);
}

std::string to_json(const KnotDiagram& d) {
  nlohmann::json j;
  j["arcs"] = d.arc_count();
  j["crossings"] = nlohmann::json::array();
  for (const auto& c : d.crossings()) {
    j["crossings"].push_back(
        {{"sign", c.sign}, {"over", c.over}, {"under_in", c.under_in}, {"under_out", c.under_out}});
  }
  return j.dump();
}

std::string to_string(const ReidemeisterMove& m) {
  using T = ReidemeisterMove::Type;
  std::ostringstream os;
  switch (m.type) {
    case T::R1Add: os << "R1_add(" << m.a << "," << (m.sign > 0 ? "+1" : "-1") << ")"; break;
    case T::R1Remove: os << "R1_remove(" << m.a << ")"; break;
    case T::R2Add: os << "R2_add(" << m.a << "," << m.b << ")"; break;
    case T::R2Remove: os << "R2_remove(" << m.a << "," << m.b << ")"; break;
    case T::R3: os << "R3(" << m.a << "," << m.b << "," << m.c << ")"; break;
  }
  return os.str();
}

namespace {

[[noreturn]] void not_applicable(const ReidemeisterMove& m, const std::string& why) {
  throw Error(ErrorKind::MoveNotApplicable, to_string(m) + ": " + why);
}

struct Bigon {
  int c1, c2;
};

// A two-edge face whose edges are an over-over and an under-under segment
// between crossings of opposite sign.
std::vector<Bigon> removable_bigons(const KnotDiagram& d, const std::vector<Face>& fs) {
  const auto& code = d.traversal();
  const int m = static_cast<int>(code.size());
  std::vector<Bigon> out;
  for (const auto& f : fs) {
    if (f.size() != 2) continue;
    int kinds[2];
    bool ok = true;
    std::set<int> labels;
    for (int k = 0; k < 2; ++k) {
      const int e = f[k].edge;
      const auto& t0 = code[e];
      const auto& t1 = code[(e + 1) % m];
      if (t0.label == t1.label || t0.is_over() != t1.is_over()) ok = false;
      kinds[k] = t0.is_over() ? 1 : 0;
      labels.insert(t0.label);
      labels.insert(t1.label);
    }
    if (!ok || kinds[0] == kinds[1] || labels.size() != 2) continue;
    const int c1 = *labels.begin();
    const int c2 = *labels.rbegin();
    if (d.crossings()[c1].sign == d.crossings()[c2].sign) continue;
    out.push_back({c1, c2});
  }
  return out;
}

// Edges of a triangular face with one over-over, one under-under and one
// mixed segment; returns the sorted crossing triple and the edges.
struct Triangle {
  std::array<int, 3> crossings;
  std::array<int, 3> edges;
};

std::vector<Triangle> r3_triangles(const KnotDiagram& d, const std::vector<Face>& fs) {
  const auto& code = d.traversal();
  const int m = static_cast<int>(code.size());
  std::vector<Triangle> out;
  for (const auto& f : fs) {
    if (f.size() != 3) continue;
    std::set<int> labels;
    int oo = 0, uu = 0, mixed = 0;
    bool ok = true;
    Triangle tri{};
    for (int k = 0; k < 3; ++k) {
      const int e = f[k].edge;
      tri.edges[k] = e;
      const auto& t0 = code[e];
      const auto& t1 = code[(e + 1) % m];
      if (t0.label == t1.label) ok = false;
      labels.insert(t0.label);
      labels.insert(t1.label);
      if (t0.is_over() && t1.is_over()) {
        ++oo;
      } else if (!t0.is_over() && !t1.is_over()) {
        ++uu;
      } else {
        ++mixed;
      }
    }
    std::set<int> edges(tri.edges.begin(), tri.edges.end());
    if (!ok || labels.size() != 3 || edges.size() != 3 || oo != 1 || uu != 1 || mixed != 1) continue;
    std::copy(labels.begin(), labels.end(), tri.crossings.begin());
    out.push_back(tri);
  }
  return out;
}

void check_crossing(const KnotDiagram& d, const ReidemeisterMove& mv, int c) {
  if (c < 0 || c >= d.crossing_count()) not_applicable(mv, "crossing out of range");
}

void check_arc(const KnotDiagram& d, const ReidemeisterMove& mv, int a) {
  if (a < 0 || a >= d.arc_count()) not_applicable(mv, "arc out of range");
}

KnotDiagram rebuild(const std::vector<GaussToken>& tokens) {
  try {
    return KnotDiagram::from_traversal(tokens);
  } catch (const Error& e) {
    throw Error(ErrorKind::Internal, std::string("move produced an invalid diagram: ") + e.what());
  }
}

}  // namespace

KnotDiagram reidemeister_apply(const KnotDiagram& d, const ReidemeisterMove& mv) {
  using T = ReidemeisterMove::Type;
  const auto& code = d.traversal();
  const int m = static_cast<int>(code.size());
  const int n = d.crossing_count();

  switch (mv.type) {
    case T::R1Add: {
      check_arc(d, mv, mv.a);
      if (mv.sign != 1 && mv.sign != -1) not_applicable(mv, "sign must be +1 or -1");
      if (n == 0) {
        return rebuild({make_token(Kind::Under, 0, mv.sign), make_token(Kind::Over, 0, mv.sign)});
      }
      // The arc starts at the undercrossing whose under_out is the arc.
      int start = -1;
      for (int c = 0; c < n; ++c) {
        if (d.crossings()[c].under_out == mv.a) start = d.under_position(c);
      }
      std::vector<GaussToken> out;
      for (int p = 0; p < m; ++p) {
        out.push_back(code[p]);
        if (p == start) {
          out.push_back(make_token(Kind::Over, n, mv.sign));
          out.push_back(make_token(Kind::Under, n, mv.sign));
        }
      }
      return rebuild(out);
    }
    case T::R1Remove: {
      check_crossing(d, mv, mv.a);
      const int po = d.over_position(mv.a);
      const int pu = d.under_position(mv.a);
      if ((po + 1) % m != pu && (pu + 1) % m != po) not_applicable(mv, "crossing is not a curl");
      std::vector<GaussToken> out;
      for (const auto& t : code) {
        if (t.label != mv.a) out.push_back(t);
      }
      return rebuild(out);
    }
    case T::R2Add: {
      check_arc(d, mv, mv.a);
      check_arc(d, mv, mv.b);
      if (n == 0) not_applicable(mv, "the crossingless diagram has a single edge");
      const auto fs = faces(d);
      for (const auto& f : fs) {
        for (const auto& da : f) {
          if (d.arc_of_position(da.edge) != mv.a) continue;
          for (const auto& db : f) {
            if (db.edge == da.edge || d.arc_of_position(db.edge) != mv.b) continue;
            const int sa = da.forward ? 1 : -1;
            const int sb = db.forward ? 1 : -1;
            const int x = n;
            const int y = n + 1;
            const int sign_x = -sb;
            const int sign_y = sb;
            std::vector<GaussToken> out;
            for (int p = 0; p < m; ++p) {
              out.push_back(code[p]);
              if (p == da.edge) {
                out.push_back(make_token(Kind::Over, x, sign_x));
                out.push_back(make_token(Kind::Over, y, sign_y));
              }
              if (p == db.edge) {
                if (sa == sb) {
                  out.push_back(make_token(Kind::Under, y, sign_y));
                  out.push_back(make_token(Kind::Under, x, sign_x));
                } else {
                  out.push_back(make_token(Kind::Under, x, sign_x));
                  out.push_back(make_token(Kind::Under, y, sign_y));
                }
              }
            }
            return rebuild(out);
          }
        }
      }
      not_applicable(mv, "arcs do not share a face");
    }
    case T::R2Remove: {
      check_crossing(d, mv, mv.a);
      check_crossing(d, mv, mv.b);
      const int lo = std::min(mv.a, mv.b);
      const int hi = std::max(mv.a, mv.b);
      for (const auto& bg : removable_bigons(d, faces(d))) {
        if (bg.c1 == lo && bg.c2 == hi) {
          std::vector<GaussToken> out;
          for (const auto& t : code) {
            if (t.label != lo && t.label != hi) out.push_back(t);
          }
          return rebuild(out);
        }
      }
      not_applicable(mv, "crossings do not bound a cancelling bigon");
    }
    case T::R3: {
      std::array<int, 3> want{mv.a, mv.b, mv.c};
      for (int c : want) check_crossing(d, mv, c);
      std::sort(want.begin(), want.end());
      for (const auto& tri : r3_triangles(d, faces(d))) {
        if (tri.crossings != want) continue;
        std::vector<GaussToken> out = code;
        for (int e : tri.edges) std::swap(out[e], out[(e + 1) % m]);
        return rebuild(out);
      }
      not_applicable(mv, "crossings do not bound a triangle with a top and bottom strand");
    }
  }
  throw Error(ErrorKind::Internal, "unknown move type");
}

std::vector<ReidemeisterMove> applicable_moves(const KnotDiagram& d) {
  std::vector<ReidemeisterMove> out;
  const int n = d.crossing_count();
  const int m = 2 * n;
  for (int a = 0; a < d.arc_count(); ++a) {
    out.push_back(ReidemeisterMove::r1_add(a, 1));
    out.push_back(ReidemeisterMove::r1_add(a, -1));
  }
  for (int c = 0; c < n; ++c) {
    const int po = d.over_position(c);
    const int pu = d.under_position(c);
    if ((po + 1) % m == pu || (pu + 1) % m == po) out.push_back(ReidemeisterMove::r1_remove(c));
  }
  if (n == 0) return out;
  const auto fs = faces(d);
  std::set<std::pair<int, int>> r2;
  for (const auto& f : fs) {
    for (const auto& da : f) {
      for (const auto& db : f) {
        if (da.edge == db.edge) continue;
        r2.insert({d.arc_of_position(da.edge), d.arc_of_position(db.edge)});
      }
    }
  }
  for (const auto& [a, b] : r2) out.push_back(ReidemeisterMove::r2_add(a, b));
  for (const auto& bg : removable_bigons(d, fs)) out.push_back(ReidemeisterMove::r2_remove(bg.c1, bg.c2));
  for (const auto& tri : r3_triangles(d, fs)) {
    out.push_back(ReidemeisterMove::r3(tri.crossings[0], tri.crossings[1], tri.crossings[2]));
  }
  return out;
}

}  // namespace topsurg
