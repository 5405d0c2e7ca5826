#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace topsurg {

// One crossing of an oriented knot diagram. Arcs run from undercrossing to
// undercrossing; under_in ends at this crossing and under_out starts here.
struct Crossing {
  int sign = 1;  // writhe convention, +1 or -1
  int over = 0;
  int under_in = 0;
  int under_out = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct GaussToken {
  enum class Kind { Over, Under };
  Kind kind = Kind::Over;
  int label = 0;
  int sign = 1;

  bool is_over() const { return kind == Kind::Over; }
  friend bool operator==(const GaussToken&, const GaussToken&) = default;
};

// A validated single-component planar knot diagram.
//
// The traversal is stored normalized: it starts at the undercrossing giving the
// least canonical code (so equal diagrams compare equal), that undercrossing
// begins arc 0, arcs are numbered in traversal order, and crossing i is the
// i-th overpass met along the traversal. The unknot has no crossings and one
// arc.
class KnotDiagram {
 public:
  KnotDiagram();

  // Builds a diagram from a cyclic token sequence with arbitrary labels.
  // Throws InconsistentCode when the code is not a planar knot.
  static KnotDiagram from_traversal(const std::vector<GaussToken>& tokens);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<GaussToken>& traversal() const { return code_; }
  const std::vector<int>& arc_order() const { return arc_order_; }
  int arc_count() const { return arc_count_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }

  // Arc that the traversal edge leaving position pos belongs to.
  int arc_of_position(int pos) const;
  // Positions of the over and under passages of a crossing.
  int over_position(int crossing) const { return over_pos_[crossing]; }
  int under_position(int crossing) const { return under_pos_[crossing]; }

  friend bool operator==(const KnotDiagram& a, const KnotDiagram& b) {
    return a.code_ == b.code_;
  }

 private:
  std::vector<GaussToken> code_;
  std::vector<Crossing> crossings_;
  std::vector<int> arc_order_;
  std::vector<int> over_pos_;
  std::vector<int> under_pos_;
  std::vector<int> arc_at_;
  int arc_count_ = 1;
};

// A face of the diagram's planar graph, as a cycle of traversal edges. Edge e
// joins position e to position e+1; forward means the face is walked along
// the knot orientation.
struct FaceDart {
  int edge = 0;
  bool forward = true;
};
using Face = std::vector<FaceDart>;

std::vector<Face> faces(const KnotDiagram& d);

KnotDiagram parse_gauss(std::string_view text);
KnotDiagram parse_pd(std::string_view text);
KnotDiagram parse_diagram_json(std::string_view text);
// Dispatches on the leading character: '{' JSON, 'X' or 'P' PD, else Gauss.
KnotDiagram parse_diagram(std::string_view text);

int writhe(const KnotDiagram& d);

// Canonical signed Gauss code, minimized over the starting arc.
std::string serialize(const KnotDiagram& d);
std::string to_json(const KnotDiagram& d);

struct ReidemeisterMove {
  enum class Type { R1Add, R1Remove, R2Add, R2Remove, R3 };
  Type type = Type::R1Add;
  int a = 0;
  int b = 0;
  int c = 0;
  int sign = 1;

  static ReidemeisterMove r1_add(int arc, int sign) { return {Type::R1Add, arc, 0, 0, sign}; }
  static ReidemeisterMove r1_remove(int crossing) { return {Type::R1Remove, crossing}; }
  // Pushes a finger of arc `over_arc` across arc `under_arc`.
  static ReidemeisterMove r2_add(int over_arc, int under_arc) {
    return {Type::R2Add, over_arc, under_arc};
  }
  static ReidemeisterMove r2_remove(int c1, int c2) { return {Type::R2Remove, c1, c2}; }
  static ReidemeisterMove r3(int c1, int c2, int c3) { return {Type::R3, c1, c2, c3}; }

  friend bool operator==(const ReidemeisterMove&, const ReidemeisterMove&) = default;
};

std::string to_string(const ReidemeisterMove& m);

KnotDiagram reidemeister_apply(const KnotDiagram& d, const ReidemeisterMove& move);

// Every move applicable to d. R1 additions are listed once per arc and sign.
std::vector<ReidemeisterMove> applicable_moves(const KnotDiagram& d);

}  // namespace topsurg
