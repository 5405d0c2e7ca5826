#include "topsurg/wirtinger.hpp"

#include "topsurg/error.hpp"

namespace topsurg {

std::vector<std::string> arc_names(int arc_count) {
  std::vector<std::string> names;
  for (int k = 0; k < arc_count; ++k) {
    names.push_back(arc_count <= 26 ? std::string(1, static_cast<char>('a' + k)) : "x" + std::to_string(k));
  }
  return names;
}

Presentation wirtinger(const KnotDiagram& d) {
  Presentation p(arc_names(d.arc_count()));
  for (const auto& x : d.crossings()) {
    // relator b (c^-s a c^s)^-1 = b c^-s a^-1 c^s
    Word r;
    r.append(x.under_out, 1).append(x.over, -x.sign).append(x.under_in, -1).append(x.over, x.sign);
    p.add_relator(r);
  }
  return p;
}

LongitudeWord blackboard_longitude(const KnotDiagram& d) {
  LongitudeWord out;
  const auto& code = d.traversal();
  const int m = static_cast<int>(code.size());
  for (int i = 1; i <= m; ++i) {
    const auto& t = code[i % m];
    if (t.is_over()) continue;
    const auto& x = d.crossings()[t.label];
    out.word.append(x.over, x.sign);
  }
  out.word = free_reduce(out.word);
  out.exponent_sum = out.word.exponent_sum();
  return out;
}

LongitudeWord framed_longitude(const KnotDiagram& d, std::int64_t framing) {
  LongitudeWord out = blackboard_longitude(d);
  out.word.append(0, framing - writhe(d));
  out.word = free_reduce(out.word);
  out.exponent_sum = out.word.exponent_sum();
  return out;
}

Presentation surgery_group(const SurgerySpec& s) {
  return quotient_by_relator(wirtinger(s.diagram), framed_longitude(s.diagram, s.framing).word);
}

Presentation connected_sum_group(const Presentation& p) {
  return free_product(p, Presentation({"z"}));
}

Presentation lens_space_group(std::int64_t p) {
  if (p < 0) {
    throw Error(ErrorKind::NegativeParameter,
                "lens space parameter must be non-negative (use |p|)");
  }
  Presentation out({"a"});
  if (p > 0) out.add_relator(Word::power(0, p));
  return out;
}

}  // namespace topsurg
