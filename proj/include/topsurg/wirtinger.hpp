#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topsurg/knot.hpp"
#include "topsurg/presentation.hpp"

namespace topsurg {

struct SurgerySpec {
  KnotDiagram diagram;
  std::int64_t framing = 0;
};

struct LongitudeWord {
  Word word;
  std::int64_t exponent_sum = 0;
};

// Generator names for the arcs of a diagram: a..z, or x0, x1, ... beyond 26.
std::vector<std::string> arc_names(int arc_count);

// One generator per arc and one conjugation relator per crossing:
// b = c^-1 a c for a positive crossing, b = c a c^-1 for a negative one,
// with a the incoming under arc, b the outgoing one and c the over arc.
Presentation wirtinger(const KnotDiagram& d);

// Walks the knot once from the start of arc 0 and records the over arc at each
// underpass, with the crossing sign as exponent.
LongitudeWord blackboard_longitude(const KnotDiagram& d);

// Blackboard longitude followed by the arc-0 meridian to the power
// (framing - writhe).
LongitudeWord framed_longitude(const KnotDiagram& d, std::int64_t framing);

Presentation surgery_group(const SurgerySpec& s);

// Effect of a 0-surgery on the fundamental group: free product with Z.
Presentation connected_sum_group(const Presentation& p);

// (a | a^p); p = 0 gives Z.
Presentation lens_space_group(std::int64_t p);

}  // namespace topsurg
