#pragma once

// Character chart of the doubled four-vertex chain (fixture doubled_chain.pg):
// free coordinates t1..t4 and t5 of order 2. Vertices map to powers of t4
// (times t5 at u4), the arrow to t5*t4^2, and the three off-tree edges
// u1-u2, u2-u3, u3-u4 to t3, t2, t1.

#include "plumbing/charvar.hpp"

#include <memory>

namespace testsupport {

inline plumbing::CharacterTorus doubled_chain_chart(const plumbing::Presentation& p, plumbing::AbelianPtr ab) {
  std::vector<std::vector<std::int64_t>> mono(p.generator_count(), std::vector<std::int64_t>(5, 0));
  auto set = [&](const char* gen, std::vector<std::int64_t> m) { mono[*p.find(gen)] = std::move(m); };
  set("gv1", {0, 0, 0, 4, 0});
  set("gv2", {0, 0, 0, 6, 0});
  set("gv3", {0, 0, 0, 5, 0});
  set("gv4", {0, 0, 0, 4, 1});
  set("gh1", {0, 0, 0, 2, 1});
  set("ge1", {0, 0, 1, 0, 0});
  set("ge2", {0, 1, 0, 0, 0});
  set("ge3", {1, 0, 0, 0, 0});
  return plumbing::custom_torus(p, std::move(ab), {"t1", "t2", "t3", "t4", "t5"}, {0, 0, 0, 0, 2}, std::move(mono));
}

}  // namespace testsupport
