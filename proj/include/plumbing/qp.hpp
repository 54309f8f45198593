#pragma once

#include "plumbing/alexander.hpp"
#include "plumbing/cover.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plumbing {

enum class Verdict { QuasiProjective, NotQuasiProjective, Inconclusive };

std::string verdict_name(Verdict v);

struct QPReport {
  struct Witness {
    std::int64_t n = 0;
    std::vector<std::int64_t> genus;
    std::int64_t b1 = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t arrows = 0;
    Obstruction obstruction;
  };

  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::size_t> branching;  // base vertex indices
  std::int64_t e = 0;                  // lcm of total multiplicities (0 when no search ran)
  std::vector<std::int64_t> tried;     // cover degrees examined, in order
  std::optional<Witness> witness;
  std::optional<EssentialVariableReport> alexander_layer;  // attached for r >= 3
};

/// Quasi-projectivity of an algebraic-link group. At most one branching
/// vertex means QuasiProjective; otherwise the divisors of e are tried in
/// ascending order until a cyclic cover fires the genus/cycle obstruction.
QPReport classify(const PlumbingGraph& g);

std::vector<std::int64_t> divisors(std::int64_t e);

}  // namespace plumbing
