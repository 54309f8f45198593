#pragma once

#include "plumbing/graph.hpp"
#include "plumbing/laurent.hpp"

#include <vector>

namespace plumbing {

/// prod (t^exponent - 1)^multiplicity, optionally times (t - 1) in the
/// single-variable case.
struct FormalProduct {
  struct Factor {
    std::vector<std::int64_t> exponent;
    std::int64_t multiplicity = 0;
    std::size_t vertex = 0;  // base vertex the factor comes from
  };
  std::size_t variables = 1;
  std::vector<Factor> factors;
  bool t_minus_one = false;

  std::string to_string() const;
};

/// Multi-variable product over a tree: one factor per vertex with exponent
/// the per-branch multiplicity tuple and power rho(v) - 2. A knot (r = 1)
/// also gets the (t - 1) prefactor so that the unknot expands to 1.
FormalProduct en_multivariable(const PlumbingGraph& g, const MultiplicityTable& mt);

/// Single-variable product on total multiplicities with the (t - 1) prefactor.
FormalProduct acampo_single(const PlumbingGraph& g, const MultiplicityTable& mt);

/// Multiplies the positive factors, then divides out the negative ones
/// (ascending total degree) exactly, and normalizes the unit.
LaurentPoly expand(const FormalProduct& fp);

struct EssentialVariableReport {
  std::size_t lattice_rank = 0;
  bool single_essential = false;
  std::vector<std::int64_t> direction;  // primitive, first nonzero entry positive; empty unless rank 1
};

/// Rank of the lattice spanned by differences of the exponent vectors.
EssentialVariableReport essential_variable_report(const LaurentPoly& p);

}  // namespace plumbing
