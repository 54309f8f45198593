#pragma once

#include "plumbing/fox.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plumbing {

/// Coordinates on the character torus: free coordinates range over C*,
/// a coordinate of order d over the d-th roots of unity. Each generator's
/// value is a monomial in the coordinates.
struct CharacterTorus {
  AbelianPtr ab;
  std::vector<std::string> names;
  std::vector<std::int64_t> orders;                              // 0 = free
  std::vector<std::vector<std::int64_t>> generator_monomials;  // [generator][coordinate]

  std::size_t dimension() const;  // number of free coordinates
  std::vector<std::int64_t> torsion_orders() const;
  std::optional<std::size_t> find(const std::string& name) const;
};

/// Chart read off the Smith form: torsion coordinates w1.. then free z1...
CharacterTorus character_torus(AbelianPtr ab);

/// User-supplied chart. Checked to be an isomorphism onto the character
/// torus of `p`; throws std::invalid_argument otherwise.
CharacterTorus custom_torus(const Presentation& p, AbelianPtr ab, std::vector<std::string> names,
                            std::vector<std::int64_t> orders, std::vector<std::vector<std::int64_t>> monomials);

/// A chart value: a complex number, or the root of unity exp(2 pi i P/Q).
struct ChartValue {
  Complex value{1, 0};
  std::optional<std::pair<std::int64_t, std::int64_t>> root;

  static ChartValue number(Complex z) { return {z, std::nullopt}; }
  static ChartValue zeta(std::int64_t p, std::int64_t q);
};

struct Character {
  std::vector<Complex> values;  // one per generator
  std::vector<Complex> chart;   // chart coordinates, when built through a chart

  bool is_trivial(double tol = 1e-12) const;
  Character conjugate() const;
};

Character make_character(const CharacterTorus& torus, const std::vector<ChartValue>& coords);
Character character_from_generators(std::vector<Complex> values);

/// Abelianized relators evaluate to 1 within `tol` (relative).
bool is_valid_character(const Presentation& p, const Character& xi, double tol = 1e-9);

struct H1Dimension {
  std::size_t dim = 0;
  std::size_t rank = 0;
  bool trivial = false;
  bool unstable = false;
  double threshold = 0;
  std::vector<double> singular_values;
};

/// dim H^1(G; C_xi) from the numeric rank of the evaluated Fox matrix:
/// m - rank - 1 off the trivial character, m - rank at it. Singular values
/// below tol * sigma_max count as zero; any value within a factor 10 of
/// that threshold flags the result unstable.
H1Dimension dim_h1(const FoxMatrix& F, const Character& xi, double tol = 1e-8);
H1Dimension dim_h1(const Presentation& p, const Character& xi, double tol = 1e-8);

struct CorankMode {
  enum class Kind { B1, BEpsW } kind = Kind::B1;
  std::size_t w = 0;  // base vertex index for BEpsW

  static CorankMode b1() { return {}; }
  static CorankMode b_eps_w(std::size_t w) { return {Kind::BEpsW, w}; }
};

/// Corank of the Fox matrix on the sets B_1 / B_{eps,w} from graph data
/// alone. Requires a negative definite intersection matrix.
std::int64_t corank_closed_form(const PlumbingGraph& g, CorankMode mode);

using Constraints = std::map<std::string, ChartValue>;

struct StratumSample {
  struct Entry {
    Character xi;
    H1Dimension h1;
  };
  std::vector<Entry> entries;
  std::size_t target = 0;
  std::string constraints;

  bool all_at_target() const;
  bool any_unstable() const;
};

/// Draws `count` characters with the unconstrained free coordinates of
/// modulus uniform in [0.5, 2] and uniform argument, unconstrained torsion
/// coordinates uniform among the roots of unity. Deterministic in `seed`.
StratumSample sample_stratum(const Presentation& p, const CharacterTorus& torus, const Constraints& constraints,
                             std::size_t target, std::size_t count, std::uint64_t seed, double tol = 1e-8);

struct BEpsilonReport {
  struct Trial {
    std::string set;  // "B1" or "Beps,<vertex id>"
    std::size_t dim = 0;
    std::int64_t expected = 0;
    bool trivial = false;
  };
  std::int64_t corank_b1 = 0;
  std::vector<Trial> trials;
  bool unstable = false;
  bool ok() const;
};

/// Samples B_1 and every B_{eps,w} (at t_e = 1) and compares dim H^1 with
/// the closed-form corank: corank - 1 away from the trivial character,
/// corank at it.
BEpsilonReport b_epsilon_check(const PlumbingGraph& g, std::size_t trials, std::uint64_t seed, double tol = 1e-8);

/// Genus data, cycle rank and arrow count: all the obstruction looks at.
struct GraphShape {
  std::vector<std::int64_t> genus;
  std::int64_t b1 = 0;
  std::size_t arrows = 0;
};

struct Obstruction {
  bool fires = false;
  std::size_t positive_genus = 0;
  std::int64_t b1 = 0;
  std::int64_t k = 0;  // strata pair (k, k+1)
};

Obstruction cornqp_obstruction(const GraphShape& shape);
/// Checks negative definiteness first (throws std::invalid_argument).
Obstruction cornqp_obstruction(const PlumbingGraph& g);

/// Parses `name=RE[+IMi]` / `name=zeta(P,Q)` items separated by commas.
Constraints parse_constraints(const std::string& text);
Complex parse_complex(const std::string& text);

}  // namespace plumbing
