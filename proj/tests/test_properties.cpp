// Cross-module properties: Fox block structure, corank formulas, presentation
// invariance and symmetries of dim H^1, and the Alexander zero locus.

#include "doctest.h"
#include "support.hpp"

#include "plumbing/alexander.hpp"
#include "plumbing/charvar.hpp"

#include <random>

using namespace plumbing;
using testsupport::fixture;

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Unitary characters: chart exponents can reach the hundreds, so any modulus
// away from 1 pushes Fox entries far outside the range a relative SVD rank
// can resolve.
Character random_unitary_character(const CharacterTorus& torus, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0, kTwoPi);
  std::vector<ChartValue> coords;
  for (auto d : torus.orders) {
    if (d == 0)
      coords.push_back(ChartValue::number(std::polar(1.0, angle(rng))));
    else
      coords.push_back(ChartValue::zeta(std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng), d));
  }
  return make_character(torus, coords);
}

// Chart t_1..t_r on the meridians: branch-i arrows map to t_i and a vertex
// to its multiplicity tuple.
CharacterTorus meridian_chart(const PlumbingGraph& g, const OrderedGraph& og, const Presentation& p) {
  const auto mt = solve_multiplicities(g);
  const std::size_t r = mt.branch_count();
  std::vector<std::vector<std::int64_t>> mono(p.generator_count(), std::vector<std::int64_t>(r, 0));
  for (std::size_t j = 0; j < p.generator_count(); ++j) {
    const auto& gen = p.generators[j];
    if (gen.kind == GeneratorKind::Vertex) mono[j] = mt.tuple(og.vertex(gen.index));
    if (gen.kind == GeneratorKind::Arrow)
      mono[j][static_cast<std::size_t>(g.arrows()[og.arrows()[gen.index]].branch - 1)] = 1;
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < r; ++i) names.push_back("t" + std::to_string(i + 1));
  return custom_torus(p, std::make_shared<const AbelianizedGroup>(p), names, std::vector<std::int64_t>(r, 0), mono);
}

// |poly(t)| relative to the sum of the absolute values of its terms.
double relative_value(const LaurentPoly& poly, const std::vector<Complex>& t) {
  Complex sum = 0;
  double scale = 0;
  for (const auto& [e, c] : poly.terms()) {
    Complex term = static_cast<double>(c);
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(t[i], static_cast<double>(e[i]));
    sum += term;
    scale += std::abs(term);
  }
  return std::abs(sum) / scale;
}

}  // namespace

TEST_CASE("property: block and generic Fox matrices agree on 50 random graphs") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testsupport::random_negative_definite(rng, {.max_vertices = 6, .max_genus = 2, .max_extra_edges = 2,
                                                               .min_branches = 0, .max_branches = 3});
    CAPTURE(serialize_graph(g));
    REQUIRE(first_betti(g) <= 2);
    const auto og = choose_tree_and_orders(g);
    const auto ab = std::make_shared<const AbelianizedGroup>(presentation(og));
    const auto G = fox_matrix_generic(presentation(og, true), ab);
    const auto B = fox_matrix_blocks(og, ab);
    REQUIRE(G.rows == B.rows);
    REQUIRE(G.cols == B.cols);
    CHECK(G.row_tags == B.row_tags);
    for (std::size_t i = 0; i < G.entries.size(); ++i) CHECK(G.entries[i] == B.entries[i]);
  }
}

TEST_CASE("property: corank formulas hold at sampled B-set characters on 25 genus-bearing graphs") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 25; ++trial) {
    const auto g = testsupport::random_negative_definite(rng, {.max_vertices = 5, .max_genus = 2, .max_extra_edges = 2,
                                                               .min_branches = 0, .max_branches = 3, .force_genus = true});
    CAPTURE(serialize_graph(g));
    const auto report = b_epsilon_check(g, 4, 1000 + static_cast<std::uint64_t>(trial));
    CHECK_FALSE(report.unstable);
    for (const auto& t : report.trials) {
      CAPTURE(t.set);
      CHECK(static_cast<std::int64_t>(t.dim) == t.expected);
    }
    CHECK(report.ok());
  }
}

TEST_CASE("property: Tietze elimination preserves dim H1") {
  std::mt19937_64 rng(107);
  int compared = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = trial < 6 ? testsupport::random_negative_definite(rng, {.max_vertices = 5})
                             : testsupport::random_algebraic(rng, 5, 3);
    CAPTURE(serialize_graph(g));
    const auto p = presentation(choose_tree_and_orders(g));
    const auto s = tietze_eliminate(p);
    const auto torus = character_torus(std::make_shared<const AbelianizedGroup>(p));
    const auto Fp = fox_matrix_generic(p), Fs = fox_matrix_generic(s);
    for (int k = 0; k < 25; ++k) {
      const Character xi = k == 0 ? character_from_generators(std::vector<Complex>(p.generator_count(), 1.0))
                                  : random_unitary_character(torus, rng);
      std::vector<Complex> restricted;
      for (const auto& gen : s.generators) restricted.push_back(xi.values[*p.find(gen.name)]);
      const auto a = dim_h1(Fp, xi), b = dim_h1(Fs, character_from_generators(restricted));
      if (a.unstable || b.unstable) continue;
      CHECK(a.dim == b.dim);
      ++compared;
    }
  }
  CHECK(compared >= 250);
}

TEST_CASE("property: dim H1 is conjugation invariant and bounded off the trivial character") {
  std::mt19937_64 rng(109);
  std::vector<PlumbingGraph> graphs = {fixture("two_branch_chain.pg"), fixture("closed.pg"), fixture("doubled_chain.pg")};
  for (int k = 0; k < 6; ++k) graphs.push_back(testsupport::random_negative_definite(rng, {}));
  for (const auto& g : graphs) {
    const auto p = presentation(choose_tree_and_orders(g));
    const auto F = fox_matrix_generic(p);
    const auto torus = character_torus(F.ab);
    for (int k = 0; k < 10; ++k) {
      const auto xi = random_unitary_character(torus, rng);
      const auto a = dim_h1(F, xi), b = dim_h1(F, xi.conjugate());
      CHECK(a.dim == b.dim);
      if (!a.trivial) CHECK(a.dim + 1 <= p.generator_count());
    }
  }
  // also on the special doubled-chain points
  const auto p = presentation(choose_tree_and_orders(fixture("doubled_chain.pg")));
  const auto torus = character_torus(std::make_shared<const AbelianizedGroup>(p));
  for (const auto& e : sample_stratum(p, torus, {{"w1", ChartValue::zeta(1, 2)}}, 0, 5, 5).entries)
    CHECK(dim_h1(p, e.xi).dim == dim_h1(p, e.xi.conjugate()).dim);
}

TEST_CASE("property: 30 points on the Alexander zero locus lie in Char_1") {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> modulus(0.7, 1.4), angle(0, kTwoPi);
  std::vector<PlumbingGraph> graphs = {fixture("two_branch_chain.pg"), fixture("two_pair_chain.pg"), testsupport::torus_star(4, 6)};
  for (const auto& g : testsupport::two_cluster_fixtures(2)) graphs.push_back(g);
  int checked = 0;
  for (const auto& g : graphs) {
    const auto og = choose_tree_and_orders(g);
    const auto p = presentation(og);
    const auto torus = meridian_chart(g, og, p);
    const auto fp = en_multivariable(g, solve_multiplicities(g));
    const auto poly = expand(fp);
    const auto F = fox_matrix_generic(p);
    std::vector<FormalProduct::Factor> numerator;
    for (const auto& f : fp.factors)
      if (f.multiplicity > 0) numerator.push_back(f);
    REQUIRE_FALSE(numerator.empty());
    for (int found = 0, attempts = 0; found < 6; ++attempts) {
      REQUIRE(attempts < 200);
      // a point with t^exponent = 1 for a random numerator factor, solved for t_1
      const auto& f = numerator[std::uniform_int_distribution<std::size_t>(0, numerator.size() - 1)(rng)];
      std::vector<Complex> t(fp.variables);
      Complex rest = 1;
      for (std::size_t i = 1; i < t.size(); ++i) {
        t[i] = std::polar(modulus(rng), angle(rng));
        rest *= std::pow(t[i], static_cast<double>(f.exponent[i]));
      }
      const auto m1 = static_cast<double>(f.exponent[0]);
      const auto j = std::uniform_int_distribution<std::int64_t>(0, f.exponent[0] - 1)(rng);
      t[0] = std::pow(1.0 / rest, 1.0 / m1) * std::polar(1.0, kTwoPi * static_cast<double>(j) / m1);
      // skip points cancelled by a denominator factor
      if (relative_value(poly, t) > 1e-10) continue;
      std::vector<ChartValue> coords;
      for (auto z : t) coords.push_back(ChartValue::number(z));
      const auto h = dim_h1(F, make_character(torus, coords));
      CAPTURE(serialize_graph(g));
      CHECK(h.dim >= 1);
      ++found;
      ++checked;
    }
  }
  CHECK(checked == 30);
}
