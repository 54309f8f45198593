#include "doctest.h"
#include "support.hpp"

#include "plumbing/graph.hpp"
#include "plumbing/graph_io.hpp"

#include <random>

using namespace plumbing;
using testsupport::fixture;

namespace {

IntMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<std::string> ids_in_order(const OrderedGraph& og) {
  std::vector<std::string> out;
  for (auto v : og.order()) out.push_back(og.base().vertices()[v].id);
  return out;
}

}  // namespace

TEST_CASE("natural order compares digit runs numerically") {
  CHECK(natural_less("v2", "v10"));
  CHECK_FALSE(natural_less("v10", "v2"));
  CHECK(natural_less("a", "b"));
  CHECK(natural_less("E1", "E1a"));
}

TEST_CASE("validate accepts the smallest legal graph") {
  CHECK(validate(fixture("unknot.pg")).empty());
}

TEST_CASE("validate reports disconnected graphs") {
  PlumbingGraph g;
  g.add_vertex("v1", -1);
  g.add_vertex("v2", -1);
  const auto d = validate(g);
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == Diagnostic::Kind::Disconnected);
  CHECK_THROWS_AS(require_valid(g), std::invalid_argument);
}

TEST_CASE("validate accepts the four-vertex chain with two arrows") {
  CHECK(validate(fixture("two_branch_chain.pg")).empty());
}

TEST_CASE("validate flags missing branch labels and loops") {
  PlumbingGraph g;
  g.add_vertex("v1", -2);
  g.add_vertex("v2", -2);
  g.add_edge(0, 1);
  g.add_edge(0, 0);
  g.add_arrow(1, 2);
  const auto d = validate(g);
  std::vector<Diagnostic::Kind> kinds;
  for (const auto& x : d) kinds.push_back(x.kind);
  CHECK(std::count(kinds.begin(), kinds.end(), Diagnostic::Kind::LoopEdge) == 1);
  CHECK(std::count(kinds.begin(), kinds.end(), Diagnostic::Kind::MissingBranchLabel) == 1);
}

TEST_CASE("incidence of the four-vertex chain") {
  const auto g = fixture("two_branch_chain.pg");
  const auto [A, B] = incidence(g);
  CHECK(A == from_rows({{-2, 1, 0, 0}, {1, -3, 1, 0}, {0, 1, -1, 1}, {0, 0, 1, -2}}));
  REQUIRE(B.rows() == 4);
  REQUIRE(B.cols() == 2);
  // arrow 0: branch 1 at v4 (row 2); arrow 1: branch 2 at v2 (row 1)
  CHECK(B == from_rows({{0, 0}, {0, 1}, {1, 0}, {0, 0}}));
}

TEST_CASE("incidence of the closed double-edge graph") {
  const auto [A, B] = incidence(fixture("closed.pg"));
  CHECK(A == from_rows({{-5, 2}, {2, -1}}));
  CHECK(B.cols() == 0);
}

TEST_CASE("incidence of a single vertex") {
  PlumbingGraph g;
  g.add_vertex("v", -7);
  CHECK(incidence(g).A == from_rows({{-7}}));
}

TEST_CASE("negative definiteness on small matrices") {
  CHECK(is_negative_definite(from_rows({{-1}})));
  CHECK_FALSE(is_negative_definite(from_rows({{0}})));
  CHECK(is_negative_definite(incidence(fixture("two_branch_chain.pg")).A));
  CHECK_THROWS_AS(is_negative_definite(from_rows({{-1, 1}, {0, -1}})), std::invalid_argument);
}

TEST_CASE("leading minors agree with Laplace expansion") {
  const auto A = incidence(fixture("two_branch_chain.pg")).A;
  const auto minors = leading_principal_minors(A);
  REQUIRE(minors.size() == 4);
  CHECK(minors[0] == -2);
  CHECK(minors[1] == 5);
  CHECK(minors[2] == -3);
  for (std::size_t k = 1; k <= 4; ++k) {
    IntMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = A(i, j);
    CHECK(minors[k - 1] == testsupport::laplace_det(sub));
    CHECK(determinant(sub) == testsupport::laplace_det(sub));
  }
}

TEST_CASE("multiplicities of the two-branch chain") {
  const auto mt = solve_multiplicities(fixture("two_branch_chain.pg"));
  REQUIRE(mt.branch_count() == 2);
  CHECK(mt.per_branch[0] == std::vector<std::int64_t>{2, 4, 10, 5});
  CHECK(mt.per_branch[1] == std::vector<std::int64_t>{1, 2, 4, 2});
  CHECK(mt.total == std::vector<std::int64_t>{3, 6, 14, 7});
  CHECK(mt.lcm_of_totals() == 42);
  CHECK(mt.tuple(2) == std::vector<std::int64_t>{10, 4});
}

TEST_CASE("multiplicity of the unknot") {
  const auto mt = solve_multiplicities(fixture("unknot.pg"));
  CHECK(mt.total == std::vector<std::int64_t>{1});
}

TEST_CASE("multiplicity errors") {
  PlumbingGraph g;
  g.add_vertex("v", 1);
  g.add_arrow(0, 1);
  CHECK_THROWS_AS(solve_multiplicities(g), MultiplicityError);
  try {
    solve_multiplicities(g);
  } catch (const MultiplicityError& e) {
    CHECK(e.kind() == MultiplicityError::Kind::NotNegativeDefinite);
  }
  PlumbingGraph h;
  h.add_vertex("v", -2);
  h.add_arrow(0, 1);
  try {
    solve_multiplicities(h);
    FAIL("expected a non-integral solution");
  } catch (const MultiplicityError& e) {
    CHECK(e.kind() == MultiplicityError::Kind::NonIntegral);
  }
  CHECK_THROWS_AS(solve_multiplicities(fixture("closed.pg")), MultiplicityError);
}

TEST_CASE("branching vertices and quasihomogeneous shape") {
  const auto g = fixture("two_branch_chain.pg");
  const auto br = branching_vertices(g);
  REQUIRE(br.size() == 2);
  CHECK(g.vertices()[br[0]].id == "v2");
  CHECK(g.vertices()[br[1]].id == "v4");
  CHECK_FALSE(is_quasihomogeneous_shape(g));

  const auto star = testsupport::torus_star(3, 5);
  CHECK(branching_vertices(star).size() == 1);
  CHECK(is_quasihomogeneous_shape(star));

  PlumbingGraph chain;
  chain.add_vertex("v1", -1);
  chain.add_vertex("v2", -1);
  chain.add_edge(0, 1);
  chain.add_arrow(0, 1);
  chain.add_arrow(1, 2);
  CHECK(branching_vertices(chain).empty());
  CHECK(is_quasihomogeneous_shape(chain));
}

TEST_CASE("ordered tree rooted at v4 reverses the chain") {
  const auto og = choose_tree_and_orders(fixture("two_branch_chain.pg"), "v4");
  CHECK(ids_in_order(og) == std::vector<std::string>{"v4", "v3", "v2", "v1"});
  CHECK(og.extra_edges().empty());
}

TEST_CASE("default root is the lowest id") {
  const auto og = choose_tree_and_orders(fixture("two_branch_chain.pg"));
  CHECK(ids_in_order(og) == std::vector<std::string>{"v1", "v2", "v4", "v3"});
  CHECK_THROWS(choose_tree_and_orders(fixture("two_branch_chain.pg"), "nope"));
}

TEST_CASE("double edge puts one edge in the tree") {
  const auto g = fixture("closed.pg");
  const auto og = choose_tree_and_orders(g);
  CHECK(og.in_tree(0));
  CHECK_FALSE(og.in_tree(1));
  REQUIRE(og.extra_edges() == std::vector<std::size_t>{1});
  CHECK(og.extra_index(1) == std::size_t{0});
  CHECK_FALSE(og.extra_index(0).has_value());
}

TEST_CASE("first Betti number") {
  CHECK(first_betti(fixture("two_branch_chain.pg")) == 0);
  CHECK(first_betti(fixture("closed.pg")) == 1);
  CHECK(first_betti(fixture("doubled_chain.pg")) == 3);
  CHECK(choose_tree_and_orders(fixture("doubled_chain.pg")).extra_edges().size() == 3);
}

TEST_CASE("parse the chain fixture") {
  const auto g = fixture("two_branch_chain.pg");
  REQUIRE(g.vertex_count() == 4);
  CHECK(g.vertices()[2].id == "v4");
  CHECK(g.vertices()[2].euler == -1);
  CHECK(g.edge_count() == 3);
  CHECK(g.arrow_count() == 2);
  CHECK(g.branch_count() == 2);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_graph("");
    FAIL("empty input parsed");
  } catch (const ParseError& e) {
    CHECK(e.message() == "no vertices");
  }
  try {
    parse_graph("V v1 -1 0\nE v1 v1\n");
    FAIL("loop parsed");
  } catch (const ParseError& e) {
    CHECK(e.message() == "loop edge");
    CHECK(e.line() == 2);
  }
  try {
    parse_graph("V v1 -1 0\nV v1 -2 0\n");
    FAIL("duplicate parsed");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_graph("V v1 x 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("V v1 -1 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("V v1 -1 0\nE v1 v2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("Q v1\n"), ParseError);
}

TEST_CASE("vertices may be declared after use") {
  const auto g = parse_graph("E a b\nA b 1\nV b -1 0\nV a -2 0 # trailing\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("serialization is canonical") {
  const auto g = fixture("two_branch_chain.pg");
  const std::string text = serialize_graph(g);
  CHECK(text == "V v1 -2 0\nV v2 -3 0\nV v3 -2 0\nV v4 -1 0\nE v1 v2\nE v2 v4\nE v3 v4\nA v2 2\nA v4 1\n");
  CHECK(serialize_graph(parse_graph(text)) == text);
}

TEST_CASE("property: incidence symmetry and multiplicity equation on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testsupport::random_algebraic(rng, 7, 3);
    const auto [A, B] = incidence(g);
    CHECK(A.is_symmetric());
    CHECK(A == A.transpose());
    const auto mt = solve_multiplicities(g);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Integer row = Integer(static_cast<long long>(g.arrows_at(v).size()));
      for (std::size_t w = 0; w < g.vertex_count(); ++w) row += A(v, w) * mt.total[w];
      CHECK(row == 0);
    }
  }
}

TEST_CASE("property: Sylvester test agrees with rational LDL on 100 random matrices") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(1, 5), entry(-4, 4), diag(-9, 2);
  int definite = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(size(rng));
    IntMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      A(i, i) = diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) A(i, j) = A(j, i) = entry(rng) / 2;
    }
    const bool expected = testsupport::ldl_negative_definite(A);
    definite += expected;
    CHECK(is_negative_definite(A) == expected);
  }
  CHECK(definite > 5);
  CHECK(definite < 95);
}

TEST_CASE("property: tree choice is deterministic") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testsupport::random_negative_definite(rng, {});
    const auto text = serialize_graph(g);
    const auto a = choose_tree_and_orders(parse_graph(text));
    const auto b = choose_tree_and_orders(parse_graph(text));
    CHECK(a.order() == b.order());
    CHECK(a.extra_edges() == b.extra_edges());
    CHECK(a.arrows() == b.arrows());
  }
}

TEST_CASE("property: parse and serialize round trip") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testsupport::random_negative_definite(rng, {});
    const auto text = serialize_graph(g);
    CHECK(serialize_graph(parse_graph(text)) == text);
  }
}
