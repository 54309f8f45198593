#pragma once

// Fixture loading, graph generators and small independent oracles shared by
// the unit, property and acceptance tests.

#include "plumbing/graph.hpp"
#include "plumbing/graph_io.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using plumbing::Integer;
using plumbing::IntMatrix;
using plumbing::PlumbingGraph;
using plumbing::Rational;

inline std::string data_path(const std::string& name) { return std::string(PLUMBING_TEST_DATA) + "/" + name; }

inline PlumbingGraph fixture(const std::string& name) { return plumbing::read_graph_file(data_path(name)); }

// ---------------------------------------------------------------------------
// Blow-up simulation. Vertices are exceptional divisors E1, E2, ... in
// creation order; each blow-up adds a -1 vertex and lowers the Euler number
// of every divisor through the centre.

class BlowUpBuilder {
public:
  std::size_t blow_up_free_point(std::size_t v) {
    const auto e = new_divisor();
    touch(v);
    edges_.push_back({v, e});
    return e;
  }

  std::size_t blow_up_corner(std::size_t edge) {
    const auto [a, b] = edges_[edge];
    const auto e = new_divisor();
    touch(a);
    touch(b);
    edges_[edge] = {a, e};
    edges_.push_back({e, b});
    return e;
  }

  std::size_t first_point() { return new_divisor(); }

  void add_arrow(std::size_t v, int branch) { arrows_.push_back({v, branch}); }

  std::size_t size() const { return euler_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  // Edge index joining a and b, or npos.
  std::size_t edge_between(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if ((edges_[i].first == a && edges_[i].second == b) || (edges_[i].first == b && edges_[i].second == a)) return i;
    return npos;
  }

  PlumbingGraph build() const {
    PlumbingGraph g;
    for (std::size_t v = 0; v < euler_.size(); ++v) g.add_vertex("E" + std::to_string(v + 1), euler_[v], 0);
    for (const auto& [a, b] : edges_) g.add_edge(a, b);
    for (const auto& [v, br] : arrows_) g.add_arrow(v, br);
    return g;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::size_t new_divisor() {
    euler_.push_back(-1);
    return euler_.size() - 1;
  }
  void touch(std::size_t v) { --euler_[v]; }

  std::vector<std::int64_t> euler_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::pair<std::size_t, int>> arrows_;
};

// Resolves x^a = y^b (a, b >= 1). The point sits on divisor slots U = {x=0}
// and W = {y=0}; the coordinate axes themselves are not part of the graph.
// When a = b the d = a branches separate on the last divisor.
inline BlowUpBuilder resolve_monomial_curve(std::int64_t a, std::int64_t b, std::size_t* last = nullptr) {
  BlowUpBuilder bb;
  constexpr auto none = BlowUpBuilder::npos;
  std::size_t U = none, W = none;
  while (true) {
    std::size_t e;
    if (U == none && W == none)
      e = bb.first_point();
    else if (U != none && W != none)
      e = bb.blow_up_corner(bb.edge_between(U, W));
    else
      e = bb.blow_up_free_point(U != none ? U : W);
    if (a == b) {
      for (int br = 1; br <= a; ++br) bb.add_arrow(e, br);
      if (last) *last = e;
      return bb;
    }
    if (a > b) {
      a -= b;
      U = e;
    } else {
      b -= a;
      W = e;
    }
  }
}

inline PlumbingGraph torus_star(std::int64_t p, std::int64_t q) { return resolve_monomial_curve(p, q).build(); }

// Star of x^p = y^q (coprime) plus a smooth curvette through a degree-2
// vertex: two branching vertices.
inline std::vector<PlumbingGraph> two_cluster_fixtures(std::size_t count) {
  std::vector<PlumbingGraph> out;
  const std::vector<std::pair<int, int>> stars = {{2, 5}, {3, 4}, {3, 5}, {2, 7}, {4, 5}, {3, 7}, {2, 9}, {5, 7}};
  for (const auto& [p, q] : stars) {
    const PlumbingGraph base = torus_star(p, q);
    for (std::size_t v = 0; v < base.vertex_count() && out.size() < count; ++v) {
      if (base.degree(v) != 2) continue;
      PlumbingGraph g = base;
      g.add_arrow(v, 2);
      out.push_back(g);
    }
    if (out.size() >= count) break;
  }
  return out;
}

// Graphs with at most one branching vertex: torus stars (including
// non-reduced exponents giving several branches) and stars with an extra
// curvette through the central vertex.
inline std::vector<PlumbingGraph> one_branching_fixtures() {
  std::vector<PlumbingGraph> out;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}, {4, 6}, {6, 9}, {5, 5}})
    out.push_back(torus_star(p, q));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}}) {
    std::size_t centre = 0;
    BlowUpBuilder bb = resolve_monomial_curve(p, q, &centre);
    bb.add_arrow(centre, 2);
    out.push_back(bb.build());
  }
  return out;
}

inline bool is_minimal_resolution(const PlumbingGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.vertices()[v].euler == -1 && g.vertices()[v].genus == 0 && g.degree(v) <= 2) return false;
  return true;
}

inline PlumbingGraph random_resolution_once(std::mt19937_64& rng, std::size_t max_blowups, int max_branches) {
  BlowUpBuilder bb;
  bb.first_point();
  const std::size_t steps = std::uniform_int_distribution<std::size_t>(0, max_blowups)(rng);
  for (std::size_t s = 0; s < steps; ++s) {
    const bool corner = !bb.edges().empty() && std::bernoulli_distribution(0.5)(rng);
    if (corner)
      bb.blow_up_corner(std::uniform_int_distribution<std::size_t>(0, bb.edges().size() - 1)(rng));
    else
      bb.blow_up_free_point(std::uniform_int_distribution<std::size_t>(0, bb.size() - 1)(rng));
  }
  const int r = std::uniform_int_distribution<int>(1, max_branches)(rng);
  for (int br = 1; br <= r; ++br) bb.add_arrow(std::uniform_int_distribution<std::size_t>(0, bb.size() - 1)(rng), br);
  return bb.build();
}

// Random embedded resolution: a few blow-ups at free or corner points, then
// 1..max_branches smooth curvettes at random divisors. Non-minimal results
// (a -1 vertex of degree at most 2, arrows included) are redrawn, since a
// contractible vertex can fake a branching vertex.
inline PlumbingGraph random_algebraic(std::mt19937_64& rng, std::size_t max_blowups, int max_branches) {
  while (true) {
    PlumbingGraph g = random_resolution_once(rng, max_blowups, max_branches);
    if (is_minimal_resolution(g)) return g;
  }
}

struct RandomGraphSpec {
  std::size_t max_vertices = 6;
  std::int64_t max_genus = 2;
  std::size_t max_extra_edges = 2;
  int min_branches = 0;
  int max_branches = 3;
  bool force_genus = false;  // at least one vertex of positive genus
};

// Random connected graph, negative definite by diagonal dominance:
// euler(v) <= -(edge degree + 1).
inline PlumbingGraph random_negative_definite(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  const auto n = static_cast<std::size_t>(uni(1, static_cast<std::int64_t>(spec.max_vertices)));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(v) - 1)), v});
  if (n >= 2) {
    const auto extra = uni(0, static_cast<std::int64_t>(spec.max_extra_edges));
    for (std::int64_t k = 0; k < extra; ++k) {
      auto a = static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(n) - 1));
      auto b = static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(n) - 2));
      if (b >= a) ++b;
      edges.push_back({a, b});
    }
  }
  std::vector<std::int64_t> deg(n, 0), genus(n, 0);
  for (const auto& [a, b] : edges) ++deg[a], ++deg[b];
  for (auto& x : genus) x = uni(0, spec.max_genus);
  if (spec.force_genus && std::all_of(genus.begin(), genus.end(), [](auto x) { return x == 0; }))
    genus[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(n) - 1))] = uni(1, std::max<std::int64_t>(1, spec.max_genus));

  PlumbingGraph g;
  for (std::size_t v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v + 1), -(deg[v] + 1 + uni(0, 2)), genus[v]);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  const int r = static_cast<int>(uni(spec.min_branches, spec.max_branches));
  for (int br = 1; br <= r; ++br) g.add_arrow(static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(n) - 1)), br);
  return g;
}

// Same graph with vertex ids permuted and all lists shuffled.
inline PlumbingGraph relabeled(const PlumbingGraph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  PlumbingGraph out;
  std::vector<std::size_t> where(g.vertex_count());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const auto& v = g.vertices()[perm[k]];
    where[perm[k]] = out.add_vertex("x" + std::to_string(k + 1), v.euler, v.genus);
  }
  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  for (const auto& e : edges) out.add_edge(where[e.b], where[e.a]);
  auto arrows = g.arrows();
  std::shuffle(arrows.begin(), arrows.end(), rng);
  for (const auto& h : arrows) out.add_arrow(where[h.vertex], h.branch);
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

// Negative definiteness by rational LDL^T without pivoting: all pivots < 0.
inline bool ldl_negative_definite(const IntMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(A(i, j));
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] >= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

// Laplace expansion along the first row.
inline Integer laplace_det(const IntMatrix& A) {
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  if (n == 1) return A(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (A(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = A(i, j);
    const Integer term = A(0, c) * laplace_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

// Genus of a connected N-fold cyclic cover of the sphere with monodromies a_i:
// the points over the i-th branch point are the orbits of x -> x + a_i on Z/N,
// counted by walking the orbits.
inline std::int64_t cycle_count_genus(std::int64_t N, const std::vector<std::int64_t>& a) {
  std::int64_t chi = N * (2 - static_cast<std::int64_t>(a.size()));
  for (auto step : a) {
    std::vector<bool> seen(static_cast<std::size_t>(N), false);
    std::int64_t orbits = 0;
    for (std::int64_t s = 0; s < N; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      ++orbits;
      for (std::int64_t x = s; !seen[static_cast<std::size_t>(x)]; x = (x + step) % N) seen[static_cast<std::size_t>(x)] = true;
    }
    chi += orbits;
  }
  return (2 - chi) / 2;
}

// Dense integer polynomials, coefficient of t^k at index k.
using DensePoly = std::vector<std::int64_t>;

inline DensePoly dense_mul(const DensePoly& a, const DensePoly& b) {
  DensePoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Schoolbook long division by a monic divisor; returns {quotient, remainder}.
inline std::pair<DensePoly, DensePoly> dense_divmod(DensePoly a, const DensePoly& d) {
  if (a.size() < d.size()) return {{0}, a};
  DensePoly q(a.size() - d.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const auto c = a[k + d.size() - 1] / d.back();
    q[k] = c;
    for (std::size_t j = 0; j < d.size(); ++j) a[k + j] -= c * d[j];
  }
  a.resize(d.size() - 1);
  return {q, a};
}

inline DensePoly t_power_minus_one(std::size_t k) {
  DensePoly p(k + 1, 0);
  p[0] = -1;
  p[k] = 1;
  return p;
}

}  // namespace testsupport
