#include "plumbing/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

namespace plumbing {

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      // compare digit runs numerically, ignoring leading zeros
      std::size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return ie - is < je - js;
      const int c = a.compare(is, ie - is, b, js, je - js);
      if (c != 0) return c < 0;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (i < a.size() || j < b.size()) return j < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// PlumbingGraph

std::size_t PlumbingGraph::add_vertex(std::string id, std::int64_t euler, std::int64_t genus) {
  if (index_.count(id) != 0) throw std::invalid_argument("duplicate vertex id '" + id + "'");
  const std::size_t idx = vertices_.size();
  index_.emplace(id, idx);
  vertices_.push_back(Vertex{std::move(id), euler, genus});
  return idx;
}

std::size_t PlumbingGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= vertices_.size() || b >= vertices_.size()) throw std::out_of_range("edge endpoint out of range");
  edges_.push_back(Edge{a, b});
  return edges_.size() - 1;
}

std::size_t PlumbingGraph::add_edge(const std::string& a, const std::string& b) {
  return add_edge(index_of(a), index_of(b));
}

std::size_t PlumbingGraph::add_arrow(std::size_t vertex, int branch) {
  if (vertex >= vertices_.size()) throw std::out_of_range("arrow vertex out of range");
  arrows_.push_back(Arrow{vertex, branch});
  return arrows_.size() - 1;
}

std::size_t PlumbingGraph::add_arrow(const std::string& vertex, int branch) {
  return add_arrow(index_of(vertex), branch);
}

int PlumbingGraph::branch_count() const {
  int r = 0;
  for (const auto& h : arrows_) r = std::max(r, h.branch);
  return r;
}

std::int64_t PlumbingGraph::total_genus() const {
  std::int64_t g = 0;
  for (const auto& v : vertices_) g += v.genus;
  return g;
}

std::optional<std::size_t> PlumbingGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PlumbingGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown vertex id '" + id + "'");
  return it->second;
}

std::size_t PlumbingGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& e : edges_) {
    if (e.a == v) ++d;
    if (e.b == v) ++d;
  }
  for (const auto& h : arrows_)
    if (h.vertex == v) ++d;
  return d;
}

std::vector<std::size_t> PlumbingGraph::arrows_at(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].vertex == v) out.push_back(i);
  return out;
}

bool PlumbingGraph::is_connected() const {
  if (vertices_.empty()) return false;
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find_root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertices_.size();
  for (const auto& e : edges_) {
    auto ra = find_root(e.a), rb = find_root(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

bool PlumbingGraph::is_tree() const { return is_connected() && edges_.size() + 1 == vertices_.size(); }

std::vector<std::size_t> PlumbingGraph::sorted_vertex_indices() const {
  std::vector<std::size_t> idx(vertices_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return natural_less(vertices_[x].id, vertices_[y].id); });
  return idx;
}

// ---------------------------------------------------------------------------
// validation

std::vector<Diagnostic> validate(const PlumbingGraph& g) {
  std::vector<Diagnostic> out;
  using K = Diagnostic::Kind;
  if (g.vertex_count() == 0) {
    out.push_back({K::NoVertices, "no vertices"});
    return out;
  }
  if (!g.is_connected()) out.push_back({K::Disconnected, "disconnected"});
  for (const auto& e : g.edges())
    if (e.a == e.b) out.push_back({K::LoopEdge, "loop edge at '" + g.vertices()[e.a].id + "'"});
  for (const auto& v : g.vertices())
    if (v.genus < 0) out.push_back({K::NegativeGenus, "negative genus at '" + v.id + "'"});
  std::vector<bool> used(static_cast<std::size_t>(g.branch_count()) + 1, false);
  for (const auto& h : g.arrows()) {
    if (h.branch < 1)
      out.push_back({K::BadBranchLabel, "branch label " + std::to_string(h.branch) + " at '" +
                                            g.vertices()[h.vertex].id + "' is not positive"});
    else
      used[static_cast<std::size_t>(h.branch)] = true;
  }
  for (int i = 1; i <= g.branch_count(); ++i)
    if (!used[static_cast<std::size_t>(i)])
      out.push_back({K::MissingBranchLabel, "branch label " + std::to_string(i) + " has no arrow"});
  return out;
}

void require_valid(const PlumbingGraph& g) {
  auto diags = validate(g);
  if (diags.empty()) return;
  std::string msg = "invalid plumbing graph:";
  for (const auto& d : diags) msg += " " + d.message + ";";
  throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// incidence and definiteness

IncidencePair incidence(const PlumbingGraph& g) {
  const std::size_t n = g.vertex_count();
  IncidencePair p{IntMatrix(n, n), IntMatrix(n, g.arrow_count())};
  for (std::size_t v = 0; v < n; ++v) p.A(v, v) = g.vertices()[v].euler;
  for (const auto& e : g.edges()) {
    if (e.a == e.b) continue;
    p.A(e.a, e.b) += 1;
    p.A(e.b, e.a) += 1;
  }
  for (std::size_t h = 0; h < g.arrow_count(); ++h) p.B(g.arrows()[h].vertex, h) = 1;
  return p;
}

namespace {

// Bareiss elimination without pivoting. Returns the pivots, i.e. the leading
// principal minors, stopping early at the first vanishing one.
std::vector<Integer> bareiss_pivots(IntMatrix m) {
  const std::size_t n = m.rows();
  std::vector<Integer> pivots;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Integer pivot = m(k, k);
    pivots.push_back(pivot);
    if (pivot == 0) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m.cols(); ++j) m(i, j) = (pivot * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = pivot;
  }
  return pivots;
}

IntMatrix leading_block(const IntMatrix& A, std::size_t k) {
  IntMatrix s(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s(i, j) = A(i, j);
  return s;
}

}  // namespace

std::vector<Integer> leading_principal_minors(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("leading_principal_minors: matrix is not square");
  auto minors = bareiss_pivots(A);
  for (std::size_t k = minors.size(); k < A.rows(); ++k) minors.push_back(determinant(leading_block(A, k + 1)));
  return minors;
}

bool is_negative_definite(const IntMatrix& A) {
  if (!A.is_symmetric()) throw std::invalid_argument("is_negative_definite: matrix is not symmetric");
  if (A.rows() == 0) return true;
  const auto pivots = bareiss_pivots(A);
  if (pivots.size() < A.rows()) return false;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    // (-1)^(k+1) D_{k+1} > 0
    const int sign = pivots[k].sign();
    if ((k % 2 == 0 && sign >= 0) || (k % 2 == 1 && sign <= 0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// multiplicities

std::vector<std::int64_t> MultiplicityTable::tuple(std::size_t v) const {
  std::vector<std::int64_t> t;
  t.reserve(per_branch.size());
  for (const auto& col : per_branch) t.push_back(col[v]);
  return t;
}

std::int64_t MultiplicityTable::lcm_of_totals() const {
  std::int64_t l = 1;
  for (auto m : total) l = lcm64(l, m);
  return l;
}

MultiplicityTable solve_multiplicities(const PlumbingGraph& g) {
  require_valid(g);
  const std::size_t n = g.vertex_count();
  const int r = g.branch_count();
  if (r < 1) throw MultiplicityError(MultiplicityError::Kind::NoBranches, "graph has no arrows");
  const auto inc = incidence(g);
  if (!is_negative_definite(inc.A))
    throw MultiplicityError(MultiplicityError::Kind::NotNegativeDefinite, "intersection matrix is not negative definite");

  // Augmented system [A | -b_1 ... -b_r], eliminated fraction-free.
  const std::size_t cols = n + static_cast<std::size_t>(r);
  IntMatrix m(n, cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = inc.A(i, j);
  for (const auto& h : g.arrows()) m(h.vertex, n + static_cast<std::size_t>(h.branch - 1)) -= 1;

  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Integer pivot = m(k, k);  // nonzero: every leading minor of a definite matrix is
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) m(i, j) = (pivot * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = pivot;
  }

  MultiplicityTable table;
  table.per_branch.assign(static_cast<std::size_t>(r), std::vector<std::int64_t>(n, 0));
  table.total.assign(n, 0);
  for (int b = 0; b < r; ++b) {
    const std::size_t rhs = n + static_cast<std::size_t>(b);
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Rational acc = Rational(m(ii, rhs));
      for (std::size_t j = ii + 1; j < n; ++j) acc -= Rational(m(ii, j)) * x[j];
      x[ii] = acc / Rational(m(ii, ii));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (boost::multiprecision::denominator(x[v]) != 1)
        throw MultiplicityError(MultiplicityError::Kind::NonIntegral,
                                "multiplicity of branch " + std::to_string(b + 1) + " at '" + g.vertices()[v].id +
                                    "' is not an integer (" + x[v].str() + ")");
      const Integer value = boost::multiprecision::numerator(x[v]);
      if (value <= 0)
        throw MultiplicityError(MultiplicityError::Kind::NonPositive,
                                "multiplicity of branch " + std::to_string(b + 1) + " at '" + g.vertices()[v].id +
                                    "' is not positive (" + value.str() + ")");
      table.per_branch[static_cast<std::size_t>(b)][v] = to_int64(value);
      table.total[v] += table.per_branch[static_cast<std::size_t>(b)][v];
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// shape

std::vector<std::size_t> branching_vertices(const PlumbingGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= 3) out.push_back(v);
  return out;
}

bool is_quasihomogeneous_shape(const PlumbingGraph& g) { return branching_vertices(g).size() <= 1; }

std::int64_t first_betti(const PlumbingGraph& g) {
  return static_cast<std::int64_t>(g.edge_count()) - static_cast<std::int64_t>(g.vertex_count()) + 1;
}

// ---------------------------------------------------------------------------
// ordered graph

std::optional<std::size_t> OrderedGraph::extra_index(std::size_t edge) const { return extra_index_[edge]; }

std::optional<std::size_t> OrderedGraph::arrow_rank(std::size_t base_arrow) const { return arrow_rank_[base_arrow]; }

std::vector<std::size_t> OrderedGraph::arrows_at(std::size_t pos) const {
  std::vector<std::size_t> out;
  for (auto h : arrows_)
    if (position_[base_.arrows()[h].vertex] == pos) out.push_back(h);
  return out;
}

std::pair<std::size_t, std::size_t> OrderedGraph::oriented(std::size_t edge) const {
  const auto& e = base_.edges()[edge];
  std::size_t pa = position_[e.a], pb = position_[e.b];
  return pa < pb ? std::pair{pa, pb} : std::pair{pb, pa};
}

OrderedGraph choose_tree_and_orders(const PlumbingGraph& g, std::optional<std::string> root) {
  require_valid(g);
  const std::size_t n = g.vertex_count();
  std::size_t root_index = 0;
  if (root) {
    auto found = g.find(*root);
    if (!found) throw std::invalid_argument("unknown root vertex '" + *root + "'");
    root_index = *found;
  } else {
    root_index = g.sorted_vertex_indices().front();
  }

  OrderedGraph og(g);
  og.in_tree_.assign(g.edge_count(), false);
  og.position_.assign(n, n);

  // incident edges per vertex in insertion order
  std::vector<std::vector<std::size_t>> adjacent(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    adjacent[g.edges()[e].a].push_back(e);
    adjacent[g.edges()[e].b].push_back(e);
  }

  std::deque<std::size_t> queue{root_index};
  og.position_[root_index] = 0;
  og.order_.push_back(root_index);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (auto e : adjacent[u]) {
      const auto& edge = g.edges()[e];
      const std::size_t w = edge.a == u ? edge.b : edge.a;
      if (og.position_[w] != n) continue;
      og.position_[w] = og.order_.size();
      og.order_.push_back(w);
      og.in_tree_[e] = true;
      queue.push_back(w);
    }
  }

  // rank of each edge inside its E_{v,w}: tree edge first, then insertion order
  std::vector<std::size_t> rank_in_pair(g.edge_count(), 0);
  {
    std::vector<std::size_t> by_pair(g.edge_count());
    std::iota(by_pair.begin(), by_pair.end(), 0);
    auto key = [&](std::size_t e) {
      auto [lo, hi] = og.oriented(e);
      return std::tuple{lo, hi, og.in_tree_[e] ? 0 : 1, e};
    };
    std::sort(by_pair.begin(), by_pair.end(), [&](auto x, auto y) { return key(x) < key(y); });
    for (std::size_t i = 0; i < by_pair.size(); ++i) {
      const bool same_pair = i > 0 && og.oriented(by_pair[i]) == og.oriented(by_pair[i - 1]);
      rank_in_pair[by_pair[i]] = same_pair ? rank_in_pair[by_pair[i - 1]] + 1 : 0;
    }
    og.extra_index_.assign(g.edge_count(), std::nullopt);
    for (auto e : by_pair)
      if (!og.in_tree_[e]) {
        og.extra_index_[e] = og.extra_edges_.size();
        og.extra_edges_.push_back(e);
      }
  }

  og.incident_.assign(n, {});
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [lo, hi] = og.oriented(e);
    og.incident_[lo].push_back({e, hi});
    og.incident_[hi].push_back({e, lo});
  }
  for (auto& list : og.incident_)
    std::sort(list.begin(), list.end(), [&](const auto& x, const auto& y) {
      return std::pair{x.neighbor, rank_in_pair[x.edge]} < std::pair{y.neighbor, rank_in_pair[y.edge]};
    });

  og.arrows_.resize(g.arrow_count());
  std::iota(og.arrows_.begin(), og.arrows_.end(), 0);
  std::stable_sort(og.arrows_.begin(), og.arrows_.end(), [&](auto x, auto y) {
    return og.position_[g.arrows()[x].vertex] < og.position_[g.arrows()[y].vertex];
  });
  og.arrow_rank_.assign(g.arrow_count(), std::nullopt);
  for (std::size_t i = 0; i < og.arrows_.size(); ++i) og.arrow_rank_[og.arrows_[i]] = i;
  return og;
}

}  // namespace plumbing
