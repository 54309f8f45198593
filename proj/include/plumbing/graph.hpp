#pragma once

#include "plumbing/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace plumbing {

/// Orders identifiers with embedded digit runs compared numerically, so
/// "v2" < "v10". Falls back to plain comparison on ties.
bool natural_less(const std::string& a, const std::string& b);

struct Vertex {
  std::string id;
  std::int64_t euler = 0;
  std::int64_t genus = 0;
};

/// Undirected edge between two vertex indices. Multi-edges are separate entries.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Arrowhead attached to a vertex, labelled with the branch it belongs to (1-based).
struct Arrow {
  std::size_t vertex = 0;
  int branch = 1;
};

/// Weighted plumbing graph: vertices carry an Euler number and a genus,
/// edges form a multiset, arrows mark link components.
///
/// Vertices, edges and arrows keep their insertion order; that order is
/// what the tree/order conventions fall back on.
class PlumbingGraph {
public:
  std::size_t add_vertex(std::string id, std::int64_t euler, std::int64_t genus = 0);
  std::size_t add_edge(std::size_t a, std::size_t b);
  std::size_t add_edge(const std::string& a, const std::string& b);
  std::size_t add_arrow(std::size_t vertex, int branch);
  std::size_t add_arrow(const std::string& vertex, int branch);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  /// Largest branch label in use (0 for a closed graph).
  int branch_count() const;
  std::int64_t total_genus() const;

  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;

  /// Degree counting edges and arrows (the valence rho(v)).
  std::size_t degree(std::size_t v) const;
  std::vector<std::size_t> arrows_at(std::size_t v) const;

  bool is_connected() const;
  bool is_tree() const;

  /// Vertex indices sorted by natural id order.
  std::vector<std::size_t> sorted_vertex_indices() const;

private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Diagnostic {
  enum class Kind { NoVertices, Disconnected, LoopEdge, NegativeGenus, BadBranchLabel, MissingBranchLabel };
  Kind kind;
  std::string message;
};

/// Lists every violated structural invariant; empty means the graph is valid.
std::vector<Diagnostic> validate(const PlumbingGraph& g);
void require_valid(const PlumbingGraph& g);

struct IncidencePair {
  IntMatrix A;  // n x n, Euler numbers on the diagonal, edge counts off it
  IntMatrix B;  // n x |arrows|, b(v,h) = 1 iff h sits on v
};

/// Incidence matrices in the graph's vertex/arrow insertion order.
IncidencePair incidence(const PlumbingGraph& g);

/// Sylvester test with fraction-free elimination. Throws on a non-symmetric matrix.
bool is_negative_definite(const IntMatrix& A);

/// Leading principal minors D_1..D_n, computed exactly.
std::vector<Integer> leading_principal_minors(const IntMatrix& A);

class MultiplicityError : public std::runtime_error {
public:
  enum class Kind { NotNegativeDefinite, NoBranches, NonIntegral, NonPositive };
  MultiplicityError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// Multiplicities m_{v,f_i} for each branch, indexed [branch][vertex].
struct MultiplicityTable {
  std::vector<std::vector<std::int64_t>> per_branch;
  std::vector<std::int64_t> total;

  std::size_t branch_count() const { return per_branch.size(); }
  /// Per-branch tuple at vertex v.
  std::vector<std::int64_t> tuple(std::size_t v) const;
  std::int64_t lcm_of_totals() const;
};

/// Solves A m_i = -b_i for every branch in exact rational arithmetic and
/// checks the result is a positive integer vector.
MultiplicityTable solve_multiplicities(const PlumbingGraph& g);

std::vector<std::size_t> branching_vertices(const PlumbingGraph& g);
bool is_quasihomogeneous_shape(const PlumbingGraph& g);

/// |E| - |V| + 1 for a connected graph.
std::int64_t first_betti(const PlumbingGraph& g);

/// A rooted spanning tree plus the vertex, edge and arrowhead orders the
/// presentation is built from. Vertices are addressed by their position in
/// the order (0 = root); `vertex(p)` maps back to the base graph index.
class OrderedGraph {
public:
  struct Incident {
    std::size_t edge;      // base edge index
    std::size_t neighbor;  // position of the other endpoint
  };

  const PlumbingGraph& base() const { return base_; }
  std::size_t size() const { return order_.size(); }
  std::size_t root() const { return order_.front(); }

  std::size_t vertex(std::size_t pos) const { return order_[pos]; }
  std::size_t position(std::size_t base_vertex) const { return position_[base_vertex]; }
  const std::vector<std::size_t>& order() const { return order_; }

  bool in_tree(std::size_t edge) const { return in_tree_[edge]; }
  /// Edges outside the tree, sorted by (lower endpoint, upper endpoint, rank in E_{v,w}).
  const std::vector<std::size_t>& extra_edges() const { return extra_edges_; }
  /// Index of an extra edge inside extra_edges(), or nullopt for tree edges.
  std::optional<std::size_t> extra_index(std::size_t edge) const;

  /// E_v in order: by neighbour position, then by rank within E_{v,w}.
  const std::vector<Incident>& incident(std::size_t pos) const { return incident_[pos]; }
  /// Arrowheads (base arrow indices) in global order.
  const std::vector<std::size_t>& arrows() const { return arrows_; }
  std::optional<std::size_t> arrow_rank(std::size_t base_arrow) const;
  /// Arrowheads at a vertex position, in order.
  std::vector<std::size_t> arrows_at(std::size_t pos) const;

  /// Endpoints of an edge as (lower, upper) positions.
  std::pair<std::size_t, std::size_t> oriented(std::size_t edge) const;

  friend OrderedGraph choose_tree_and_orders(const PlumbingGraph& g, std::optional<std::string> root);

private:
  explicit OrderedGraph(PlumbingGraph g) : base_(std::move(g)) {}

  PlumbingGraph base_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;
  std::vector<bool> in_tree_;
  std::vector<std::size_t> extra_edges_;
  std::vector<std::optional<std::size_t>> extra_index_;
  std::vector<std::vector<Incident>> incident_;
  std::vector<std::size_t> arrows_;
  std::vector<std::optional<std::size_t>> arrow_rank_;
};

/// BFS spanning tree from `root` (default: lowest id). Neighbours are
/// discovered in edge insertion order; the vertex order is the discovery order.
OrderedGraph choose_tree_and_orders(const PlumbingGraph& g, std::optional<std::string> root = std::nullopt);

}  // namespace plumbing
