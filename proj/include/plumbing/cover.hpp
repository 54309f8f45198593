#pragma once

#include "plumbing/charvar.hpp"
#include "plumbing/graph.hpp"

#include <string>
#include <vector>

namespace plumbing {

/// Genus of a connected N-fold cyclic cover of the sphere with local
/// monodromies a_i at k points: 2 - 2g = N(2 - k) + sum gcd(N, a_i).
/// Throws std::invalid_argument if that gives no valid genus.
std::int64_t component_genus(std::int64_t N, const std::vector<std::int64_t>& a);

/// gcd(n, m_v, m_w): number of cover edges above one base edge.
std::int64_t edge_preimage_count(std::int64_t n, std::int64_t m_v, std::int64_t m_w);

struct CoverVertexData {
  std::size_t base = 0;
  std::int64_t n_v = 1;                    // gcd(n, m_v)
  std::vector<std::int64_t> residues;      // per neighbour (edge order), then 1 per arrow
  std::int64_t components = 1;             // c_v
  std::int64_t degree = 1;                 // N = n_v / c_v
  std::vector<std::int64_t> monodromy;     // a_i = (r_i / c_v) mod N
  std::int64_t genus = 0;
};

/// Shape of the n-fold cyclic cover branched along the link: genus per
/// vertex, edges and arrows, no Euler numbers.
struct CoverGraph {
  struct Vertex {
    std::size_t base;
    std::int64_t component;
    std::int64_t genus;
  };
  struct Edge {
    std::size_t a, b;
    std::size_t base_edge;
  };
  struct Arrow {
    std::size_t vertex;
    int branch;
  };

  std::int64_t n = 1;
  std::vector<CoverVertexData> data;  // per base vertex
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Arrow> arrows;
  std::size_t connected_components = 0;

  bool connected() const { return connected_components == 1; }
  std::int64_t b1() const;
  std::vector<std::int64_t> genus_vector() const;
  GraphShape shape() const;
};

CoverVertexData cover_vertex_data(const PlumbingGraph& g, const MultiplicityTable& mt, std::int64_t n, std::size_t v);

/// The j-th cover edge over {v, w} joins component j mod c_v to j mod c_w;
/// every arrow lifts to one arrow on component 0.
CoverGraph cyclic_cover(const PlumbingGraph& g, const MultiplicityTable& mt, std::int64_t n);

/// Graph-file text for the cover, Euler numbers written as 0.
std::string emit_cover_graph(const CoverGraph& c, const PlumbingGraph& base);

}  // namespace plumbing
