#include "plumbing/cover.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plumbing {

std::int64_t component_genus(std::int64_t N, const std::vector<std::int64_t>& a) {
  if (N < 1) throw std::invalid_argument("cover degree must be positive");
  std::int64_t chi = N * (2 - static_cast<std::int64_t>(a.size()));
  for (auto x : a) {
    if (x < 0 || x >= N) throw std::invalid_argument("monodromy out of range");
    chi += gcd64(N, x);
  }
  if ((2 - chi) % 2 != 0 || chi > 2) throw std::invalid_argument("invalid monodromy data: no integral genus");
  return (2 - chi) / 2;
}

std::int64_t edge_preimage_count(std::int64_t n, std::int64_t m_v, std::int64_t m_w) {
  if (n < 1 || m_v < 1 || m_w < 1) throw std::invalid_argument("edge_preimage_count needs positive arguments");
  return gcd64(gcd64(n, m_v), m_w);
}

CoverVertexData cover_vertex_data(const PlumbingGraph& g, const MultiplicityTable& mt, std::int64_t n, std::size_t v) {
  CoverVertexData d;
  d.base = v;
  d.n_v = gcd64(n, mt.total[v]);
  for (const auto& e : g.edges()) {
    if (e.a == v) d.residues.push_back(mod64(mt.total[e.b], d.n_v));
    if (e.b == v) d.residues.push_back(mod64(mt.total[e.a], d.n_v));
  }
  for (std::size_t h = 0; h < g.arrows_at(v).size(); ++h) d.residues.push_back(mod64(1, d.n_v));
  d.components = d.n_v;
  for (auto r : d.residues) d.components = gcd64(d.components, r);
  d.degree = d.n_v / d.components;
  for (auto r : d.residues) d.monodromy.push_back(mod64(r / d.components, d.degree));
  d.genus = component_genus(d.degree, d.monodromy);
  return d;
}

std::int64_t CoverGraph::b1() const {
  return static_cast<std::int64_t>(edges.size()) - static_cast<std::int64_t>(vertices.size()) +
         static_cast<std::int64_t>(connected_components);
}

std::vector<std::int64_t> CoverGraph::genus_vector() const {
  std::vector<std::int64_t> out;
  for (const auto& v : vertices) out.push_back(v.genus);
  return out;
}

GraphShape CoverGraph::shape() const { return {genus_vector(), b1(), arrows.size()}; }

CoverGraph cyclic_cover(const PlumbingGraph& g, const MultiplicityTable& mt, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("cover degree must be at least 2");
  if (mt.total.size() != g.vertex_count()) throw std::invalid_argument("multiplicity table does not match graph");
  CoverGraph c;
  c.n = n;
  std::vector<std::size_t> first(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    c.data.push_back(cover_vertex_data(g, mt, n, v));
    first[v] = c.vertices.size();
    for (std::int64_t j = 0; j < c.data[v].components; ++j) c.vertices.push_back({v, j, c.data[v].genus});
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges()[e];
    const auto count = edge_preimage_count(n, mt.total[a], mt.total[b]);
    for (std::int64_t j = 0; j < count; ++j)
      c.edges.push_back({first[a] + static_cast<std::size_t>(j % c.data[a].components),
                         first[b] + static_cast<std::size_t>(j % c.data[b].components), e});
  }
  for (const auto& h : g.arrows()) c.arrows.push_back({first[h.vertex], h.branch});

  // union-find for the component count
  std::vector<std::size_t> parent(c.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  c.connected_components = c.vertices.size();
  for (const auto& e : c.edges) {
    const auto ra = root(e.a), rb = root(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      --c.connected_components;
    }
  }
  return c;
}

std::string emit_cover_graph(const CoverGraph& c, const PlumbingGraph& base) {
  std::ostringstream out;
  out << "# " << c.n << "-fold cyclic cover, shape only: Euler numbers are placeholders (0)\n";
  if (!c.connected()) out << "# warning: cover is disconnected (" << c.connected_components << " components)\n";
  auto name = [&](std::size_t v) {
    return base.vertices()[c.vertices[v].base].id + "_" + std::to_string(c.vertices[v].component);
  };
  for (std::size_t v = 0; v < c.vertices.size(); ++v) out << "V " << name(v) << " 0 " << c.vertices[v].genus << '\n';
  for (const auto& e : c.edges) out << "E " << name(e.a) << ' ' << name(e.b) << '\n';
  for (const auto& h : c.arrows) out << "A " << name(h.vertex) << ' ' << h.branch << '\n';
  return out.str();
}

}  // namespace plumbing
