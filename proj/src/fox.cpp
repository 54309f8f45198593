#include "plumbing/fox.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace plumbing {

Complex ipow(Complex z, std::int64_t k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  Complex out = 1;
  while (k > 0) {
    if (k & 1) out *= z;
    z *= z;
    k >>= 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GroupAlgebraElement

GroupAlgebraElement GroupAlgebraElement::constant(AbelianPtr ab, const Integer& c) {
  GroupAlgebraElement out(ab);
  out.add_term(Monomial(ab->coordinate_count(), 0), c);
  return out;
}

GroupAlgebraElement GroupAlgebraElement::from_exponents(AbelianPtr ab, const std::vector<std::int64_t>& x,
                                                        const Integer& c) {
  GroupAlgebraElement out(ab);
  out.add_term(ab->reduce(x), c);
  return out;
}

GroupAlgebraElement GroupAlgebraElement::generator(AbelianPtr ab, std::size_t gen, std::int64_t power) {
  std::vector<std::int64_t> x(ab->generator_count(), 0);
  x.at(gen) = power;
  return from_exponents(std::move(ab), x);
}

void GroupAlgebraElement::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  if (!ab_) ab_ = o.ab_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
  GroupAlgebraElement out = *this;
  out += o;
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-() const {
  GroupAlgebraElement out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const { return *this + (-o); }

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  const AbelianPtr& ab = ab_ ? ab_ : o.ab_;
  GroupAlgebraElement out(ab);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m(m1.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
      out.add_term(ab->reduce_in_place(std::move(m)), c1 * c2);
    }
  return out;
}

Integer GroupAlgebraElement::augmentation() const {
  Integer s = 0;
  for (const auto& [m, c] : terms_) s += c;
  return s;
}

Complex GroupAlgebraElement::evaluate(const std::vector<Complex>& z) const {
  Complex sum = 0;
  for (const auto& [m, c] : terms_) {
    Complex v = c.convert_to<double>();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) v *= ipow(z[i], m[i]);
    sum += v;
  }
  return sum;
}

std::vector<std::string> coordinate_names(const AbelianizedGroup& ab) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ab.torsion().size(); ++i) out.push_back("w" + std::to_string(i + 1));
  for (std::size_t i = 0; i < ab.rank(); ++i) out.push_back("z" + std::to_string(i + 1));
  return out;
}

std::string GroupAlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  const auto names = ab_ ? coordinate_names(*ab_) : std::vector<std::string>{};
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer a = abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (any) mono << '*';
      any = true;
      mono << "t(" << (i < names.size() ? names[i] : "c" + std::to_string(i + 1)) << ')';
      if (m[i] != 1) mono << '^' << m[i];
    }
    if (!any)
      out << a;
    else if (a == 1)
      out << mono.str();
    else
      out << a << '*' << mono.str();
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// characters on coordinates

std::vector<Complex> coordinate_values(const AbelianizedGroup& ab, const std::vector<Complex>& xi, double tol) {
  if (xi.size() != ab.generator_count()) throw std::invalid_argument("character has wrong number of generator values");
  for (const auto& v : xi)
    if (v == Complex(0, 0)) throw std::invalid_argument("character value must be nonzero");
  const auto& snf = ab.smith();
  const IntMatrix& qinv = ab.basis_inverse();
  const std::size_t m = ab.generator_count();

  auto y_value = [&](std::size_t col, double& weight) {
    Complex z = 1;
    weight = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto e = to_int64(qinv(col, j));
      if (e == 0) continue;
      z *= ipow(xi[j], e);
      weight += std::abs(static_cast<double>(e)) * (1.0 + std::abs(std::log(std::abs(xi[j]))));
    }
    return z;
  };

  std::vector<Complex> torsion_vals, free_vals;
  for (std::size_t c = 0; c < m; ++c) {
    double weight = 0;
    const Complex z = y_value(c, weight);
    if (c < snf.rank) {
      const auto d = to_int64(snf.D(c, c));
      const Complex zd = ipow(z, d);
      if (std::abs(zd - 1.0) > tol * (1.0 + static_cast<double>(d) * weight))
        throw std::invalid_argument("character does not satisfy the abelianized relations");
      if (d >= 2) {
        const double turns = std::arg(z) / (2 * std::numbers::pi);
        const auto k = mod64(static_cast<std::int64_t>(std::llround(turns * static_cast<double>(d))), d);
        torsion_vals.push_back(k == 0 ? Complex(1, 0) : std::polar(1.0, 2 * std::numbers::pi * double(k) / double(d)));
      }
    } else {
      free_vals.push_back(z);
    }
  }
  torsion_vals.insert(torsion_vals.end(), free_vals.begin(), free_vals.end());
  return torsion_vals;
}

// ---------------------------------------------------------------------------
// Fox calculus

GroupAlgebraElement fox_derivative(const Word& w, std::size_t gen, const AbelianPtr& ab) {
  if (gen >= ab->generator_count()) throw std::invalid_argument("fox_derivative: unknown generator");
  GroupAlgebraElement out(ab);
  std::vector<std::int64_t> prefix(ab->generator_count(), 0);
  for (const auto& l : w.letters()) {
    if (l.gen >= prefix.size()) throw std::invalid_argument("fox_derivative: word uses an unknown generator");
    if (l.gen == gen) {
      if (l.exp > 0) {
        for (std::int64_t i = 0; i < l.exp; ++i) {
          std::vector<std::int64_t> x = prefix;
          x[gen] += i;
          out.add_term(ab->reduce(x), 1);
        }
      } else {
        for (std::int64_t i = 1; i <= -l.exp; ++i) {
          std::vector<std::int64_t> x = prefix;
          x[gen] -= i;
          out.add_term(ab->reduce(x), -1);
        }
      }
    }
    prefix[l.gen] += l.exp;
  }
  return out;
}

FoxMatrix fox_matrix_generic(const Presentation& p, AbelianPtr ab) {
  FoxMatrix F;
  F.ab = ab;
  F.rows = p.relators.size();
  F.cols = p.generators.size();
  F.entries.assign(F.rows * F.cols, GroupAlgebraElement(ab));
  for (const auto& r : p.relators) F.row_tags.push_back(r.kind);
  for (const auto& g : p.generators) F.col_tags.push_back(g.kind);
  for (std::size_t i = 0; i < F.rows; ++i)
    for (std::size_t j = 0; j < F.cols; ++j) F(i, j) = fox_derivative(p.relators[i].word, j, ab);
  return F;
}

FoxMatrix fox_matrix_generic(const Presentation& p) {
  return fox_matrix_generic(p, std::make_shared<const AbelianizedGroup>(p));
}

FoxMatrix fox_matrix_blocks(const OrderedGraph& og, AbelianPtr ab) {
  const auto& g = og.base();
  const std::size_t n = og.size();
  const std::size_t r = og.arrows().size();
  const std::size_t extra = og.extra_edges().size();

  // column layout mirrors presentation(og)
  std::vector<std::size_t> genus_start(n);
  std::size_t genus_total = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    genus_start[pos] = n + r + extra + 2 * genus_total;
    genus_total += static_cast<std::size_t>(g.vertices()[og.vertex(pos)].genus);
  }
  const std::size_t m = n + r + extra + 2 * genus_total;
  if (ab->generator_count() != m) throw std::invalid_argument("fox_matrix_blocks: abelianization does not match graph");
  std::vector<std::size_t> arrow_col(g.arrow_count());
  for (std::size_t k = 0; k < r; ++k) arrow_col[og.arrows()[k]] = n + k;
  auto edge_col = [&](std::size_t k) { return n + r + k; };

  FoxMatrix F;
  F.ab = ab;
  F.rows = n + r + extra + 2 * genus_total;
  F.cols = m;
  F.entries.assign(F.rows * F.cols, GroupAlgebraElement(ab));

  auto t = [&](std::size_t col, std::int64_t k = 1) { return GroupAlgebraElement::generator(ab, col, k); };
  const GroupAlgebraElement one = GroupAlgebraElement::constant(ab, 1);

  // t_ebar for an edge seen from `from` towards `to`
  auto t_ebar = [&](std::size_t edge, std::size_t from, std::size_t to) {
    auto k = og.extra_index(edge);
    if (!k) return one;
    return t(edge_col(*k), from < to ? 1 : -1);
  };

  // R1 rows
  for (std::size_t v = 0; v < n; ++v) {
    GroupAlgebraElement prefix = one;  // T_{v,e} running product
    for (const auto& inc : og.incident(v)) {
      const auto w = inc.neighbor;
      F(v, w) += prefix * t_ebar(inc.edge, v, w);
      if (auto k = og.extra_index(inc.edge)) {
        if (v < w)
          F(v, edge_col(*k)) += prefix * (one - t(w));
        else
          F(v, edge_col(*k)) += prefix * (t(w) - one) * t(edge_col(*k), -1);
      }
      prefix = prefix * t(w);
    }
    // prefix is now T_v
    for (auto h : og.arrows_at(v)) {
      F(v, arrow_col[h]) += prefix;
      prefix = prefix * t(arrow_col[h]);
    }
    // (1 - t_v^{-eps}) / (t_v - 1) as a finite geometric sum
    const std::int64_t eps = g.vertices()[og.vertex(v)].euler;
    GroupAlgebraElement diag(ab);
    if (eps < 0)
      for (std::int64_t i = 0; i < -eps; ++i) diag = diag - t(v, i);
    else
      for (std::int64_t i = 1; i <= eps; ++i) diag = diag + t(v, -i);
    F(v, v) += diag;
    const auto genus = static_cast<std::size_t>(g.vertices()[og.vertex(v)].genus);
    for (std::size_t j = 0; j < genus; ++j) {
      const std::size_t a = genus_start[v] + 2 * j;
      F(v, a) = t(a + 1) - one;
      F(v, a + 1) = one - t(a);
    }
  }

  // R2 rows: [gamma_v, gamma_h]
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t row = n + k;
    const auto v = og.position(g.arrows()[og.arrows()[k]].vertex);
    F(row, v) = one - t(n + k);
    F(row, n + k) = t(v) - one;
  }

  // R3 rows: [gamma_lo, gamma_e gamma_hi gamma_e^-1]
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t row = n + r + k;
    const auto [lo, hi] = og.oriented(og.extra_edges()[k]);
    F(row, lo) = one - t(hi);
    F(row, hi) = t(edge_col(k)) * (t(lo) - one);
    F(row, edge_col(k)) = (t(lo) - one) * (one - t(hi));
  }

  // R4 rows: [gamma_v, alpha_j], [gamma_v, beta_j]
  std::size_t row = n + r + extra;
  for (std::size_t v = 0; v < n; ++v) {
    const auto genus = static_cast<std::size_t>(g.vertices()[og.vertex(v)].genus);
    for (std::size_t j = 0; j < genus; ++j) {
      const std::size_t a = genus_start[v] + 2 * j;
      F(row, v) = one - t(a);
      F(row, a) = t(v) - one;
      ++row;
      F(row, v) = one - t(a + 1);
      F(row, a + 1) = t(v) - one;
      ++row;
    }
  }

  for (std::size_t i = 0; i < F.rows; ++i)
    F.row_tags.push_back(i < n ? RelatorKind::R1 : i < n + r ? RelatorKind::R2 : i < n + r + extra ? RelatorKind::R3 : RelatorKind::R4);
  for (std::size_t j = 0; j < F.cols; ++j)
    F.col_tags.push_back(j < n           ? GeneratorKind::Vertex
                         : j < n + r     ? GeneratorKind::Arrow
                         : j < n + r + extra ? GeneratorKind::ExtraEdge
                         : ((j - n - r - extra) % 2 == 0 ? GeneratorKind::GenusAlpha : GeneratorKind::GenusBeta));

  const std::size_t r1 = n, r2 = n + r, r3 = n + r + extra, r4 = F.rows;
  const std::size_t c1 = n, c2 = n + r, c3 = n + r + extra, c4 = m;
  F.blocks = {{"A", 0, r1, 0, c1},      {"B", 0, r1, c1, c2},      {"C", 0, r1, c2, c3},
              {"A_g", 0, r1, c3, c4},   {"B~", r1, r2, 0, c1},     {"H", r1, r2, c1, c2},
              {"C~", r2, r3, 0, c1},    {"E", r2, r3, c2, c3},     {"A~_g", r3, r4, 0, c1},
              {"G", r3, r4, c3, c4}};
  return F;
}

Eigen::MatrixXcd evaluate(const FoxMatrix& F, const std::vector<Complex>& generator_values, double tol) {
  const auto z = coordinate_values(*F.ab, generator_values, tol);
  Eigen::MatrixXcd M(F.rows, F.cols);
  for (std::size_t i = 0; i < F.rows; ++i)
    for (std::size_t j = 0; j < F.cols; ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = F(i, j).evaluate(z);
  return M;
}

std::string format_fox(const FoxMatrix& F, const Presentation& p) {
  std::ostringstream out;
  out << "# fox matrix " << F.rows << " x " << F.cols << '\n';
  auto dump = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        if (F(i, j).is_zero()) continue;
        out << '[' << i + 1 << ',' << (j < p.generators.size() ? p.generators[j].name : std::to_string(j + 1))
            << "] " << F(i, j).to_string() << '\n';
      }
  };
  if (F.blocks.empty()) {
    dump(0, F.rows, 0, F.cols);
  } else {
    for (const auto& b : F.blocks) {
      if (b.row_begin == b.row_end || b.col_begin == b.col_end) continue;
      out << "## block " << b.name << " rows " << b.row_begin + 1 << '-' << b.row_end << " cols " << b.col_begin + 1
          << '-' << b.col_end << '\n';
      dump(b.row_begin, b.row_end, b.col_begin, b.col_end);
    }
  }
  return out.str();
}

}  // namespace plumbing
