#include "plumbing/alexander.hpp"

#include "plumbing/smith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace plumbing {

namespace {

void require_tree_link(const PlumbingGraph& g, const MultiplicityTable& mt) {
  if (!g.is_tree()) throw std::invalid_argument("Alexander product formula needs a tree");
  if (mt.branch_count() == 0) throw std::invalid_argument("Alexander product formula needs at least one branch");
  // A m_i + b_i = 0 is re-checked row by row before the table is trusted
  const auto inc = incidence(g);
  for (std::size_t i = 0; i < mt.branch_count(); ++i)
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Integer s = 0;
      for (std::size_t w = 0; w < g.vertex_count(); ++w) s += inc.A(v, w) * mt.per_branch[i][w];
      for (auto h : g.arrows_at(v))
        if (g.arrows()[h].branch == static_cast<int>(i + 1)) s += 1;
      if (s != 0) throw std::invalid_argument("multiplicity table does not solve the incidence equations");
    }
}

}  // namespace

FormalProduct en_multivariable(const PlumbingGraph& g, const MultiplicityTable& mt) {
  require_tree_link(g, mt);
  FormalProduct fp;
  fp.variables = mt.branch_count();
  fp.t_minus_one = fp.variables == 1;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto k = static_cast<std::int64_t>(g.degree(v)) - 2;
    if (k != 0) fp.factors.push_back({mt.tuple(v), k, v});
  }
  return fp;
}

FormalProduct acampo_single(const PlumbingGraph& g, const MultiplicityTable& mt) {
  require_tree_link(g, mt);
  FormalProduct fp;
  fp.variables = 1;
  fp.t_minus_one = true;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto k = static_cast<std::int64_t>(g.degree(v)) - 2;
    if (k != 0) fp.factors.push_back({{mt.total[v]}, k, v});
  }
  return fp;
}

std::string FormalProduct::to_string() const {
  std::ostringstream out;
  if (t_minus_one) out << "(t-1)";
  for (const auto& f : factors) {
    out << "(";
    bool any = false;
    for (std::size_t i = 0; i < f.exponent.size(); ++i) {
      if (f.exponent[i] == 0) continue;
      if (any) out << '*';
      any = true;
      out << 't';
      if (variables > 1) out << i + 1;
      if (f.exponent[i] != 1) out << '^' << f.exponent[i];
    }
    if (!any) out << '1';
    out << "-1)";
    if (f.multiplicity != 1) out << '^' << f.multiplicity;
  }
  if (!t_minus_one && factors.empty()) out << '1';
  return out.str();
}

LaurentPoly expand(const FormalProduct& fp) {
  LaurentPoly num = LaurentPoly::constant(fp.variables, 1);
  if (fp.t_minus_one) {
    if (fp.variables != 1) throw std::invalid_argument("(t-1) prefactor only applies to one variable");
    num = num * LaurentPoly::binomial({1});
  }
  std::vector<const FormalProduct::Factor*> denominators;
  for (const auto& f : fp.factors) {
    if (std::all_of(f.exponent.begin(), f.exponent.end(), [](std::int64_t e) { return e == 0; }))
      throw std::invalid_argument("factor with zero exponent vanishes identically");
    if (f.multiplicity > 0)
      num = num * LaurentPoly::binomial(f.exponent).pow(static_cast<unsigned>(f.multiplicity));
    else
      denominators.push_back(&f);
  }
  auto degree = [](const FormalProduct::Factor* f) {
    return std::accumulate(f->exponent.begin(), f->exponent.end(), std::int64_t{0});
  };
  std::stable_sort(denominators.begin(), denominators.end(),
                   [&](auto* a, auto* b) { return degree(a) < degree(b); });
  for (const auto* f : denominators)
    for (std::int64_t k = 0; k < -f->multiplicity; ++k) num = num.divide_exact(LaurentPoly::binomial(f->exponent));
  return num.normalized();
}

EssentialVariableReport essential_variable_report(const LaurentPoly& p) {
  EssentialVariableReport out;
  if (p.terms().size() <= 1) {
    out.single_essential = true;
    return out;
  }
  const auto& base = p.terms().begin()->first;
  const std::size_t r = p.variables();
  IntMatrix D(p.terms().size() - 1, r);
  std::size_t row = 0;
  for (auto it = std::next(p.terms().begin()); it != p.terms().end(); ++it, ++row)
    for (std::size_t i = 0; i < r; ++i) D(row, i) = it->first[i] - base[i];
  const auto snf = smith_normal_form(D);
  out.lattice_rank = snf.rank;
  out.single_essential = snf.rank <= 1;
  if (snf.rank == 1) {
    // any nonzero difference is a multiple of the primitive direction
    for (std::size_t k = 0; k < D.rows() && out.direction.empty(); ++k) {
      std::int64_t g = 0;
      for (std::size_t i = 0; i < r; ++i) g = gcd64(g, to_int64(D(k, i)));
      if (g == 0) continue;
      for (std::size_t i = 0; i < r; ++i) out.direction.push_back(to_int64(D(k, i)) / g);
    }
    const auto nz = std::find_if(out.direction.begin(), out.direction.end(), [](std::int64_t x) { return x != 0; });
    if (nz != out.direction.end() && *nz < 0)
      for (auto& x : out.direction) x = -x;
  }
  return out;
}

}  // namespace plumbing
