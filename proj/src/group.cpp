#include "plumbing/group.hpp"

#include <algorithm>
#include <sstream>

namespace plumbing {

// ---------------------------------------------------------------------------
// Word

void Word::reduce() {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (const auto& l : letters_) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  letters_ = std::move(out);
}

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::size_t>(l.exp < 0 ? -l.exp : l.exp);
  return n;
}

Word Word::commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

Word Word::operator*(const Word& o) const {
  Word w = *this;
  w *= o;
  return w;
}

Word& Word::operator*=(const Word& o) {
  letters_.insert(letters_.end(), o.letters_.begin(), o.letters_.end());
  reduce();
  return *this;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exp = -l.exp;
  return Word(std::move(out));
}

Word Word::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Word out;
  for (std::int64_t i = 0; i < k; ++i) out *= *this;
  return out;
}

std::size_t Word::occurrences(std::size_t gen) const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [gen](const Letter& l) { return l.gen == gen; }));
}

Word Word::cyclically_reduced() const {
  std::vector<Letter> l = letters_;
  while (l.size() >= 2 && l.front().gen == l.back().gen) {
    const std::int64_t merged = l.front().exp + l.back().exp;
    l.pop_back();
    if (merged == 0)
      l.erase(l.begin());
    else
      l.front().exp = merged;
  }
  return Word(std::move(l));
}

Word Word::substitute(std::size_t gen, const Word& replacement) const {
  Word out;
  for (const auto& l : letters_) {
    if (l.gen == gen)
      out *= replacement.pow(l.exp);
    else
      out *= Word::letter(l.gen, l.exp);
  }
  return out;
}

Word Word::renumbered(const std::vector<std::size_t>& map) const {
  std::vector<Letter> out = letters_;
  for (auto& l : out) l.gen = map[l.gen];
  return Word(std::move(out));
}

std::vector<std::int64_t> Word::exponent_sums(std::size_t generator_count) const {
  std::vector<std::int64_t> s(generator_count, 0);
  for (const auto& l : letters_) s.at(l.gen) += l.exp;
  return s;
}

bool cyclically_equal(const Word& a, const Word& b) {
  const auto ra = a.cyclically_reduced().letters();
  const auto rb = b.cyclically_reduced().letters();
  if (ra.size() != rb.size()) return false;
  if (ra.empty()) return true;
  // Compare letter-by-letter on the expanded sequences so a split syllable
  // (x^2 ... x) still matches its rotation.
  std::vector<std::pair<std::size_t, int>> ea, eb;
  for (const auto& l : ra)
    for (std::int64_t i = 0; i < (l.exp < 0 ? -l.exp : l.exp); ++i) ea.emplace_back(l.gen, l.exp < 0 ? -1 : 1);
  for (const auto& l : rb)
    for (std::int64_t i = 0; i < (l.exp < 0 ? -l.exp : l.exp); ++i) eb.emplace_back(l.gen, l.exp < 0 ? -1 : 1);
  if (ea.size() != eb.size()) return false;
  for (std::size_t shift = 0; shift < ea.size(); ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < ea.size() && same; ++i) same = ea[(i + shift) % ea.size()] == eb[i];
    if (same) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// presentation

std::optional<std::size_t> Presentation::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return i;
  return std::nullopt;
}

Presentation presentation(const OrderedGraph& og, bool keep_all_arrow_relators) {
  const auto& g = og.base();
  const std::size_t n = og.size();
  Presentation p;

  std::vector<std::size_t> vertex_gen(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    vertex_gen[pos] = p.generators.size();
    p.generators.push_back({GeneratorKind::Vertex, pos, 0, "gv" + std::to_string(pos + 1)});
  }
  std::vector<std::size_t> arrow_gen(g.arrow_count());
  for (std::size_t k = 0; k < og.arrows().size(); ++k) {
    arrow_gen[og.arrows()[k]] = p.generators.size();
    p.generators.push_back({GeneratorKind::Arrow, k, 0, "gh" + std::to_string(k + 1)});
  }
  std::vector<std::size_t> edge_gen(og.extra_edges().size());
  for (std::size_t k = 0; k < og.extra_edges().size(); ++k) {
    edge_gen[k] = p.generators.size();
    p.generators.push_back({GeneratorKind::ExtraEdge, k, 0, "ge" + std::to_string(k + 1)});
  }
  // alpha_j then beta_j, per vertex in order
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> genus_gen(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto genus = static_cast<std::size_t>(g.vertices()[og.vertex(pos)].genus);
    for (std::size_t j = 1; j <= genus; ++j) {
      const std::string suffix = std::to_string(j) + "v" + std::to_string(pos + 1);
      const std::size_t a = p.generators.size();
      p.generators.push_back({GeneratorKind::GenusAlpha, pos, j, "a" + suffix});
      p.generators.push_back({GeneratorKind::GenusBeta, pos, j, "b" + suffix});
      genus_gen[pos].emplace_back(a, a + 1);
    }
  }

  // gamma_{e->} for an edge leaving `from` towards `to`
  auto edge_letter = [&](std::size_t edge, std::size_t from, std::size_t to) -> Word {
    auto k = og.extra_index(edge);
    if (!k) return {};
    return Word::letter(edge_gen[*k], from < to ? 1 : -1);
  };

  // R1
  for (std::size_t pos = 0; pos < n; ++pos) {
    Word w;
    for (const auto& inc : og.incident(pos)) {
      const Word ge = edge_letter(inc.edge, pos, inc.neighbor);
      w *= ge * Word::letter(vertex_gen[inc.neighbor]) * ge.inverse();
    }
    for (auto h : og.arrows_at(pos)) w *= Word::letter(arrow_gen[h]);
    w *= Word::letter(vertex_gen[pos], g.vertices()[og.vertex(pos)].euler);
    Word comm;
    for (const auto& [a, b] : genus_gen[pos]) comm *= Word::commutator(Word::letter(a), Word::letter(b));
    w *= comm.inverse();
    p.relators.push_back({w, RelatorKind::R1});
  }
  // R2: [gamma_{v_h}, gamma_h]
  const std::size_t arrow_relators =
      og.arrows().empty() ? 0 : (keep_all_arrow_relators ? og.arrows().size() : og.arrows().size() - 1);
  for (std::size_t k = 0; k < arrow_relators; ++k) {
    const auto h = og.arrows()[k];
    const auto v = og.position(g.arrows()[h].vertex);
    p.relators.push_back(
        {Word::commutator(Word::letter(vertex_gen[v]), Word::letter(arrow_gen[h])), RelatorKind::R2});
  }
  // R3
  for (std::size_t k = 0; k < og.extra_edges().size(); ++k) {
    const auto [lo, hi] = og.oriented(og.extra_edges()[k]);
    const Word ge = Word::letter(edge_gen[k]);
    p.relators.push_back({Word::commutator(Word::letter(vertex_gen[lo]), ge * Word::letter(vertex_gen[hi]) * ge.inverse()),
                          RelatorKind::R3});
  }
  // R4
  for (std::size_t pos = 0; pos < n; ++pos)
    for (const auto& [a, b] : genus_gen[pos]) {
      p.relators.push_back({Word::commutator(Word::letter(vertex_gen[pos]), Word::letter(a)), RelatorKind::R4});
      p.relators.push_back({Word::commutator(Word::letter(vertex_gen[pos]), Word::letter(b)), RelatorKind::R4});
    }
  return p;
}

// ---------------------------------------------------------------------------
// Tietze

namespace {

struct Elimination {
  std::size_t gen;
  std::size_t relator;
  std::size_t syllable;
};

std::optional<Elimination> next_elimination(const Presentation& p) {
  for (std::size_t g = 0; g < p.generators.size(); ++g)
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      const auto& letters = p.relators[r].word.letters();
      if (p.relators[r].word.occurrences(g) != 1) continue;
      for (std::size_t s = 0; s < letters.size(); ++s)
        if (letters[s].gen == g && (letters[s].exp == 1 || letters[s].exp == -1)) return Elimination{g, r, s};
    }
  return std::nullopt;
}

}  // namespace

Presentation tietze_eliminate(const Presentation& input, std::vector<Word>* expressions) {
  Presentation p = input;
  std::vector<Word> expr;
  for (std::size_t g = 0; g < p.generators.size(); ++g) expr.push_back(Word::letter(g));
  for (auto& r : p.relators) {
    Word c = r.word.cyclically_reduced();
    if (!(c == r.word)) {
      r.word = c;
      r.kind = RelatorKind::Derived;
    }
  }
  p.relators.erase(std::remove_if(p.relators.begin(), p.relators.end(), [](const Relator& r) { return r.word.empty(); }),
                   p.relators.end());

  while (auto step = next_elimination(p)) {
    const auto& letters = p.relators[step->relator].word.letters();
    // relator = u x^s v  =>  x = (u^-1 v^-1)^s
    const Word u(std::vector<Letter>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(step->syllable)));
    const Word v(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(step->syllable) + 1, letters.end()));
    const std::int64_t s = letters[step->syllable].exp;
    const Word replacement = s == 1 ? u.inverse() * v.inverse() : v * u;

    std::vector<Relator> kept;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      if (r == step->relator) continue;
      Relator rel = p.relators[r];
      if (rel.word.occurrences(step->gen) > 0) {
        rel.word = rel.word.substitute(step->gen, replacement).cyclically_reduced();
        rel.kind = RelatorKind::Derived;
      }
      if (!rel.word.empty()) kept.push_back(std::move(rel));
    }
    std::vector<std::size_t> map(p.generators.size());
    for (std::size_t g = 0; g < map.size(); ++g) map[g] = g < step->gen ? g : g - 1;
    for (auto& rel : kept) rel.word = rel.word.renumbered(map);
    for (auto& e : expr) e = e.substitute(step->gen, replacement).renumbered(map);
    p.generators.erase(p.generators.begin() + static_cast<std::ptrdiff_t>(step->gen));
    p.relators = std::move(kept);
  }
  if (expressions != nullptr) *expressions = std::move(expr);
  return p;
}

// ---------------------------------------------------------------------------
// abelianization

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    const auto sums = p.relators[r].word.exponent_sums(p.generators.size());
    for (std::size_t j = 0; j < sums.size(); ++j) m(r, j) = sums[j];
  }
  return m;
}

AbelianizedGroup::AbelianizedGroup(const Presentation& p) : generator_count_(p.generators.size()) {
  snf_ = smith_normal_form(relation_matrix(p));
  q_inverse_ = unimodular_inverse(snf_.Q);
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    const Integer& d = snf_.D(i, i);
    if (d == 1) continue;
    torsion_.push_back(d);
    torsion_orders_.push_back(to_int64(d));
    torsion_cols_.push_back(i);
  }
  for (std::size_t i = snf_.rank; i < generator_count_; ++i) free_.push_back(i);
}

std::vector<std::int64_t> AbelianizedGroup::reduce_in_place(std::vector<std::int64_t> coords) const {
  for (std::size_t i = 0; i < torsion_orders_.size(); ++i) coords[i] = mod64(coords[i], torsion_orders_[i]);
  return coords;
}

std::vector<std::int64_t> AbelianizedGroup::reduce(const std::vector<std::int64_t>& x) const {
  if (x.size() != generator_count_) throw std::invalid_argument("reduce: exponent vector has wrong length");
  std::vector<std::int64_t> out;
  out.reserve(coordinate_count());
  auto y = [&](std::size_t col) {
    Integer acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) acc += Integer(x[j]) * snf_.Q(j, col);
    return acc;
  };
  for (std::size_t i = 0; i < torsion_cols_.size(); ++i) {
    Integer r = y(torsion_cols_[i]) % torsion_[i];
    if (r < 0) r += torsion_[i];
    out.push_back(to_int64(r));
  }
  for (auto col : free_) out.push_back(to_int64(y(col)));
  return out;
}

std::vector<std::int64_t> AbelianizedGroup::image(std::size_t generator) const {
  std::vector<std::int64_t> x(generator_count_, 0);
  x.at(generator) = 1;
  return reduce(x);
}

std::vector<std::int64_t> AbelianizedGroup::image(const Word& w) const { return reduce(w.exponent_sums(generator_count_)); }

std::vector<std::int64_t> AbelianizedGroup::coordinate_preimage(std::size_t coord) const {
  const std::size_t col = coord < torsion_cols_.size() ? torsion_cols_[coord] : free_.at(coord - torsion_cols_.size());
  std::vector<std::int64_t> x(generator_count_);
  for (std::size_t j = 0; j < generator_count_; ++j) x[j] = to_int64(q_inverse_(col, j));
  return x;
}

AbelianizedGroup abelianize(const Presentation& p) { return AbelianizedGroup(p); }

// ---------------------------------------------------------------------------
// printing

std::string format_word(const Word& w, const Presentation& p) {
  if (w.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) out << ' ';
    first = false;
    out << p.generators.at(l.gen).name;
    if (l.exp != 1) out << '^' << l.exp;
  }
  return out.str();
}

namespace {

const char* kind_tag(RelatorKind k) {
  switch (k) {
    case RelatorKind::R1: return "r1";
    case RelatorKind::R2: return "r2";
    case RelatorKind::R3: return "r3";
    case RelatorKind::R4: return "r4";
    case RelatorKind::Derived: return "derived";
  }
  return "?";
}

}  // namespace

std::string format_presentation(const Presentation& p, const OrderedGraph* og) {
  std::ostringstream out;
  out << "# generators: " << p.generators.size() << ", relators: " << p.relators.size() << '\n';
  if (og != nullptr) {
    const auto& g = og->base();
    for (const auto& gen : p.generators) {
      out << "# " << gen.name << " = ";
      switch (gen.kind) {
        case GeneratorKind::Vertex: out << "vertex " << g.vertices()[og->vertex(gen.index)].id; break;
        case GeneratorKind::Arrow: {
          const auto& h = g.arrows()[og->arrows()[gen.index]];
          out << "arrow at " << g.vertices()[h.vertex].id << " (branch " << h.branch << ")";
          break;
        }
        case GeneratorKind::ExtraEdge: {
          const auto [lo, hi] = og->oriented(og->extra_edges()[gen.index]);
          out << "edge " << g.vertices()[og->vertex(lo)].id << "-" << g.vertices()[og->vertex(hi)].id;
          break;
        }
        case GeneratorKind::GenusAlpha:
        case GeneratorKind::GenusBeta:
          out << (gen.kind == GeneratorKind::GenusAlpha ? "alpha_" : "beta_") << gen.pair << " at "
              << g.vertices()[og->vertex(gen.index)].id;
          break;
      }
      out << '\n';
    }
  }
  out << "generators:";
  for (const auto& gen : p.generators) out << ' ' << gen.name;
  out << '\n';
  for (const auto& r : p.relators) out << kind_tag(r.kind) << ": " << format_word(r.word, p) << '\n';
  return out.str();
}

}  // namespace plumbing
