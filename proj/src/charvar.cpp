#include "plumbing/charvar.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace plumbing {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Complex root_of_unity(std::int64_t p, std::int64_t q) {
  const std::int64_t k = mod64(p, q);
  if (k == 0) return {1, 0};
  if (2 * k == q) return {-1, 0};
  return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(q));
}

Complex random_free_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> modulus(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const double r = modulus(rng);
  return std::polar(r, angle(rng));
}

}  // namespace

// ---------------------------------------------------------------------------
// torus charts

std::size_t CharacterTorus::dimension() const {
  return static_cast<std::size_t>(std::count(orders.begin(), orders.end(), 0));
}

std::vector<std::int64_t> CharacterTorus::torsion_orders() const {
  std::vector<std::int64_t> out;
  for (auto o : orders)
    if (o != 0) out.push_back(o);
  return out;
}

std::optional<std::size_t> CharacterTorus::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

CharacterTorus character_torus(AbelianPtr ab) {
  CharacterTorus t;
  t.names = coordinate_names(*ab);
  t.orders = ab->torsion_orders();
  t.orders.resize(ab->coordinate_count(), 0);
  for (std::size_t j = 0; j < ab->generator_count(); ++j) t.generator_monomials.push_back(ab->image(j));
  t.ab = std::move(ab);
  return t;
}

CharacterTorus custom_torus(const Presentation& p, AbelianPtr ab, std::vector<std::string> names,
                            std::vector<std::int64_t> orders, std::vector<std::vector<std::int64_t>> monomials) {
  const std::size_t k = names.size();
  const std::size_t m = p.generators.size();
  if (orders.size() != k) throw std::invalid_argument("custom chart: names and orders differ in length");
  if (monomials.size() != m) throw std::invalid_argument("custom chart: need one monomial per generator");
  for (const auto& row : monomials)
    if (row.size() != k) throw std::invalid_argument("custom chart: monomial has wrong length");
  for (auto o : orders)
    if (o < 0 || o == 1) throw std::invalid_argument("custom chart: coordinate order must be 0 or at least 2");

  // relators must map to zero
  const IntMatrix R = relation_matrix(p);
  for (std::size_t r = 0; r < R.rows(); ++r)
    for (std::size_t c = 0; c < k; ++c) {
      Integer s = 0;
      for (std::size_t j = 0; j < m; ++j) s += R(r, j) * monomials[j][c];
      if (orders[c] == 0 ? s != 0 : s % orders[c] != 0)
        throw std::invalid_argument("custom chart: relator " + std::to_string(r + 1) + " is not killed");
    }

  // same rank and torsion size, and surjective
  std::size_t free = 0;
  Integer torsion_size = 1, expected = 1;
  std::vector<std::size_t> torsion_cols;
  for (std::size_t c = 0; c < k; ++c) {
    if (orders[c] == 0)
      ++free;
    else {
      torsion_size *= orders[c];
      torsion_cols.push_back(c);
    }
  }
  for (const auto& d : ab->torsion()) expected *= d;
  if (free != ab->rank() || torsion_size != expected)
    throw std::invalid_argument("custom chart: coordinate shape does not match the abelianization");
  IntMatrix S(m + torsion_cols.size(), k);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < k; ++c) S(j, c) = monomials[j][c];
  for (std::size_t i = 0; i < torsion_cols.size(); ++i) S(m + i, torsion_cols[i]) = orders[torsion_cols[i]];
  const auto snf = smith_normal_form(S);
  bool unit = snf.rank == k;
  for (const auto& d : snf.invariant_factors()) unit = unit && d == 1;
  if (!unit) throw std::invalid_argument("custom chart: generator images do not span the coordinate group");

  return CharacterTorus{std::move(ab), std::move(names), std::move(orders), std::move(monomials)};
}

// ---------------------------------------------------------------------------
// characters

ChartValue ChartValue::zeta(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("zeta(P,Q) needs Q > 0");
  return {root_of_unity(p, q), std::make_pair(p, q)};
}

bool Character::is_trivial(double tol) const {
  return std::all_of(values.begin(), values.end(), [tol](const Complex& v) { return std::abs(v - 1.0) <= tol; });
}

Character Character::conjugate() const {
  Character out = *this;
  for (auto& v : out.values) v = std::conj(v);
  for (auto& v : out.chart) v = std::conj(v);
  return out;
}

Character make_character(const CharacterTorus& torus, const std::vector<ChartValue>& coords) {
  if (coords.size() != torus.names.size()) throw std::invalid_argument("character: wrong number of chart coordinates");
  Character xi;
  for (std::size_t c = 0; c < coords.size(); ++c) {
    const auto d = torus.orders[c];
    Complex z = coords[c].value;
    if (z == Complex(0, 0)) throw std::invalid_argument("character: coordinate " + torus.names[c] + " is zero");
    if (d != 0) {
      if (coords[c].root) {
        const auto [p, q] = *coords[c].root;
        if ((p * d) % q != 0)
          throw std::invalid_argument("character: " + torus.names[c] + " must be a root of unity of order dividing " +
                                      std::to_string(d));
        z = root_of_unity(p * d / q, d);
      } else {
        if (std::abs(ipow(z, d) - 1.0) > 1e-9)
          throw std::invalid_argument("character: " + torus.names[c] + " must satisfy w^" + std::to_string(d) + " = 1");
        const double turns = std::arg(z) / kTwoPi;
        z = root_of_unity(static_cast<std::int64_t>(std::llround(turns * static_cast<double>(d))), d);
      }
    }
    xi.chart.push_back(z);
  }
  for (const auto& mono : torus.generator_monomials) {
    Complex v = 1;
    for (std::size_t c = 0; c < mono.size(); ++c)
      if (mono[c] != 0) v *= ipow(xi.chart[c], mono[c]);
    xi.values.push_back(v);
  }
  return xi;
}

Character character_from_generators(std::vector<Complex> values) {
  Character xi;
  xi.values = std::move(values);
  return xi;
}

bool is_valid_character(const Presentation& p, const Character& xi, double tol) {
  if (xi.values.size() != p.generators.size()) return false;
  for (const auto& r : p.relators) {
    const auto x = r.word.exponent_sums(p.generators.size());
    Complex v = 1;
    double weight = 1;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] == 0) continue;
      v *= ipow(xi.values[j], x[j]);
      weight += std::abs(static_cast<double>(x[j])) * (1.0 + std::abs(std::log(std::abs(xi.values[j]))));
    }
    if (std::abs(v - 1.0) > tol * weight) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// twisted cohomology

H1Dimension dim_h1(const FoxMatrix& F, const Character& xi, double tol) {
  H1Dimension out;
  out.trivial = xi.is_trivial();
  if (F.rows > 0 && F.cols > 0) {
    const Eigen::MatrixXcd M = evaluate(F, xi.values);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    if (top > 0) {
      out.threshold = tol * top;
      for (double s : out.singular_values) {
        if (s > out.threshold) ++out.rank;
        if (s >= 0.1 * out.threshold && s <= 10 * out.threshold) out.unstable = true;
      }
    }
  }
  const std::size_t m = F.cols;
  if (out.trivial)
    out.dim = m - out.rank;
  else
    out.dim = m > out.rank ? m - out.rank - 1 : 0;
  return out;
}

H1Dimension dim_h1(const Presentation& p, const Character& xi, double tol) {
  return dim_h1(fox_matrix_generic(p), xi, tol);
}

std::int64_t corank_closed_form(const PlumbingGraph& g, CorankMode mode) {
  if (!is_negative_definite(incidence(g).A))
    throw std::invalid_argument("corank formula needs a negative definite intersection matrix");
  std::int64_t total = first_betti(g) + static_cast<std::int64_t>(g.arrow_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto genus = g.vertices()[v].genus;
    if (mode.kind == CorankMode::Kind::BEpsW && v == mode.w)
      total += 2 * genus;
    else
      total += std::max<std::int64_t>(0, 2 * genus - 1);
  }
  return total;
}

bool StratumSample::all_at_target() const {
  return std::all_of(entries.begin(), entries.end(), [this](const Entry& e) { return e.h1.dim == target; });
}

bool StratumSample::any_unstable() const {
  return std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return e.h1.unstable; });
}

StratumSample sample_stratum(const Presentation& p, const CharacterTorus& torus, const Constraints& constraints,
                             std::size_t target, std::size_t count, std::uint64_t seed, double tol) {
  std::vector<std::optional<ChartValue>> fixed(torus.names.size());
  std::ostringstream desc;
  for (const auto& [name, value] : constraints) {
    auto c = torus.find(name);
    if (!c) throw std::invalid_argument("unknown chart coordinate '" + name + "'");
    const auto d = torus.orders[*c];
    if (d != 0) {
      const bool ok = value.root ? (value.root->first * d) % value.root->second == 0
                                 : std::abs(ipow(value.value, d) - 1.0) <= 1e-9;
      if (!ok) throw std::invalid_argument("inconsistent constraint: " + name + " is not a " + std::to_string(d) + "-th root of unity");
    }
    fixed[*c] = value;
    if (desc.tellp() > 0) desc << ',';
    desc << name << '=';
    if (value.root)
      desc << "zeta(" << value.root->first << ',' << value.root->second << ')';
    else
      desc << value.value.real() << (value.value.imag() < 0 ? "" : "+") << value.value.imag() << 'i';
  }

  const FoxMatrix F = fox_matrix_generic(p, torus.ab);
  std::mt19937_64 rng(seed);
  StratumSample out;
  out.target = target;
  out.constraints = desc.str();
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<ChartValue> coords;
    for (std::size_t c = 0; c < torus.names.size(); ++c) {
      if (fixed[c]) {
        coords.push_back(*fixed[c]);
      } else if (torus.orders[c] == 0) {
        coords.push_back(ChartValue::number(random_free_value(rng)));
      } else {
        std::uniform_int_distribution<std::int64_t> k(0, torus.orders[c] - 1);
        coords.push_back(ChartValue::zeta(k(rng), torus.orders[c]));
      }
    }
    Character xi = make_character(torus, coords);
    if (!is_valid_character(p, xi)) throw std::invalid_argument("sampled character violates the torus equations");
    H1Dimension h = dim_h1(F, xi, tol);
    out.entries.push_back({std::move(xi), std::move(h)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// B_1 / B_{eps,w}

bool BEpsilonReport::ok() const {
  return std::all_of(trials.begin(), trials.end(),
                     [](const Trial& t) { return static_cast<std::int64_t>(t.dim) == t.expected; });
}

BEpsilonReport b_epsilon_check(const PlumbingGraph& g, std::size_t trials, std::uint64_t seed, double tol) {
  BEpsilonReport report;
  report.corank_b1 = corank_closed_form(g, CorankMode::b1());
  const OrderedGraph og = choose_tree_and_orders(g);
  const Presentation p = presentation(og);
  const FoxMatrix F = fox_matrix_generic(p);
  std::mt19937_64 rng(seed);

  // genus generators by base vertex
  std::vector<std::vector<std::size_t>> genus_gens(g.vertex_count());
  for (std::size_t j = 0; j < p.generators.size(); ++j) {
    const auto& gen = p.generators[j];
    if (gen.kind == GeneratorKind::GenusAlpha || gen.kind == GeneratorKind::GenusBeta)
      genus_gens[og.vertex(gen.index)].push_back(j);
  }

  // all t_v, t_h, t_e = 1; genus coordinates random except at `frozen`
  auto run = [&](const std::string& set, std::int64_t corank, std::optional<std::size_t> frozen) {
    bool random_part = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (!genus_gens[v].empty() && frozen != v) random_part = true;
    const std::size_t n = random_part ? trials : 1;
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<Complex> values(p.generators.size(), Complex(1, 0));
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (frozen == v) continue;
        for (auto j : genus_gens[v]) values[j] = random_free_value(rng);
      }
      const Character xi = character_from_generators(std::move(values));
      const auto h = dim_h1(F, xi, tol);
      report.unstable = report.unstable || h.unstable;
      report.trials.push_back({set, h.dim, h.trivial ? corank : corank - 1, h.trivial});
    }
  };

  run("B1", report.corank_b1, std::nullopt);
  for (std::size_t w = 0; w < g.vertex_count(); ++w)
    if (g.vertices()[w].genus > 0) run("Beps," + g.vertices()[w].id, corank_closed_form(g, CorankMode::b_eps_w(w)), w);
  return report;
}

// ---------------------------------------------------------------------------
// obstruction

Obstruction cornqp_obstruction(const GraphShape& shape) {
  Obstruction out;
  out.b1 = shape.b1;
  std::int64_t sum = 0;
  for (auto g : shape.genus) {
    if (g > 0) ++out.positive_genus;
    sum += std::max<std::int64_t>(0, 2 * g - 1);
  }
  out.k = sum + shape.b1 + static_cast<std::int64_t>(shape.arrows) - 1;
  out.fires = out.positive_genus >= 2 || (out.positive_genus >= 1 && shape.b1 > 0);
  if (out.fires && out.k <= 0) throw std::logic_error("obstruction fired with a non-positive stratum index");
  return out;
}

Obstruction cornqp_obstruction(const PlumbingGraph& g) {
  if (!is_negative_definite(incidence(g).A))
    throw std::invalid_argument("obstruction needs a negative definite intersection matrix");
  GraphShape shape;
  for (const auto& v : g.vertices()) shape.genus.push_back(v.genus);
  shape.b1 = first_betti(g);
  shape.arrows = g.arrow_count();
  return cornqp_obstruction(shape);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& whole) {
  double v = 0;
  const char* first = s.data();
  const char* last = first + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad number '" + whole + "'");
  return v;
}

std::int64_t parse_integer(const std::string& s) {
  std::int64_t v = 0;
  const std::string t = trim(s);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.back() != 'i') return {parse_real(s, s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, s), parse_real(im, s)};
}

Constraints parse_constraints(const std::string& text) {
  Constraints out;
  std::vector<std::string> items;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  items.push_back(cur);
  for (const auto& raw : items) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value, got '" + item + "'");
    const std::string name = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (name.empty()) throw std::invalid_argument("missing coordinate name in '" + item + "'");
    if (value.rfind("zeta(", 0) == 0) {
      if (value.back() != ')') throw std::invalid_argument("bad root of unity '" + value + "'");
      const std::string args = value.substr(5, value.size() - 6);
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("zeta needs two arguments: '" + value + "'");
      out[name] = ChartValue::zeta(parse_integer(args.substr(0, comma)), parse_integer(args.substr(comma + 1)));
    } else {
      out[name] = ChartValue::number(parse_complex(value));
    }
  }
  return out;
}

}  // namespace plumbing
