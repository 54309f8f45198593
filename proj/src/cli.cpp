#include "plumbing/cli.hpp"

#include "plumbing/alexander.hpp"
#include "plumbing/charvar.hpp"
#include "plumbing/cover.hpp"
#include "plumbing/fox.hpp"
#include "plumbing/graph_io.hpp"
#include "plumbing/group.hpp"
#include "plumbing/qp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace plumbing {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  bool json = false;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::size_t samples = 20;
  std::string fix;
  std::int64_t n = 0;
  bool multi = false;
  bool single = false;
  bool expand = false;
  bool simplify = false;
  bool blocks = false;
  std::string emit_graph;
  std::string root;
};

Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(12) << x;
  return s.str();
}

std::string fmt_complex(Complex z) {
  if (z.imag() == 0) return fmt_double(z.real());
  return fmt_double(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_double(std::abs(z.imag())) + "i";
}

const char* relator_tag(RelatorKind k) {
  switch (k) {
    case RelatorKind::R1: return "r1";
    case RelatorKind::R2: return "r2";
    case RelatorKind::R3: return "r3";
    case RelatorKind::R4: return "r4";
    case RelatorKind::Derived: return "derived";
  }
  return "?";
}

std::string join(const std::vector<std::int64_t>& v, const char* sep = ", ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

PlumbingGraph load(const Options& o) {
  PlumbingGraph g = read_graph_file(o.file);
  require_valid(g);
  return g;
}

OrderedGraph ordered(const PlumbingGraph& g, const Options& o) {
  return choose_tree_and_orders(g, o.root.empty() ? std::nullopt : std::optional<std::string>(o.root));
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  const PlumbingGraph g = read_graph_file(o.file);
  const auto diags = validate(g);
  if (o.json) {
    Json j = header("validate");
    j["valid"] = diags.empty();
    j["diagnostics"] = Json::array();
    for (const auto& d : diags) j["diagnostics"].push_back(d.message);
    out << j.dump(2) << '\n';
  } else if (diags.empty()) {
    out << "ok: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, " << g.arrow_count()
        << " arrows\n";
  } else {
    for (const auto& d : diags) out << "error: " << d.message << '\n';
  }
  return diags.empty() ? kExitOk : kExitInputError;
}

int cmd_h1(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const Presentation p = presentation(ordered(g, o));
  const AbelianizedGroup ab(p);
  if (o.json) {
    Json j = header("h1");
    j["rank"] = ab.rank();
    j["torsion"] = ab.torsion_orders();
    j["generators"] = p.generators.size();
    j["relators"] = p.relators.size();
    out << j.dump(2) << '\n';
  } else {
    out << "rank: " << ab.rank() << "\ntorsion: [" << join(ab.torsion_orders()) << "]\n";
  }
  return kExitOk;
}

int cmd_mult(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const MultiplicityTable mt = solve_multiplicities(g);
  if (o.json) {
    Json j = header("mult");
    j["vertices"] = Json::array();
    for (const auto& v : g.vertices()) j["vertices"].push_back(v.id);
    j["per_branch"] = mt.per_branch;
    j["total"] = mt.total;
    j["lcm"] = mt.lcm_of_totals();
    out << j.dump(2) << '\n';
  } else {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      out << g.vertices()[v].id << ": <" << join(mt.tuple(v)) << "> total " << mt.total[v] << '\n';
    }
    out << "lcm: " << mt.lcm_of_totals() << '\n';
  }
  return kExitOk;
}

int cmd_present(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const OrderedGraph og = ordered(g, o);
  Presentation p = presentation(og);
  if (o.simplify) p = tietze_eliminate(p);
  if (o.json) {
    Json j = header("present");
    j["simplified"] = o.simplify;
    j["generators"] = Json::array();
    for (const auto& gen : p.generators) j["generators"].push_back(gen.name);
    j["relators"] = Json::array();
    for (const auto& r : p.relators) j["relators"].push_back({{"kind", relator_tag(r.kind)}, {"word", format_word(r.word, p)}});
    out << j.dump(2) << '\n';
  } else {
    out << format_presentation(p, o.simplify ? nullptr : &og);
  }
  return kExitOk;
}

int cmd_fox(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const OrderedGraph og = ordered(g, o);
  Presentation p = o.blocks ? presentation(og, true) : presentation(og);
  if (o.simplify && !o.blocks) p = tietze_eliminate(p);
  auto ab = std::make_shared<const AbelianizedGroup>(p);
  const FoxMatrix F = o.blocks ? fox_matrix_blocks(og, ab) : fox_matrix_generic(p, ab);
  if (o.json) {
    Json j = header("fox");
    j["rows"] = F.rows;
    j["cols"] = F.cols;
    j["coordinates"] = coordinate_names(*ab);
    j["entries"] = Json::array();
    for (std::size_t r = 0; r < F.rows; ++r)
      for (std::size_t c = 0; c < F.cols; ++c)
        if (!F(r, c).is_zero()) j["entries"].push_back({{"row", r + 1}, {"col", p.generators[c].name}, {"value", F(r, c).to_string()}});
    j["blocks"] = Json::array();
    for (const auto& b : F.blocks)
      j["blocks"].push_back({{"name", b.name}, {"rows", {b.row_begin + 1, b.row_end}}, {"cols", {b.col_begin + 1, b.col_end}}});
    out << j.dump(2) << '\n';
  } else {
    out << format_fox(F, p);
  }
  return kExitOk;
}

int cmd_alex(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const MultiplicityTable mt = solve_multiplicities(g);
  const FormalProduct fp = o.single ? acampo_single(g, mt) : en_multivariable(g, mt);
  std::optional<LaurentPoly> poly;
  if (o.expand) poly = expand(fp);
  if (o.json) {
    Json j = header("alex");
    j["mode"] = o.single ? "single" : "multi";
    j["variables"] = fp.variables;
    j["product"] = fp.to_string();
    if (poly) {
      j["polynomial"] = poly->to_string();
      j["monomials"] = Json::array();
      for (const auto& [e, c] : poly->terms()) j["monomials"].push_back({{"exponent", e}, {"coefficient", c.str()}});
      const auto rep = essential_variable_report(*poly);
      j["essential"] = {{"lattice_rank", rep.lattice_rank}, {"single_essential", rep.single_essential}, {"direction", rep.direction}};
    }
    out << j.dump(2) << '\n';
  } else {
    out << (poly ? poly->to_string() : fp.to_string()) << '\n';
  }
  return kExitOk;
}

int cmd_cover(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  if (o.n < 2) throw std::invalid_argument("--n must be at least 2");
  const MultiplicityTable mt = solve_multiplicities(g);
  const CoverGraph c = cyclic_cover(g, mt, o.n);
  const Obstruction ob = cornqp_obstruction(c.shape());
  if (!o.emit_graph.empty()) {
    std::ofstream f(o.emit_graph, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + o.emit_graph + "'");
    f << emit_cover_graph(c, g);
  }
  if (o.json) {
    Json j = header("cover");
    j["n"] = c.n;
    j["vertices"] = Json::array();
    for (const auto& v : c.vertices)
      j["vertices"].push_back({{"base", g.vertices()[v.base].id}, {"component", v.component}, {"genus", v.genus}});
    j["edges"] = c.edges.size();
    j["arrows"] = c.arrows.size();
    j["b1"] = c.b1();
    j["connected"] = c.connected();
    j["genus"] = c.genus_vector();
    j["obstruction"] = {{"fires", ob.fires}, {"k", ob.k}};
    out << j.dump(2) << '\n';
  } else {
    out << "n: " << c.n << "\nvertices: " << c.vertices.size() << "\nedges: " << c.edges.size()
        << "\narrows: " << c.arrows.size() << "\nb1: " << c.b1() << "\ngenus: [" << join(c.genus_vector()) << "]\n";
    if (!c.connected()) out << "warning: cover is disconnected (" << c.connected_components << " components)\n";
    out << "obstruction: " << (ob.fires ? "fires" : "does not fire") << '\n';
  }
  return kExitOk;
}

int cmd_qp(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const QPReport rep = classify(g);
  if (o.json) {
    Json j = header("qp");
    j["verdict"] = verdict_name(rep.verdict);
    j["branching"] = Json::array();
    for (auto v : rep.branching) j["branching"].push_back(g.vertices()[v].id);
    j["e"] = rep.e;
    j["tried"] = rep.tried;
    if (rep.witness) {
      const auto& w = *rep.witness;
      j["witness"] = {{"n", w.n}, {"genus", w.genus}, {"b1", w.b1}, {"vertices", w.vertices}, {"edges", w.edges},
                      {"arrows", w.arrows}, {"k", w.obstruction.k}};
    } else {
      j["witness"] = nullptr;
    }
    if (rep.alexander_layer)
      j["alexander_layer"] = {{"lattice_rank", rep.alexander_layer->lattice_rank},
                              {"single_essential", rep.alexander_layer->single_essential}};
    else
      j["alexander_layer"] = nullptr;
    out << j.dump(2) << '\n';
  } else {
    out << "verdict: " << verdict_name(rep.verdict) << "\nbranching vertices: " << rep.branching.size() << '\n';
    if (rep.witness) {
      const auto& w = *rep.witness;
      out << "witness: n=" << w.n << " (e=" << rep.e << "), genus [" << join(w.genus) << "], b1 " << w.b1 << '\n';
    }
    if (rep.alexander_layer)
      out << "alexander: lattice rank " << rep.alexander_layer->lattice_rank
          << (rep.alexander_layer->single_essential ? ", single essential variable\n" : ", several essential variables\n");
  }
  return rep.verdict == Verdict::NotQuasiProjective ? kExitNotQuasiProjective : kExitOk;
}

int cmd_scan(const Options& o, std::ostream& out) {
  const PlumbingGraph g = load(o);
  const Presentation p = presentation(ordered(g, o));
  auto ab = std::make_shared<const AbelianizedGroup>(p);
  const CharacterTorus torus = character_torus(ab);
  const Constraints constraints = parse_constraints(o.fix);
  const StratumSample s = sample_stratum(p, torus, constraints, 0, o.samples, o.seed, o.tol);
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& e : s.entries) ++histogram[e.h1.dim];

  auto flags = [](const H1Dimension& h) {
    std::vector<std::string> f;
    if (h.trivial) f.push_back("trivial");
    if (h.unstable) f.push_back("unstable");
    return f;
  };
  if (o.json) {
    Json j = header("scan");
    j["coordinates"] = torus.names;
    j["orders"] = torus.orders;
    j["seed"] = o.seed;
    j["samples"] = Json::array();
    for (const auto& e : s.entries) {
      Json ch = Json::object();
      for (std::size_t c = 0; c < torus.names.size(); ++c) ch[torus.names[c]] = {e.xi.chart[c].real(), e.xi.chart[c].imag()};
      j["samples"].push_back({{"character", ch}, {"dim", e.h1.dim}, {"flags", flags(e.h1)}});
    }
    j["histogram"] = Json::object();
    for (auto [d, k] : histogram) j["histogram"][std::to_string(d)] = k;
    out << j.dump(2) << '\n';
  } else {
    out << "torus: rank " << torus.dimension() << ", torsion [" << join(torus.torsion_orders()) << "]\n";
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      const auto& e = s.entries[i];
      out << '#' << i + 1;
      for (std::size_t c = 0; c < torus.names.size(); ++c) out << ' ' << torus.names[c] << '=' << fmt_complex(e.xi.chart[c]);
      out << "  dim " << e.h1.dim;
      for (const auto& f : flags(e.h1)) out << " [" << f << ']';
      out << '\n';
    }
    for (auto [d, k] : histogram) out << "dim " << d << ": " << k << '\n';
  }
  return s.any_unstable() ? kExitUnstable : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plumbing graph invariants: presentations, Fox matrices, characteristic varieties, covers"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--seed", o.seed, "Random seed for sampling");
  app.add_option("--tol", o.tol, "Relative singular-value threshold")->check(CLI::PositiveNumber);
  app.add_option("--root", o.root, "Root vertex id for the spanning tree");

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Graph file")->required();
    return sub;
  };
  auto* validate_cmd = with_file(app.add_subcommand("validate", "Check the graph invariants"));
  auto* h1_cmd = with_file(app.add_subcommand("h1", "First homology"));
  auto* mult_cmd = with_file(app.add_subcommand("mult", "Multiplicities of the link branches"));
  auto* present_cmd = with_file(app.add_subcommand("present", "Fundamental group presentation"));
  present_cmd->add_flag("--simplify", o.simplify, "Apply Tietze eliminations");
  auto* fox_cmd = with_file(app.add_subcommand("fox", "Fox matrix"));
  fox_cmd->add_flag("--simplify", o.simplify, "Differentiate the simplified presentation");
  fox_cmd->add_flag("--blocks", o.blocks, "Block form assembled from the graph");
  auto* alex_cmd = with_file(app.add_subcommand("alex", "Alexander polynomial"));
  auto* multi = alex_cmd->add_flag("--multi", o.multi, "Multi-variable polynomial (default)");
  auto* single = alex_cmd->add_flag("--single", o.single, "Single-variable polynomial");
  multi->excludes(single);
  alex_cmd->add_flag("--expand", o.expand, "Expand the product");
  auto* cover_cmd = with_file(app.add_subcommand("cover", "Cyclic branched cover shape"));
  cover_cmd->add_option("--n", o.n, "Cover degree")->required();
  cover_cmd->add_option("--emit-graph", o.emit_graph, "Write the cover as a graph file");
  auto* qp_cmd = with_file(app.add_subcommand("qp", "Quasi-projectivity verdict"));
  auto* scan_cmd = with_file(app.add_subcommand("scan", "Sample twisted cohomology dimensions"));
  scan_cmd->add_option("--samples", o.samples, "Number of characters");
  scan_cmd->add_option("--fix", o.fix, "Fixed coordinates, e.g. z1=2,w1=zeta(1,2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (h1_cmd->parsed()) return cmd_h1(o, out);
    if (mult_cmd->parsed()) return cmd_mult(o, out);
    if (present_cmd->parsed()) return cmd_present(o, out);
    if (fox_cmd->parsed()) return cmd_fox(o, out);
    if (alex_cmd->parsed()) return cmd_alex(o, out);
    if (cover_cmd->parsed()) return cmd_cover(o, out);
    if (qp_cmd->parsed()) return cmd_qp(o, out);
    if (scan_cmd->parsed()) return cmd_scan(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace plumbing
