#include "plumbing/qp.hpp"

#include <algorithm>
#include <stdexcept>

namespace plumbing {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::QuasiProjective: return "QuasiProjective";
    case Verdict::NotQuasiProjective: return "NotQuasiProjective";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<std::int64_t> divisors(std::int64_t e) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= e; ++d)
    if (e % d == 0) {
      small.push_back(d);
      if (d != e / d) large.push_back(e / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

QPReport classify(const PlumbingGraph& g) {
  require_valid(g);
  if (!g.is_tree()) throw std::invalid_argument("classification needs a tree");
  if (g.arrow_count() == 0) throw std::invalid_argument("classification needs at least one arrow");
  const MultiplicityTable mt = solve_multiplicities(g);

  QPReport report;
  report.branching = branching_vertices(g);
  if (mt.branch_count() >= 3) report.alexander_layer = essential_variable_report(expand(en_multivariable(g, mt)));

  if (report.branching.size() <= 1) {
    report.verdict = Verdict::QuasiProjective;
    return report;
  }

  report.e = mt.lcm_of_totals();
  for (auto n : divisors(report.e)) {
    if (n < 2) continue;
    report.tried.push_back(n);
    const CoverGraph c = cyclic_cover(g, mt, n);
    const Obstruction ob = cornqp_obstruction(c.shape());
    if (!ob.fires) continue;
    report.verdict = Verdict::NotQuasiProjective;
    report.witness = QPReport::Witness{n, c.genus_vector(), c.b1(), c.vertices.size(), c.edges.size(), c.arrows.size(), ob};
    return report;
  }
  // the e-fold cover always has two positive-genus vertices here
  throw std::logic_error("no cyclic cover fired the obstruction up to n = e = " + std::to_string(report.e));
}

}  // namespace plumbing
