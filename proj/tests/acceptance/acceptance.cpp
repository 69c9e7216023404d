// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "netpers/connectivity.hpp"
#include "netpers/graph_persistence.hpp"
#include "netpers/metrics.hpp"
#include "netpers/persistence.hpp"
#include "netpers/poset.hpp"
#include "netpers/quiver.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/process.hpp"

namespace {

using namespace netpers;
namespace t = netpers::testing;

struct Verdict {
  bool pass = true;
  std::ostringstream note;

  // Records the first failure only; later checks still run.
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

const std::vector<PropertySpec>& axiom_kinds() {
  static const std::vector<PropertySpec> kinds{
      PropertySpec::components(),    PropertySpec::clique(2),       PropertySpec::clique(3),
      PropertySpec::vertex_block(2), PropertySpec::vertex_block(3), PropertySpec::edge_block(2),
      PropertySpec::edge_block(3)};
  return kinds;
}

std::vector<PropertySpec> oracle_kinds() {
  auto kinds = axiom_kinds();
  kinds.push_back(PropertySpec::clique(4));
  kinds.push_back(PropertySpec::vertex_block(1));
  kinds.push_back(PropertySpec::edge_block(2, EdgeDeletion::unrestricted));
  return kinds;
}

std::string describe(const WeightedGraph& g) { return serialize_weighted_graph(g); }

double inside(std::span<const double> c, std::size_t i) { return i + 1 < c.size() ? (c[i] + c[i + 1]) / 2 : c[i] + 1; }

// Shared corpus for the axiom and reconstruction criteria.
const std::vector<Filtration>& axiom_corpus() {
  static const std::vector<Filtration> corpus = [] {
    t::Rng rng(1001);
    std::vector<Filtration> out;
    for (int i = 0; i < 220; ++i) {
      out.emplace_back(t::random_graph(rng, {.min_vertices = 3, .max_vertices = 12, .max_criticals = 5,
                                             .density = t::uniform_real(rng, 0.25, 0.75)}));
    }
    return out;
  }();
  return corpus;
}

void axiom_suite(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t tables = 0;
  for (const Filtration& f : axiom_corpus()) {
    for (const auto& spec : axiom_kinds()) {
      const auto pf = persistence_function(f, spec);
      const auto violation = check_axioms(pf);
      v.require(!violation, spec.describe() + " " + (violation ? violation->detail : "") + " on\n" + describe(f.source()));
      v.require(!oracle::quadruple_axioms(pf), "quadruple scan, " + spec.describe() + " on\n" + describe(f.source()));
      ++tables;
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(seconds < 60, "runtime " + std::to_string(seconds) + " s");
  v.note << tables << " tables over " << axiom_corpus().size() << " graphs in " << seconds << " s";
}

void reconstruction(Verdict& v) {
  std::size_t cells = 0;
  for (const Filtration& f : axiom_corpus()) {
    for (const auto& spec : axiom_kinds()) {
      const auto pf = persistence_function(f, spec);
      const Diagram d = extract_diagram(pf);
      const auto c = pf.criticals();
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i; j < c.size(); ++j) {
          v.require(evaluate(d, inside(c, i), inside(c, j)) == pf.at(i, j), spec.describe() + " cell mismatch");
          ++cells;
        }
        v.require(evaluate(d, inside(c, i), 1e300) == pf.at(i, pf.infinity_column()), "infinity column mismatch");
      }
    }
  }
  v.note << cells << " midpoint cells";
}

void oracle_equivalence(Verdict& v) {
  t::Rng rng(1003);
  std::size_t checks = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = t::random_graph(rng, {.max_vertices = 8, .density = t::uniform_real(rng, 0.3, 0.8)}).graph();
    for (const auto& spec : oracle_kinds()) {
      v.require(property_components(g, spec) == oracle::components(g, spec), spec.describe() + " components");
      ++checks;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const bool grid = i % 2 == 0;
    const Diagram a = t::random_diagram(rng, 6, 2, grid);
    const Diagram b = t::random_diagram(rng, 6, 2, grid);
    v.require(bottleneck_distance(a, b) == oracle::bottleneck(a, b), "bottleneck\n" + format_diagram(a) + "vs\n" +
                                                                         format_diagram(b));
  }
  v.note << checks << " component comparisons, 100 bottleneck pairs";
}

void clique2_matches_components(Verdict& v) {
  t::Rng rng(1004);
  for (int i = 0; i < 100; ++i) {
    // Derived vertex weights only: every vertex enters with its first edge.
    const Filtration f(t::random_graph(
        rng, {.min_vertices = 2, .max_vertices = 10, .max_criticals = 6, .explicit_weight = 0, .allow_isolated = false}));
    v.require(persistence_diagram(f, PropertySpec::clique(2)) == persistence_diagram(f, PropertySpec::components()),
              "clique 2 vs components on\n" + describe(f.source()));
  }
  v.note << "100 filtrations";
}

void stability(Verdict& v) {
  t::Rng rng(1005);
  double worst_slack = kInfinity;
  for (int i = 0; i < 100; ++i) {
    const auto g = t::random_graph(rng, {.max_vertices = 9});
    const Filtration f(g);
    for (double eps : {0.01, 0.1, 0.5}) {
      const Filtration fe(perturb(g, eps, 5000 + static_cast<std::uint64_t>(i)));
      for (const auto& spec : axiom_kinds()) {
        const double d = bottleneck_distance(persistence_diagram(f, spec), persistence_diagram(fe, spec));
        v.require(d <= eps + 1e-12, spec.describe() + " eps " + std::to_string(eps));
        worst_slack = std::min(worst_slack, eps - d);
      }
    }
  }
  for (int i = 0; i < 50; ++i) {
    const auto g1 = t::random_graph(rng, {.min_vertices = 4, .max_vertices = 10});
    const auto g2 = t::relabelled_copy(rng, g1, t::uniform_real(rng, 0, 1));
    const double delta = natural_pseudodistance(g1, g2, 10);
    v.require(std::isfinite(delta), "isomorphic pair reported as non-isomorphic");
    for (const auto& spec : axiom_kinds()) {
      const double d = bottleneck_distance(persistence_diagram(Filtration(g1), spec),
                                           persistence_diagram(Filtration(g2), spec));
      v.require(d <= delta, spec.describe() + " bottleneck above the pseudodistance");
    }
  }
  v.note << "300 perturbations x 7 kinds, 50 isomorphic pairs";
}

void universality(Verdict& v) {
  t::Rng rng(1006);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const Diagram d1 = t::random_realizable_diagram(rng, 5);
    const Diagram d2 = t::random_realizable_diagram(rng, 5);
    const auto pair = build_universal_pair(d1, d2);
    const double bottleneck = bottleneck_distance(d1, d2);
    for (int k : {2, 3}) {
      const Filtration f1(t_n_filtration(pair.first, k));
      const Filtration f2(t_n_filtration(pair.second, k));
      for (const auto& spec : {PropertySpec::clique(k), PropertySpec::vertex_block(k)}) {
        v.require(persistence_diagram(f1, spec) == d1, spec.describe() + " first diagram");
        v.require(persistence_diagram(f2, spec) == d2, spec.describe() + " second diagram");
      }
      const double delta = natural_pseudodistance(f1, f2, 40);
      v.require(std::abs(delta - bottleneck) <= 1e-9, "pseudodistance " + std::to_string(delta) + " vs bottleneck " +
                                                          std::to_string(bottleneck));
      worst = std::max(worst, std::abs(delta - bottleneck));
    }
  }
  v.note << "50 pairs, k = 2, 3, largest |delta - bottleneck| = " << worst;
}

void weak_directedness(Verdict& v) {
  // Clique-2 subobjects are all connected edge sets, so density is kept
  // moderate to hold the largest poset to a few thousand elements.
  t::Rng rng(1007);
  std::size_t posets = 0;
  std::size_t largest = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = t::random_graph(rng, {.max_vertices = 7, .density = t::uniform_real(rng, 0.2, 0.6)}).graph();
    for (const auto& spec : axiom_kinds()) {
      const auto sp = subobject_poset(g, spec, 7);
      v.require(is_weakly_directed(sp.order), spec.describe() + " subobject poset");
      v.require(oracle::weakly_directed(sp.order), spec.describe() + " subobject poset, pairwise scan");
      largest = std::max(largest, sp.order.size());
      ++posets;
    }
  }
  const std::vector<std::pair<std::size_t, std::size_t>> lambda{{2, 0}, {2, 1}};
  const Poset control = Poset::from_relations(3, lambda);
  v.require(!is_weakly_directed(control) && !oracle::weakly_directed(control), "negative control accepted");
  v.note << posets << " subobject posets (largest " << largest << "), negative control rejected";
}

bool cores_agree(const Poset& p, Verdict& v) {
  const auto low = core(p);
  const auto high = core(p, [](std::span<const std::size_t> beats) { return beats.back(); });
  v.require(oracle::posets_isomorphic(low.core, high.core), "deletion orders disagree");
  v.require(core(low.core).core == low.core, "core not idempotent");
  if (!is_weakly_directed(p)) return false;
  v.require(is_antichain(low.core) && low.core.size() == maximal_elements(p).size(), "core is not the maximal antichain");
  return true;
}

void poset_cores(Verdict& v) {
  std::size_t directed = 0;
  std::size_t total = 0;
  // Every relation set compatible with the index order, up to six elements.
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
      std::vector<std::pair<std::size_t, std::size_t>> rel;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1) rel.push_back(pairs[i]);
      }
      directed += cores_agree(Poset::from_relations(n, rel), v);
      ++total;
    }
  }
  t::Rng rng(1008);
  for (int i = 0; i < 3000; ++i) {
    directed += cores_agree(t::random_poset(rng, t::uniform_int(rng, 7, 8), t::uniform_real(rng, 0.1, 0.6)), v);
    ++total;
  }
  v.note << total << " posets (" << directed << " weakly directed)";
}

// Quiver with a trivial action as a weighted graph: explicit vertex births,
// parallel arrows collapsed to their earliest birth, loops dropped.
WeightedGraph as_weighted_graph(const GQuiver& gq, const QuiverFiltration& f) {
  const Quiver& q = gq.quiver();
  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    auto [s, d] = std::minmax(q.arrow(a).source, q.arrow(a).target);
    if (s == d) continue;
    auto [it, fresh] = edges.emplace(std::pair{s, d}, f.arrow_birth(a));
    if (!fresh) it->second = std::min(it->second, f.arrow_birth(a));
  }
  WeightedGraph::Builder b;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) b.set_vertex_weight(q.vertex(x), f.vertex_birth(x));
  for (const auto& [e, w] : edges) b.add_edge(q.vertex(e.first), q.vertex(e.second), w);
  return b.build();
}

void quiver_consistency(Verdict& v) {
  const std::vector<EquivariantClass> classes{{EquivariantKind::isomorphisms},
                                              {EquivariantKind::orbit_deletion, 2},
                                              {EquivariantKind::fixed_vertex_deletion, 2}};
  t::Rng rng(1009);
  for (int i = 0; i < 50; ++i) {
    const GQuiver gq = t::random_gquiver(rng, {.trivial_group = true});
    std::vector<double> vb(gq.quiver().vertex_count());
    for (double& x : vb) x = t::uniform_int(rng, 1, 4);
    std::vector<double> ab;
    for (const Arrow& a : gq.quiver().arrows()) ab.push_back(std::max(vb[a.source], vb[a.target]) + t::uniform_int(rng, 0, 2));
    const QuiverFiltration f(gq, vb, ab);
    const Filtration g(as_weighted_graph(gq, f));
    v.require(gq_persistence(gq, f, classes[0]) == persistence_diagram(g, PropertySpec::components()),
              "trivial group diagram on\n" + serialize_gquiver(gq));
  }
  std::size_t tables = 0;
  for (int i = 0; i < 50; ++i) {
    const GQuiver gq = t::random_gquiver(rng);
    const QuiverFiltration f = orbit_filtration(gq);
    for (const auto& cls : classes) {
      const auto pf = gq_persistence_function(gq, f, cls);
      v.require(!check_axioms(pf) && !oracle::quadruple_axioms(pf), cls.describe() + " axioms on\n" + serialize_gquiver(gq));
      ++tables;

      std::vector<SubQuiver> connected;
      for (const SubQuiver& s : oracle::invariant_subquivers(gq, whole(gq))) {
        if (!s.empty() && oracle::equivariantly_connected(gq, s, cls)) connected.push_back(s);
      }
      const Poset order = Poset::from_order(connected.size(), [&](std::size_t a, std::size_t b) {
        return is_subquiver_of(connected[a], connected[b]);
      });
      v.require(oracle::weakly_directed(order), cls.describe() + " subobject poset on\n" + serialize_gquiver(gq));
      v.require(gq_components(gq, cls) == oracle::gq_components(gq, whole(gq), cls), cls.describe() + " components");
    }
  }
  v.note << "50 trivial-group quivers, " << tables << " equivariant tables";
}

void cli_determinism(Verdict& v) {
#ifdef NETPERS_CLI_PATH
  const std::string cli = t::quoted(NETPERS_CLI_PATH);
  auto data = [](const char* name) { return t::quoted(std::string(NETPERS_DATA_DIR) + "/" + name); };
  const std::vector<std::string> commands{
      cli + " diagram --property components " + data("two_bars.txt"),
      cli + " diagram --property clique --k 3 --format json " + data("bowtie.txt"),
      cli + " diagram --property vertex-block --k 2 --format svg " + data("bowtie.txt"),
      cli + " diagram --property edge-block --k 2 --perturb 0.1 --seed 7 " + data("bowtie.txt"),
      cli + " distance " + data("diagram_a.txt") + " " + data("diagram_empty.txt"),
      cli + " distance " + data("diagram_halfline.txt") + " " + data("diagram_halfline.txt"),
      cli + " quiver-diagram --class orbit-deletion " + data("klein4.quiver"),
  };
  for (const auto& cmd : commands) {
    const auto first = t::run(cmd);
    v.require(first.exit_code == 0 && !first.out.empty(), "no output from " + cmd);
    for (int r = 0; r < 2; ++r) v.require(t::run(cmd).out == first.out, "output differs between runs: " + cmd);
    v.require(t::run("NETPERS_THREADS=4 " + cmd).out == first.out, "output depends on the worker count: " + cmd);
  }
  const std::vector<std::pair<std::string, int>> codes{
      {cli + " diagram " + data("two_bars.txt"), 0},
      {cli + " verify " + data("two_bars.txt"), 0},
      {cli + " diagram " + data("malformed_graph.txt"), 1},
      {cli + " distance " + data("malformed_diagram.txt") + " " + data("diagram_a.txt"), 1},
      {cli + " diagram " + data("does_not_exist.txt"), 1},
      {cli + " diagram --property cliques " + data("two_bars.txt"), 2},
      {cli + " diagram --bogus " + data("two_bars.txt"), 2},
      {cli + " diagram --perturb 0.1 " + data("two_bars.txt"), 2},
      {"NETPERS_THREADS=zero " + cli + " diagram " + data("two_bars.txt"), 2},
      {cli + " verify --debug-corrupt '0 1 5' " + data("two_bars.txt"), 3},
  };
  for (const auto& [cmd, expected] : codes) {
    const int got = t::run(cmd).exit_code;
    v.require(got == expected, cmd + " exited " + std::to_string(got) + ", expected " + std::to_string(expected));
  }
  v.note << commands.size() << " commands repeated, " << codes.size() << " exit codes";
#else
  v.require(false, "built without the command-line tool");
#endif
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"axiom suite", axiom_suite},
      {"reconstruction", reconstruction},
      {"oracle equivalence", oracle_equivalence},
      {"clique-2 equals components", clique2_matches_components},
      {"stability", stability},
      {"universality", universality},
      {"weak directedness", weak_directedness},
      {"poset cores", poset_cores},
      {"quiver consistency", quiver_consistency},
      {"CLI determinism and exit codes", cli_determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%s; %.1f s)\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                v.note.str().c_str(), seconds);
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
