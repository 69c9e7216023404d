// netpers: persistence diagrams of weighted graphs and G-quivers.
//
// Exit codes: 0 ok, 1 parse error, 2 configuration error, 3 verification failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "netpers/connectivity.hpp"
#include "netpers/error.hpp"
#include "netpers/graph.hpp"
#include "netpers/graph_persistence.hpp"
#include "netpers/metrics.hpp"
#include "netpers/persistence.hpp"
#include "netpers/quiver.hpp"
#include "render.hpp"

namespace {

using namespace netpers;

enum ExitCode { kOk = 0, kParse = 1, kConfig = 2, kVerify = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw netpers::ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

std::string format_distance(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

EngineOptions engine_options() {
  EngineOptions options;
  if (const char* env = std::getenv("NETPERS_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (*end != '\0' || n == 0 || n > 1024) throw ConfigError("NETPERS_THREADS must be an integer in 1..1024");
    options.threads = static_cast<unsigned>(n);
  }
  return options;
}

struct PropertyFlags {
  std::string kind = "components";
  int k = 2;
  std::string edge_deletion = "spanning";

  void attach(CLI::App* cmd) {
    cmd->add_option("--property", kind, "components | clique | vertex-block | edge-block")->capture_default_str();
    cmd->add_option("--k", k, "order of the clique / block property")->capture_default_str();
    cmd->add_option("--edge-deletion", edge_deletion, "edge-block deletions: spanning | unrestricted")
        ->capture_default_str();
  }

  PropertySpec spec() const {
    const auto parsed = parse_kind(kind);
    if (!parsed) throw ConfigError("unknown property '" + kind + "'");
    PropertySpec s;
    s.kind = *parsed;
    s.k = *parsed == PropertyKind::components ? 1 : k;
    if (edge_deletion == "spanning") {
      s.edge_deletion = EdgeDeletion::spanning;
    } else if (edge_deletion == "unrestricted") {
      s.edge_deletion = EdgeDeletion::unrestricted;
    } else {
      throw ConfigError("unknown edge deletion mode '" + edge_deletion + "'");
    }
    s.validate();
    return s;
  }
};

std::string render(const Diagram& d, const std::string& format, const std::string& property,
                   const std::string& input_bytes) {
  if (format == "text") return format_diagram(d);
  if (format == "json") return cli::render_json(d, property, cli::sha256_hex(input_bytes));
  if (format == "svg") return cli::render_svg(d, property);
  throw ConfigError("unknown format '" + format + "'");
}

// Grid midpoints strictly between critical values, plus one value on each side.
std::vector<double> off_critical_points(std::span<const double> c) {
  std::vector<double> out;
  if (c.empty()) return out;
  out.push_back(c.front() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back((c[i] + c[i + 1]) / 2);
  out.push_back(c.back() + 1);
  return out;
}

int run_verify(const WeightedGraph& g, const PropertySpec& spec, std::size_t cap, const std::string& corrupt,
               EngineOptions options) {
  const Filtration f(g);
  PersistenceFunction pf = persistence_function(f, spec, options);
  if (!corrupt.empty()) {
    std::istringstream fields(corrupt);
    std::size_t i = 0;
    std::size_t j = 0;
    int value = 0;
    if (!(fields >> i >> j >> value) || i >= pf.size() || j > pf.size() || j < i) {
      throw ConfigError("--debug-corrupt expects 'i j value' inside the table");
    }
    pf.set(i, j, value);
  }
  bool failed = false;

  if (const auto violation = check_axioms(pf)) {
    std::cout << "axioms: FAIL " << violation->axiom << ": " << violation->detail << "\n";
    failed = true;
  } else {
    std::cout << "axioms: ok (" << pf.size() << " critical values)\n";
  }

  if (g.vertex_count() > cap) {
    std::cout << "weak-directedness: skipped (" << g.vertex_count() << " vertices above the cap of " << cap << ")\n";
  } else {
    try {
      const SubobjectPoset sp = subobject_poset(f.final_object(), spec, cap);
      if (is_weakly_directed(sp.order)) {
        std::cout << "weak-directedness: ok (" << sp.subobjects.size() << " subobjects)\n";
      } else {
        std::cout << "weak-directedness: FAIL subobject poset is not weakly directed\n";
        failed = true;
      }
    } catch (const CapExceeded& e) {
      std::cout << "weak-directedness: skipped (" << e.what() << ")\n";
    }
  }

  try {
    const Diagram d = extract_diagram(pf);
    const auto points = off_critical_points(pf.criticals());
    std::string mismatch;
    for (std::size_t a = 0; a < points.size() && mismatch.empty(); ++a) {
      for (std::size_t b = a; b < points.size(); ++b) {
        const int expected = pf.value(points[a], points[b]);
        const int got = evaluate(d, points[a], points[b]);
        if (expected != got) {
          mismatch = "p(" + format_number(points[a]) + "," + format_number(points[b]) + ")=" +
                     std::to_string(expected) + " but the diagram gives " + std::to_string(got);
          break;
        }
      }
    }
    if (mismatch.empty()) {
      std::cout << "reconstruction: ok\n";
    } else {
      std::cout << "reconstruction: FAIL " << mismatch << "\n";
      failed = true;
    }
  } catch (const AxiomError& e) {
    std::cout << "reconstruction: FAIL " << e.what() << "\n";
    failed = true;
  }
  return failed ? kVerify : kOk;
}

std::string describe_components(const WeightedGraph& g, const std::vector<SimpleGraph>& comps) {
  std::string out;
  for (const SimpleGraph& c : comps) {
    out += "vertices:";
    for (VertexId v : c.vertices()) out += " " + g.name(v);
    out += " | edges:";
    for (const Edge& e : c.edges()) out += " " + g.name(e.u) + "-" + g.name(e.v);
    out += "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized persistence diagrams of weighted graphs and G-quivers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  app.footer(
      "Exit codes: 0 ok, 1 parse error, 2 configuration error, 3 verification failure.\n"
      "NETPERS_THREADS sets the number of worker threads for grid tabulation.");

  std::string output;
  std::string format = "text";

  // diagram
  auto* diagram = app.add_subcommand("diagram", "Persistence diagram of a weighted graph");
  PropertyFlags diagram_property;
  diagram_property.attach(diagram);
  std::string diagram_input;
  double perturb_eps = 0;
  std::optional<std::uint64_t> perturb_seed;
  diagram->add_option("graph", diagram_input, "edge-list file")->required();
  diagram->add_option("--format", format, "text | json | svg")->capture_default_str();
  diagram->add_option("--output,-o", output, "write to a file instead of stdout");
  diagram->add_option("--perturb", perturb_eps, "shift every weight uniformly within [-eps, eps]");
  diagram->add_option("--seed", perturb_seed, "seed for --perturb (required with it)");

  // distance
  auto* distance = app.add_subcommand("distance", "Bottleneck distance between two diagram files");
  std::string dist_a;
  std::string dist_b;
  distance->add_option("first", dist_a, "diagram file")->required();
  distance->add_option("second", dist_b, "diagram file")->required();

  // pseudodistance
  auto* pseudo = app.add_subcommand("pseudodistance", "Natural pseudodistance between two weighted graphs");
  std::string pseudo_a;
  std::string pseudo_b;
  std::size_t pseudo_cap = 12;
  pseudo->add_option("first", pseudo_a, "edge-list file")->required();
  pseudo->add_option("second", pseudo_b, "edge-list file")->required();
  pseudo->add_option("--cap", pseudo_cap, "largest vertex count searched exhaustively")->capture_default_str();

  // components
  auto* components = app.add_subcommand("components", "Maximal connected subgraphs of a sublevel");
  PropertyFlags components_property;
  components_property.attach(components);
  std::string components_input;
  double components_at = kInfinity;
  components->add_option("graph", components_input, "edge-list file")->required();
  components->add_option("--at", components_at, "sublevel value (default: whole graph)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check axioms, weak directedness and reconstruction");
  PropertyFlags verify_property;
  verify_property.attach(verify);
  std::string verify_input;
  std::size_t verify_cap = 10;
  std::string corrupt;
  verify->add_option("graph", verify_input, "edge-list file")->required();
  verify->add_option("--cap", verify_cap, "largest vertex count for the subobject poset check")->capture_default_str();
  verify->add_option("--debug-corrupt", corrupt, "overwrite table cell 'i j value' before checking")
      ->group("");

  // quiver-diagram
  auto* quiver = app.add_subcommand("quiver-diagram", "Persistence diagram of a G-quiver's orbit filtration");
  std::string quiver_input;
  std::string quiver_class = "isomorphisms";
  int quiver_k = 2;
  quiver->add_option("quiver", quiver_input, "G-quiver file")->required();
  quiver->add_option("--class", quiver_class,
                     "isomorphisms | orbit-deletion | fixed-vertex-deletion (fewer than k deleted units)")
      ->capture_default_str();
  quiver->add_option("--k", quiver_k, "deletion bound of the class")->capture_default_str();
  quiver->add_option("--format", format, "text | json | svg")->capture_default_str();
  quiver->add_option("--output,-o", output, "write to a file instead of stdout");

  // plot
  auto* plot = app.add_subcommand("plot", "SVG plot of a diagram file");
  std::string plot_input;
  plot->add_option("diagram", plot_input, "diagram file")->required();
  plot->add_option("--output,-o", output, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    const EngineOptions options = engine_options();
    if (*diagram) {
      const PropertySpec spec = diagram_property.spec();
      const std::string bytes = read_file(diagram_input);
      WeightedGraph g = parse_weighted_graph(bytes);
      if (diagram->count("--perturb") > 0) {
        if (!perturb_seed) throw ConfigError("--perturb needs an explicit --seed");
        g = perturb(g, perturb_eps, *perturb_seed);
      }
      const Diagram d = persistence_diagram(Filtration(g), spec, options);
      emit(render(d, format, spec.describe(), bytes), output);
    } else if (*distance) {
      const Diagram a = parse_diagram(read_file(dist_a));
      const Diagram b = parse_diagram(read_file(dist_b));
      std::cout << format_distance(bottleneck_distance(a, b)) << "\n";
    } else if (*pseudo) {
      const WeightedGraph a = parse_weighted_graph(read_file(pseudo_a));
      const WeightedGraph b = parse_weighted_graph(read_file(pseudo_b));
      std::cout << format_distance(natural_pseudodistance(a, b, pseudo_cap)) << "\n";
    } else if (*components) {
      const PropertySpec spec = components_property.spec();
      const WeightedGraph g = parse_weighted_graph(read_file(components_input));
      const SimpleGraph level = sublevel(g, components_at);
      std::cout << describe_components(g, property_components(level, spec));
    } else if (*verify) {
      const PropertySpec spec = verify_property.spec();
      const WeightedGraph g = parse_weighted_graph(read_file(verify_input));
      return run_verify(g, spec, verify_cap, corrupt, options);
    } else if (*quiver) {
      const auto kind = parse_equivariant_kind(quiver_class);
      if (!kind) throw ConfigError("unknown equivariant class '" + quiver_class + "'");
      const EquivariantClass cls{*kind, quiver_k};
      cls.validate();
      const std::string bytes = read_file(quiver_input);
      const GQuiver gq = parse_gquiver(bytes);
      const Diagram d = gq_persistence(gq, cls, options);
      emit(render(d, format, cls.describe(), bytes), output);
    } else if (*plot) {
      const std::string bytes = read_file(plot_input);
      emit(cli::render_svg(parse_diagram(bytes), plot_input), output);
    }
  } catch (const netpers::ParseError& e) {
    std::cerr << "netpers: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigError& e) {
    std::cerr << "netpers: " << e.what() << "\n";
    return kConfig;
  } catch (const InvalidInput& e) {
    std::cerr << "netpers: invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const CapExceeded& e) {
    std::cerr << "netpers: " << e.what() << "\n";
    return kConfig;
  } catch (const AxiomError& e) {
    std::cerr << "netpers: " << e.what() << "\n";
    return kVerify;
  }
  return kOk;
}
