#include "netpers/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "netpers/error.hpp"

namespace netpers {

Edge make_edge(VertexId a, VertexId b) {
  if (a == b) throw InvalidInput("self-loop on vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

SimpleGraph::SimpleGraph(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw InvalidInput("duplicate vertex");
  for (Edge& e : edges_) {
    e = make_edge(e.u, e.v);
    if (!has_vertex(e.u) || !has_vertex(e.v)) throw InvalidInput("edge endpoint is not a vertex");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InvalidInput("duplicate edge");
}

bool SimpleGraph::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool SimpleGraph::has_edge(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

SimpleGraph SimpleGraph::induced(std::span<const VertexId> keep) const {
  std::vector<VertexId> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexId> vs;
  std::set_intersection(vertices_.begin(), vertices_.end(), sorted.begin(), sorted.end(),
                        std::back_inserter(vs));
  std::vector<Edge> es;
  for (const Edge& e : edges_) {
    if (std::binary_search(vs.begin(), vs.end(), e.u) && std::binary_search(vs.begin(), vs.end(), e.v))
      es.push_back(e);
  }
  return SimpleGraph(Trusted{}, std::move(vs), std::move(es));
}

SimpleGraph SimpleGraph::without_vertices(std::span<const VertexId> drop) const {
  std::vector<VertexId> sorted(drop.begin(), drop.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexId> keep;
  std::set_difference(vertices_.begin(), vertices_.end(), sorted.begin(), sorted.end(),
                      std::back_inserter(keep));
  return induced(keep);
}

SimpleGraph SimpleGraph::without_edges(std::span<const Edge> drop) const {
  std::vector<Edge> sorted(drop.begin(), drop.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Edge> es;
  std::set_difference(edges_.begin(), edges_.end(), sorted.begin(), sorted.end(), std::back_inserter(es));
  return SimpleGraph(Trusted{}, vertices_, std::move(es));
}

bool SimpleGraph::is_subgraph_of(const SimpleGraph& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end()) &&
         std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
}

SimpleGraph intersection(const SimpleGraph& a, const SimpleGraph& b) {
  std::vector<VertexId> vs;
  std::set_intersection(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(), b.vertices_.end(),
                        std::back_inserter(vs));
  std::vector<Edge> es;
  std::set_intersection(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(),
                        std::back_inserter(es));
  return SimpleGraph(SimpleGraph::Trusted{}, std::move(vs), std::move(es));
}

SimpleGraph graph_union(const SimpleGraph& a, const SimpleGraph& b) {
  std::vector<VertexId> vs;
  std::set_union(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(), b.vertices_.end(),
                 std::back_inserter(vs));
  std::vector<Edge> es;
  std::set_union(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(), std::back_inserter(es));
  return SimpleGraph(SimpleGraph::Trusted{}, std::move(vs), std::move(es));
}

LocalGraph::LocalGraph(const SimpleGraph& g)
    : ids_(g.vertices().begin(), g.vertices().end()),
      adj_(ids_.size()),
      matrix_(ids_.size() * ids_.size(), 0),
      edge_count_(g.edge_count()) {
  const std::size_t n = ids_.size();
  for (const Edge& e : g.edges()) {
    const std::size_t a = local(e.u);
    const std::size_t b = local(e.v);
    adj_[a].push_back(static_cast<std::uint32_t>(b));
    adj_[b].push_back(static_cast<std::uint32_t>(a));
    matrix_[a * n + b] = 1;
    matrix_[b * n + a] = 1;
  }
}

std::size_t LocalGraph::local(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  return static_cast<std::size_t>(it - ids_.begin());
}

// ---------------------------------------------------------------------------
// WeightedGraph

namespace {

void require_finite(double w, const std::string& what) {
  if (!std::isfinite(w)) throw InvalidInput("non-finite weight on " + what);
}

}  // namespace

WeightedGraph::Builder& WeightedGraph::Builder::add_edge(std::string_view a, std::string_view b,
                                                         double weight) {
  edges_.push_back({std::string(a), std::string(b), weight});
  return *this;
}

WeightedGraph::Builder& WeightedGraph::Builder::set_vertex_weight(std::string_view v, double weight) {
  vertex_weights_.emplace_back(std::string(v), weight);
  return *this;
}

WeightedGraph WeightedGraph::Builder::build() const {
  WeightedGraph g;
  std::set<std::string, std::less<>> names;
  for (const auto& e : edges_) {
    if (e.a == e.b) throw InvalidInput("self-loop on vertex '" + e.a + "'");
    require_finite(e.weight, "edge " + e.a + "-" + e.b);
    names.insert(e.a);
    names.insert(e.b);
  }
  for (const auto& [v, w] : vertex_weights_) {
    require_finite(w, "vertex " + v);
    names.insert(v);
  }
  g.names_.assign(names.begin(), names.end());
  for (VertexId i = 0; i < g.names_.size(); ++i) g.index_.emplace(g.names_[i], i);

  std::vector<std::pair<Edge, double>> weighted;
  weighted.reserve(edges_.size());
  for (const auto& e : edges_) weighted.emplace_back(make_edge(g.index_.at(e.a), g.index_.at(e.b)), e.weight);
  std::sort(weighted.begin(), weighted.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < weighted.size(); ++i) {
    if (weighted[i].first == weighted[i - 1].first) {
      throw InvalidInput("duplicate edge " + g.names_[weighted[i].first.u] + "-" +
                         g.names_[weighted[i].first.v]);
    }
  }

  std::vector<std::optional<double>> explicit_weights(g.names_.size());
  for (const auto& [v, w] : vertex_weights_) {
    auto& slot = explicit_weights[g.index_.at(v)];
    if (slot) throw InvalidInput("duplicate weight for vertex '" + v + "'");
    slot = w;
  }

  std::vector<VertexId> vertices(g.names_.size());
  for (VertexId i = 0; i < vertices.size(); ++i) vertices[i] = i;
  std::vector<Edge> edges;
  std::vector<double> edge_weights;
  for (const auto& [e, w] : weighted) {
    edges.push_back(e);
    edge_weights.push_back(w);
  }
  g.graph_ = SimpleGraph(std::move(vertices), std::move(edges));
  g.edge_weight_ = std::move(edge_weights);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> derived(g.names_.size(), inf);
  for (std::size_t i = 0; i < g.edge_weight_.size(); ++i) {
    const Edge e = g.graph_.edges()[i];
    derived[e.u] = std::min(derived[e.u], g.edge_weight_[i]);
    derived[e.v] = std::min(derived[e.v], g.edge_weight_[i]);
  }
  g.vertex_weight_.resize(g.names_.size());
  g.explicit_.assign(g.names_.size(), 0);
  for (VertexId v = 0; v < g.names_.size(); ++v) {
    if (explicit_weights[v]) {
      if (*explicit_weights[v] > derived[v]) {
        throw InvalidInput("explicit weight of vertex '" + g.names_[v] +
                           "' exceeds the minimum of its incident edge weights");
      }
      g.vertex_weight_[v] = *explicit_weights[v];
      g.explicit_[v] = 1;
    } else if (derived[v] == inf) {
      throw InvalidInput("isolated vertex '" + g.names_[v] + "' needs an explicit weight");
    } else {
      g.vertex_weight_[v] = derived[v];
    }
  }
  return g;
}

std::optional<VertexId> WeightedGraph::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WeightedGraph::edge_weight(Edge e) const {
  auto edges = graph_.edges();
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) throw InvalidInput("edge not in graph");
  return edge_weight_[static_cast<std::size_t>(it - edges.begin())];
}

WeightedGraph WeightedGraph::reweighted(std::vector<double> edge_weights,
                                        const std::vector<std::optional<double>>& explicit_vertex_weights) const {
  if (edge_weights.size() != edge_weight_.size()) throw InvalidInput("edge weight count mismatch");
  WeightedGraph g = *this;
  g.edge_weight_ = std::move(edge_weights);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> derived(names_.size(), inf);
  for (std::size_t i = 0; i < g.edge_weight_.size(); ++i) {
    require_finite(g.edge_weight_[i], "edge");
    const Edge e = graph_.edges()[i];
    derived[e.u] = std::min(derived[e.u], g.edge_weight_[i]);
    derived[e.v] = std::min(derived[e.v], g.edge_weight_[i]);
  }
  for (VertexId v = 0; v < names_.size(); ++v) {
    if (explicit_[v]) {
      double w = vertex_weight_[v];
      if (v < explicit_vertex_weights.size() && explicit_vertex_weights[v]) w = *explicit_vertex_weights[v];
      require_finite(w, "vertex " + names_[v]);
      g.vertex_weight_[v] = std::min(w, derived[v]);
    } else {
      g.vertex_weight_[v] = derived[v];
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

WeightedGraph parse_weighted_graph(std::istream& in) {
  WeightedGraph::Builder builder;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::pair<std::string, std::string>> seen_edges;
  std::set<std::string> seen_vertices;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const auto tokens = split_ws(std::string_view(line).substr(0, hash));
    if (tokens.empty()) continue;
    double w = 0;
    if (tokens[0] == "e") {
      if (tokens.size() != 4 || !parse_double(tokens[3], w))
        throw ParseError(line_no, "expected 'e <u> <v> <weight>'");
      std::string a(tokens[1]), b(tokens[2]);
      if (a == b) throw ParseError(line_no, "self-loop on vertex '" + a + "'");
      if (!std::isfinite(w)) throw ParseError(line_no, "non-finite weight");
      if (!seen_edges.emplace(std::min(a, b), std::max(a, b)).second)
        throw ParseError(line_no, "duplicate edge " + a + "-" + b);
      builder.add_edge(a, b, w);
    } else if (tokens[0] == "v") {
      if (tokens.size() != 3 || !parse_double(tokens[2], w))
        throw ParseError(line_no, "expected 'v <u> <weight>'");
      if (!std::isfinite(w)) throw ParseError(line_no, "non-finite weight");
      if (!seen_vertices.emplace(tokens[1]).second)
        throw ParseError(line_no, "duplicate weight for vertex '" + std::string(tokens[1]) + "'");
      builder.set_vertex_weight(tokens[1], w);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tokens[0]) + "'");
    }
  }
  try {
    return builder.build();
  } catch (const InvalidInput& e) {
    throw ParseError(0, e.what());
  }
}

WeightedGraph parse_weighted_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_weighted_graph(in);
}

WeightedGraph read_weighted_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_weighted_graph(in);
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

std::string serialize_weighted_graph(const WeightedGraph& g) {
  std::string out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.has_explicit_weight(v)) out += "v " + g.name(v) + " " + format_number(g.vertex_weight(v)) + "\n";
  }
  const auto edges = g.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out += "e " + g.name(edges[i].u) + " " + g.name(edges[i].v) + " " + format_number(g.edge_weight_at(i)) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sublevels

SimpleGraph sublevel(const WeightedGraph& g, double x) {
  std::vector<VertexId> vs;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex_weight(v) <= x) vs.push_back(v);
  }
  std::vector<Edge> es;
  const auto edges = g.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (g.edge_weight_at(i) <= x) es.push_back(edges[i]);
  }
  return SimpleGraph(std::move(vs), std::move(es));
}

std::vector<double> critical_values(const WeightedGraph& g) {
  std::vector<double> values(g.vertex_weights().begin(), g.vertex_weights().end());
  values.insert(values.end(), g.edge_weights().begin(), g.edge_weights().end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

Filtration::Filtration(WeightedGraph source) : source_(std::move(source)), criticals_(critical_values(source_)) {
  auto index_of = [this](double w) {
    return static_cast<std::size_t>(std::lower_bound(criticals_.begin(), criticals_.end(), w) - criticals_.begin());
  };
  vertex_birth_.resize(source_.vertex_count());
  for (VertexId v = 0; v < source_.vertex_count(); ++v) vertex_birth_[v] = index_of(source_.vertex_weight(v));
  edge_birth_.resize(source_.edge_count());
  for (std::size_t i = 0; i < source_.edge_count(); ++i) edge_birth_[i] = index_of(source_.edge_weight_at(i));
}

SimpleGraph Filtration::level(std::size_t index) const { return sublevel(criticals_.at(index)); }

}  // namespace netpers
