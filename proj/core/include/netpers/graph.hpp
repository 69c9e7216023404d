#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netpers {

using VertexId = std::uint32_t;

// Undirected edge with `u < v`.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Orders the endpoints. Throws InvalidInput on a self-loop.
Edge make_edge(VertexId a, VertexId b);

// Finite simple graph over an ambient id space. Vertex and edge lists are kept
// sorted and duplicate free, so equality is structural.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  // Validates: no self-loops, no duplicates, edge endpoints are vertices.
  SimpleGraph(std::vector<VertexId> vertices, std::vector<Edge> edges);

  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return vertices_.empty(); }

  bool has_vertex(VertexId v) const;
  bool has_edge(Edge e) const;

  // Subgraph induced on `keep ∩ V`.
  SimpleGraph induced(std::span<const VertexId> keep) const;
  // Induced subgraph on `V \ drop`.
  SimpleGraph without_vertices(std::span<const VertexId> drop) const;
  // Same vertices, `drop` edges removed.
  SimpleGraph without_edges(std::span<const Edge> drop) const;

  bool is_subgraph_of(const SimpleGraph& other) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  struct Trusted {};
  SimpleGraph(Trusted, std::vector<VertexId> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {}
  friend SimpleGraph intersection(const SimpleGraph&, const SimpleGraph&);
  friend SimpleGraph graph_union(const SimpleGraph&, const SimpleGraph&);

  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
};

SimpleGraph intersection(const SimpleGraph& a, const SimpleGraph& b);
SimpleGraph graph_union(const SimpleGraph& a, const SimpleGraph& b);

// Dense local view of a SimpleGraph used by the algorithms: vertex `i` of the
// view is `graph.vertices()[i]`.
class LocalGraph {
 public:
  explicit LocalGraph(const SimpleGraph& g);

  std::size_t size() const { return ids_.size(); }
  VertexId id(std::size_t local) const { return ids_[local]; }
  std::size_t local(VertexId id) const;
  const std::vector<std::uint32_t>& neighbors(std::size_t local) const { return adj_[local]; }
  bool adjacent(std::size_t a, std::size_t b) const { return matrix_[a * ids_.size() + b] != 0; }
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::vector<VertexId> ids_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<char> matrix_;
  std::size_t edge_count_ = 0;
};

// Simple graph with real weights on edges and vertices. Vertex ids are assigned
// in lexicographic order of the vertex names, edges are sorted by id pair.
class WeightedGraph {
 public:
  class Builder {
   public:
    Builder& add_edge(std::string_view a, std::string_view b, double weight);
    Builder& set_vertex_weight(std::string_view v, double weight);
    // Throws InvalidInput on self-loops, duplicate edges or vertex lines,
    // non-finite weights, isolated vertices without a weight, or an explicit
    // vertex weight above the minimum of its incident edges.
    WeightedGraph build() const;

   private:
    struct PendingEdge {
      std::string a, b;
      double weight;
    };
    std::vector<PendingEdge> edges_;
    std::vector<std::pair<std::string, double>> vertex_weights_;
  };

  WeightedGraph() = default;

  const SimpleGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return graph_.edge_count(); }

  const std::string& name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find(std::string_view name) const;

  double vertex_weight(VertexId v) const { return vertex_weight_.at(v); }
  bool has_explicit_weight(VertexId v) const { return explicit_.at(v) != 0; }
  // Weight of `graph().edges()[index]`.
  double edge_weight_at(std::size_t index) const { return edge_weight_.at(index); }
  double edge_weight(Edge e) const;

  std::span<const double> edge_weights() const { return edge_weight_; }
  std::span<const double> vertex_weights() const { return vertex_weight_; }

  // Same topology and names; edge weights replaced (parallel to graph().edges()),
  // explicit vertex weights replaced where given, derived weights recomputed.
  // Explicit weights above the new derived value are clamped to it.
  WeightedGraph reweighted(std::vector<double> edge_weights,
                           const std::vector<std::optional<double>>& explicit_vertex_weights) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::map<std::string, VertexId, std::less<>> index_;
  SimpleGraph graph_;
  std::vector<double> edge_weight_;
  std::vector<double> vertex_weight_;
  std::vector<char> explicit_;
};

// Parses the edge-list format (`e u v w`, `v u w`, `#` comments).
WeightedGraph parse_weighted_graph(std::istream& in);
WeightedGraph parse_weighted_graph(std::string_view text);
WeightedGraph read_weighted_graph(const std::string& path);

// Canonical text: explicit vertex lines sorted by name, then edges by id pair.
std::string serialize_weighted_graph(const WeightedGraph& g);

// Shortest text that parses back to exactly `x`.
std::string format_number(double x);

SimpleGraph sublevel(const WeightedGraph& g, double x);
std::vector<double> critical_values(const WeightedGraph& g);

// Sublevel filtration of a weighted graph, tabulated on its critical values.
class Filtration {
 public:
  explicit Filtration(WeightedGraph source);

  const WeightedGraph& source() const { return source_; }
  std::span<const double> criticals() const { return criticals_; }

  SimpleGraph sublevel(double x) const { return netpers::sublevel(source_, x); }
  SimpleGraph level(std::size_t index) const;
  // F(∞), equal to the last level.
  const SimpleGraph& final_object() const { return source_.graph(); }

  // Index of the first critical at which a vertex / edge appears.
  std::size_t vertex_birth(VertexId v) const { return vertex_birth_.at(v); }
  std::size_t edge_birth(std::size_t edge_index) const { return edge_birth_.at(edge_index); }

 private:
  WeightedGraph source_;
  std::vector<double> criticals_;
  std::vector<std::size_t> vertex_birth_;
  std::vector<std::size_t> edge_birth_;
};

}  // namespace netpers
