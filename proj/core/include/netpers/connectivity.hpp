#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netpers/graph.hpp"
#include "netpers/poset.hpp"

namespace netpers {

enum class PropertyKind { components, clique, vertex_block, edge_block };

// How edge deletions may treat vertices. `spanning` keeps the vertex set (the
// default); `unrestricted` only bounds the number of lost edges, so a subgraph
// with fewer edges than k (in particular a lone vertex) is never connected.
enum class EdgeDeletion { spanning, unrestricted };

struct PropertySpec {
  PropertyKind kind = PropertyKind::components;
  int k = 1;
  EdgeDeletion edge_deletion = EdgeDeletion::spanning;

  static PropertySpec components() { return {PropertyKind::components, 1}; }
  static PropertySpec clique(int k) { return {PropertyKind::clique, k}; }
  static PropertySpec vertex_block(int k) { return {PropertyKind::vertex_block, k}; }
  static PropertySpec edge_block(int k, EdgeDeletion mode = EdgeDeletion::spanning) {
    return {PropertyKind::edge_block, k, mode};
  }

  // Throws InvalidInput unless k >= 1 (k >= 2 for cliques).
  void validate() const;
  // "components", "clique k=3", "vertex-block k=2", "edge-block k=2", ...
  std::string describe() const;

  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

std::string_view kind_name(PropertyKind kind);
std::optional<PropertyKind> parse_kind(std::string_view name);

// Connectedness under `spec`. The empty graph is never connected.
bool is_property_connected(const SimpleGraph& g, const PropertySpec& spec);

// Maximal connected subgraphs under `spec`, sorted by (smallest vertex, vertex list).
std::vector<SimpleGraph> property_components(const SimpleGraph& g, const PropertySpec& spec);

// Whether `g` has any connected subgraph under `spec`.
bool contains_property_connected(const SimpleGraph& g, const PropertySpec& spec);

struct SubobjectPoset {
  std::vector<SimpleGraph> subobjects;
  Poset order;  // inclusion
};

// All connected subgraphs (induced ones for components and blocks, unions of
// adjacent k-cliques for cliques) ordered by inclusion. Throws CapExceeded
// when `g` has more than `size_cap` vertices or the element count exceeds
// `element_cap`.
SubobjectPoset subobject_poset(const SimpleGraph& g, const PropertySpec& spec, std::size_t size_cap,
                               std::size_t element_cap = 200000);

// ---------------------------------------------------------------------------
// Algorithms behind the providers, exposed for testing.

// Connected components as sorted vertex lists.
std::vector<std::vector<VertexId>> connected_vertex_sets(const SimpleGraph& g);
bool is_connected(const SimpleGraph& g);

// Maximal cliques (Bron–Kerbosch with Tomita pivoting), each sorted.
std::vector<std::vector<VertexId>> maximal_cliques(const SimpleGraph& g);

// A vertex set of size < limit whose removal disconnects g, if one exists.
// Requires g connected and not complete; uses unit-capacity max-flow on the
// split-vertex network.
std::optional<std::vector<VertexId>> find_vertex_separator(const SimpleGraph& g, std::size_t limit);

// Global minimum edge cut (Stoer–Wagner, unit weights). Requires at least two
// vertices. Returns the cut size and one side of the cut.
struct EdgeCut {
  std::size_t weight = 0;
  std::vector<VertexId> side;
};
EdgeCut min_edge_cut(const SimpleGraph& g);

// Biconnected blocks (bridges included, isolated vertices excluded) as
// sorted vertex lists, by Hopcroft–Tarjan lowpoint search.
std::vector<std::vector<VertexId>> biconnected_blocks(const SimpleGraph& g);

}  // namespace netpers
