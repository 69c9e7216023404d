#include <doctest.h>

#include <set>

#include "netpers/connectivity.hpp"
#include "netpers/error.hpp"
#include "netpers/poset.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace netpers;

namespace {

SimpleGraph complete(VertexId from, VertexId n) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  for (VertexId i = 0; i < n; ++i) {
    vs.push_back(from + i);
    for (VertexId j = i + 1; j < n; ++j) es.push_back(Edge{from + i, from + j});
  }
  return SimpleGraph(vs, es);
}

// Triangles {0,1,2} and {2,3,4} sharing vertex 2.
SimpleGraph bowtie() {
  return SimpleGraph({0, 1, 2, 3, 4}, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}, Edge{2, 3}, Edge{2, 4}, Edge{3, 4}});
}

const std::vector<PropertySpec>& all_kinds() {
  static const std::vector<PropertySpec> kinds{
      PropertySpec::components(),       PropertySpec::clique(2),       PropertySpec::clique(3),
      PropertySpec::vertex_block(2),    PropertySpec::vertex_block(3), PropertySpec::edge_block(2),
      PropertySpec::edge_block(3),      PropertySpec::vertex_block(1), PropertySpec::edge_block(1),
      PropertySpec::clique(4)};
  return kinds;
}

}  // namespace

TEST_CASE("the empty graph is never connected") {
  for (const auto& spec : all_kinds()) CHECK_FALSE(is_property_connected(SimpleGraph(), spec));
  CHECK_FALSE(is_property_connected(SimpleGraph(), PropertySpec::edge_block(2, EdgeDeletion::unrestricted)));
}

TEST_CASE("K4 is 3-clique connected") { CHECK(is_property_connected(complete(0, 4), PropertySpec::clique(3))); }

TEST_CASE("single vertex: not a 2-vertex block, but a 2-edge block") {
  const SimpleGraph v({0}, {});
  CHECK_FALSE(is_property_connected(v, PropertySpec::vertex_block(2)));
  CHECK(is_property_connected(v, PropertySpec::edge_block(2)));
  CHECK_FALSE(is_property_connected(v, PropertySpec::edge_block(2, EdgeDeletion::unrestricted)));
}

TEST_CASE("bowtie: cut vertex breaks 2-vertex connectivity, 2-edge connectivity survives") {
  CHECK_FALSE(is_property_connected(bowtie(), PropertySpec::vertex_block(2)));
  CHECK(is_property_connected(bowtie(), PropertySpec::edge_block(2)));
}

TEST_CASE("K4 + K3 has two 3-clique communities") {
  const SimpleGraph g = graph_union(complete(0, 4), complete(4, 3));
  const auto comms = property_components(g, PropertySpec::clique(3));
  REQUIRE(comms.size() == 2);
  CHECK(comms[0] == complete(0, 4));
  CHECK(comms[1] == complete(4, 3));
}

TEST_CASE("bowtie blocks") {
  const auto blocks = property_components(bowtie(), PropertySpec::vertex_block(2));
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == SimpleGraph({0, 1, 2}, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}}));
  CHECK(blocks[1] == SimpleGraph({2, 3, 4}, {Edge{2, 3}, Edge{2, 4}, Edge{3, 4}}));
  const auto edge_blocks = property_components(bowtie(), PropertySpec::edge_block(2));
  REQUIRE(edge_blocks.size() == 1);
  CHECK(edge_blocks[0] == bowtie());
}

TEST_CASE("a path is one component") {
  const SimpleGraph path({0, 1, 2}, {Edge{0, 1}, Edge{1, 2}});
  const auto comps = property_components(path, PropertySpec::components());
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == path);
}

TEST_CASE("overlapping 3-vertex blocks") {
  // Two copies of K4 glued along an edge: the union has a 2-vertex separator.
  SimpleGraph g = graph_union(complete(0, 4), SimpleGraph({2, 3, 4, 5}, {Edge{2, 3}, Edge{2, 4}, Edge{2, 5}, Edge{3, 4},
                                                                          Edge{3, 5}, Edge{4, 5}}));
  const auto blocks = property_components(g, PropertySpec::vertex_block(3));
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == complete(0, 4));
  CHECK(blocks == oracle::components(g, PropertySpec::vertex_block(3)));
}

TEST_CASE("property specs validate and describe themselves") {
  CHECK_THROWS_AS(PropertySpec::clique(1).validate(), InvalidInput);
  CHECK_THROWS_AS(PropertySpec::vertex_block(0).validate(), InvalidInput);
  CHECK(PropertySpec::clique(3).describe() == "clique k=3");
  CHECK(PropertySpec::edge_block(2, EdgeDeletion::unrestricted).describe() == "edge-block k=2 unrestricted");
  CHECK(parse_kind("vertex-block") == PropertyKind::vertex_block);
  CHECK_FALSE(parse_kind("blocks").has_value());
}

TEST_CASE("subobject poset examples") {
  const SimpleGraph triangle = complete(0, 3);
  const auto tri = subobject_poset(triangle, PropertySpec::components(), 8);
  CHECK(tri.subobjects.size() == 7);
  CHECK(maximal_elements(tri.order).size() == 1);

  const auto pair = subobject_poset(SimpleGraph({0, 1}, {}), PropertySpec::components(), 8);
  CHECK(pair.subobjects.size() == 2);
  CHECK(is_antichain(pair.order));

  const auto k4 = subobject_poset(complete(0, 4), PropertySpec::clique(3), 8);
  const auto top = maximal_elements(k4.order);
  REQUIRE(top.size() == 1);
  CHECK(k4.subobjects[top[0]] == complete(0, 4));

  CHECK_THROWS_AS(subobject_poset(complete(0, 9), PropertySpec::components(), 8), CapExceeded);
}

TEST_CASE("maximal cliques match brute force") {
  testing::Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 9, .density = 0.6}).graph();
    std::set<std::vector<VertexId>> expected;
    for (int k = 1; k <= 9; ++k) {
      for (const auto& c : oracle::k_cliques(g, k)) {
        bool maximal = true;
        for (VertexId v : g.vertices()) {
          if (std::binary_search(c.begin(), c.end(), v)) continue;
          bool all = true;
          for (VertexId u : c) all = all && g.has_edge(make_edge(u, v));
          maximal = maximal && !all;
        }
        if (maximal) expected.insert(c);
      }
    }
    const auto got = maximal_cliques(g);
    CHECK(std::set<std::vector<VertexId>>(got.begin(), got.end()) == expected);
  }
}

TEST_CASE("min edge cut and vertex separators match brute force") {
  testing::Rng rng(22);
  for (int t = 0; t < 150; ++t) {
    const auto g = testing::random_graph(rng, {.min_vertices = 2, .max_vertices = 8, .density = 0.55}).graph();
    if (!is_connected(g)) continue;
    const EdgeCut cut = min_edge_cut(g);
    std::size_t brute = g.edge_count();
    const std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << vs.size()); ++mask) {
      std::size_t crossing = 0;
      for (const Edge& e : g.edges()) {
        const auto iu = static_cast<std::size_t>(std::find(vs.begin(), vs.end(), e.u) - vs.begin());
        const auto iv = static_cast<std::size_t>(std::find(vs.begin(), vs.end(), e.v) - vs.begin());
        crossing += ((mask >> iu) & 1) != ((mask >> iv) & 1);
      }
      brute = std::min(brute, crossing);
    }
    CHECK(cut.weight == brute);
    std::size_t side_crossing = 0;
    for (const Edge& e : g.edges()) {
      const bool a = std::binary_search(cut.side.begin(), cut.side.end(), e.u);
      const bool b = std::binary_search(cut.side.begin(), cut.side.end(), e.v);
      side_crossing += a != b;
    }
    CHECK(side_crossing == cut.weight);

    for (std::size_t limit = 1; limit <= 3; ++limit) {
      if (g.edge_count() * 2 == g.vertex_count() * (g.vertex_count() - 1)) break;
      const auto sep = find_vertex_separator(g, limit);
      bool exists = false;
      oracle::for_small_subsets(vs.size(), limit, [&](const std::vector<std::size_t>& drop) {
        std::vector<VertexId> rest;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (std::find(drop.begin(), drop.end(), i) == drop.end()) rest.push_back(vs[i]);
        }
        if (!oracle::connected(rest, oracle::edges_within(g, rest))) exists = true;
      });
      CHECK(sep.has_value() == exists);
      if (sep) {
        CHECK(sep->size() < limit);
        CHECK_FALSE(is_connected(g.without_vertices(*sep)));
      }
    }
  }
}

TEST_CASE("property: predicates and components agree with the deletion oracles") {
  testing::Rng rng(23);
  for (int t = 0; t < 120; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 7, .density = 0.55}).graph();
    for (const auto& spec : all_kinds()) {
      CAPTURE(spec.describe());
      CHECK(property_components(g, spec) == oracle::components(g, spec));
      CHECK(is_property_connected(g, spec) == oracle::property_connected(g, spec));
      CHECK(contains_property_connected(g, spec) == !oracle::components(g, spec).empty());
    }
  }
}

TEST_CASE("property: unrestricted edge deletion agrees with its literal definition") {
  testing::Rng rng(24);
  for (int t = 0; t < 80; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 5, .density = 0.6}).graph();
    for (int k = 1; k <= 3; ++k) {
      const auto spec = PropertySpec::edge_block(k, EdgeDeletion::unrestricted);
      CAPTURE(k);
      CHECK(is_property_connected(g, spec) == oracle::property_connected(g, spec));
      CHECK(property_components(g, spec) == oracle::components(g, spec));
    }
  }
}

TEST_CASE("property: union of connected subgraphs sharing a connected subgraph is connected") {
  testing::Rng rng(25);
  for (int t = 0; t < 40; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 6, .density = 0.6}).graph();
    for (const auto& spec : all_kinds()) {
      const auto sp = subobject_poset(g, spec, 8);
      const auto& subs = sp.subobjects;
      for (std::size_t a = 0; a < subs.size(); ++a) {
        for (std::size_t b = a + 1; b < subs.size(); ++b) {
          const SimpleGraph common = intersection(subs[a], subs[b]);
          if (oracle::components(common, spec).empty()) continue;
          CHECK(is_property_connected(graph_union(subs[a], subs[b]), spec));
        }
      }
    }
  }
}

TEST_CASE("property: maximal elements of the subobject poset are the components") {
  testing::Rng rng(26);
  for (int t = 0; t < 60; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 7}).graph();
    for (const auto& spec : all_kinds()) {
      const auto sp = subobject_poset(g, spec, 8);
      CHECK(is_weakly_directed(sp.order));
      std::vector<SimpleGraph> tops;
      for (std::size_t i : maximal_elements(sp.order)) tops.push_back(sp.subobjects[i]);
      std::sort(tops.begin(), tops.end(), [](const SimpleGraph& a, const SimpleGraph& b) {
        const std::vector<VertexId> va(a.vertices().begin(), a.vertices().end());
        const std::vector<VertexId> vb(b.vertices().begin(), b.vertices().end());
        return va != vb ? va < vb
                        : std::vector<Edge>(a.edges().begin(), a.edges().end()) <
                              std::vector<Edge>(b.edges().begin(), b.edges().end());
      });
      CHECK(tops == property_components(g, spec));
      for (const SimpleGraph& s : sp.subobjects) CHECK(is_property_connected(s, spec));
    }
  }
}

TEST_CASE("property: adding edges on the same vertices keeps block connectivity") {
  testing::Rng rng(27);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 7}).graph();
    const std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
    const SimpleGraph full = complete(0, static_cast<VertexId>(vs.size()));
    for (const auto& spec : {PropertySpec::vertex_block(2), PropertySpec::vertex_block(3), PropertySpec::edge_block(2),
                             PropertySpec::edge_block(3)}) {
      if (is_property_connected(g, spec)) CHECK(is_property_connected(full.induced(vs), spec));
    }
  }
}

TEST_CASE("biconnected blocks ignore isolated vertices and keep bridges") {
  const SimpleGraph g({0, 1, 2, 3, 9}, {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}, Edge{2, 3}});
  const auto blocks = biconnected_blocks(g);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(blocks[1] == std::vector<VertexId>{2, 3});
}
