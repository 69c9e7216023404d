#include "netpers/graph_persistence.hpp"

#include <limits>

#include "netpers/union_find.hpp"

namespace netpers {

GraphComponentProvider::GraphComponentProvider(PropertySpec spec) : spec_(spec) { spec_.validate(); }

namespace {

// p(i, j) = number of components of level j that contain a vertex born by i,
// i.e. components whose oldest vertex is born at or before i.
PersistenceFunction components_fast_path(const Filtration& f) {
  const auto criticals = f.criticals();
  const std::size_t m = criticals.size();
  PersistenceFunction pf(std::vector<double>(criticals.begin(), criticals.end()));
  const WeightedGraph& g = f.source();
  const std::size_t n = g.vertex_count();

  std::vector<std::vector<VertexId>> vertices_at(m);
  for (VertexId v = 0; v < n; ++v) vertices_at[f.vertex_birth(v)].push_back(v);
  std::vector<std::vector<std::size_t>> edges_at(m);
  for (std::size_t e = 0; e < g.edge_count(); ++e) edges_at[f.edge_birth(e)].push_back(e);

  UnionFind uf(n);
  std::vector<char> present(n, 0);
  std::vector<std::size_t> oldest(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t j = 0; j < m; ++j) {
    for (VertexId v : vertices_at[j]) present[v] = 1;
    for (std::size_t e : edges_at[j]) {
      const Edge edge = g.graph().edges()[e];
      uf.unite(edge.u, edge.v);
    }
    std::fill(oldest.begin(), oldest.end(), std::numeric_limits<std::size_t>::max());
    for (VertexId v = 0; v < n; ++v) {
      if (!present[v]) continue;
      const std::size_t root = uf.find(v);
      oldest[root] = std::min(oldest[root], f.vertex_birth(v));
    }
    std::vector<int> born(j + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
      if (present[v] && uf.find(v) == v) ++born[oldest[v]];
    }
    int running = 0;
    for (std::size_t i = 0; i <= j; ++i) {
      running += born[i];
      pf.set(i, j, running);
    }
  }
  for (std::size_t i = 0; i < m; ++i) pf.set(i, m, pf.at(i, m - 1));
  return pf;
}

}  // namespace

PersistenceFunction persistence_function(const Filtration& f, const PropertySpec& spec, EngineOptions options) {
  spec.validate();
  if (spec.kind == PropertyKind::components && options.fast_path) return components_fast_path(f);
  std::vector<SimpleGraph> levels;
  levels.reserve(f.criticals().size());
  for (std::size_t i = 0; i < f.criticals().size(); ++i) levels.push_back(f.level(i));
  return tabulate(std::vector<double>(f.criticals().begin(), f.criticals().end()), levels,
                  GraphComponentProvider(spec), options);
}

}  // namespace netpers
