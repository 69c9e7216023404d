#include "netpers/connectivity.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "netpers/error.hpp"
#include "netpers/union_find.hpp"

namespace netpers {

void PropertySpec::validate() const {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (kind == PropertyKind::clique && k < 2) throw InvalidInput("clique communities need k >= 2");
}

std::string_view kind_name(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::components:
      return "components";
    case PropertyKind::clique:
      return "clique";
    case PropertyKind::vertex_block:
      return "vertex-block";
    case PropertyKind::edge_block:
      return "edge-block";
  }
  return "?";
}

std::optional<PropertyKind> parse_kind(std::string_view name) {
  for (PropertyKind kind : {PropertyKind::components, PropertyKind::clique, PropertyKind::vertex_block,
                            PropertyKind::edge_block}) {
    if (name == kind_name(kind)) return kind;
  }
  return std::nullopt;
}

std::string PropertySpec::describe() const {
  std::string out(kind_name(kind));
  if (kind != PropertyKind::components) out += " k=" + std::to_string(k);
  if (kind == PropertyKind::edge_block && edge_deletion == EdgeDeletion::unrestricted) out += " unrestricted";
  return out;
}

// ---------------------------------------------------------------------------
// Basic connectivity

namespace {

std::vector<std::vector<std::uint32_t>> local_components(const LocalGraph& lg) {
  const std::size_t n = lg.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp{static_cast<std::uint32_t>(s)};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::uint32_t w : lg.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexId> to_ids(const LocalGraph& lg, const std::vector<std::uint32_t>& local) {
  std::vector<VertexId> ids;
  ids.reserve(local.size());
  for (std::uint32_t v : local) ids.push_back(lg.id(v));
  return ids;
}

bool is_complete(const SimpleGraph& g) {
  const std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

void sort_components(std::vector<SimpleGraph>& comps) {
  std::sort(comps.begin(), comps.end(), [](const SimpleGraph& a, const SimpleGraph& b) {
    if (!std::equal(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end())) {
      return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(), b.vertices().begin(),
                                          b.vertices().end());
    }
    return std::lexicographical_compare(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
  });
}

// Drops duplicates and vertex sets contained in another one.
std::vector<std::vector<VertexId>> maximal_sets(std::vector<std::vector<VertexId>> sets) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<VertexId>> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
      if (i != j && sets[j].size() > sets[i].size() &&
          std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end())) {
        dominated = true;
      }
    }
    if (!dominated) out.push_back(sets[i]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<VertexId>> connected_vertex_sets(const SimpleGraph& g) {
  LocalGraph lg(g);
  std::vector<std::vector<VertexId>> out;
  for (const auto& comp : local_components(lg)) out.push_back(to_ids(lg, comp));
  return out;
}

bool is_connected(const SimpleGraph& g) {
  if (g.empty()) return false;
  LocalGraph lg(g);
  return local_components(lg).size() == 1;
}

// ---------------------------------------------------------------------------
// Maximal cliques

namespace {

using Bits = boost::dynamic_bitset<>;

void bron_kerbosch(const std::vector<Bits>& nbr, std::vector<std::uint32_t>& r, Bits p, Bits x,
                   std::vector<std::vector<std::uint32_t>>& out) {
  if (p.none() && x.none()) {
    out.push_back(r);
    return;
  }
  // Tomita pivot: maximise |P ∩ N(u)| over u in P ∪ X.
  const Bits px = p | x;
  std::size_t pivot = px.find_first();
  std::size_t best = (p & nbr[pivot]).count();
  for (std::size_t u = px.find_next(pivot); u != Bits::npos; u = px.find_next(u)) {
    const std::size_t c = (p & nbr[u]).count();
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  const Bits candidates = p - nbr[pivot];
  for (std::size_t v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
    r.push_back(static_cast<std::uint32_t>(v));
    bron_kerbosch(nbr, r, p & nbr[v], x & nbr[v], out);
    r.pop_back();
    p.reset(v);
    x.set(v);
  }
}

}  // namespace

std::vector<std::vector<VertexId>> maximal_cliques(const SimpleGraph& g) {
  LocalGraph lg(g);
  const std::size_t n = lg.size();
  std::vector<Bits> nbr(n, Bits(n));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint32_t w : lg.neighbors(v)) nbr[v].set(w);
  }
  std::vector<std::vector<std::uint32_t>> local;
  std::vector<std::uint32_t> r;
  Bits all(n);
  all.set();
  if (n > 0) bron_kerbosch(nbr, r, all, Bits(n), local);
  std::vector<std::vector<VertexId>> out;
  for (auto& c : local) {
    std::sort(c.begin(), c.end());
    out.push_back(to_ids(lg, c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Vertex separators via max-flow on the split-vertex network

namespace {

class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(std::size_t nodes) : head_(nodes, -1) {}

  void add_arc(std::size_t from, std::size_t to, int capacity) {
    arcs_.push_back({to, capacity, head_[from]});
    head_[from] = static_cast<int>(arcs_.size() - 1);
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size() - 1);
  }

  // Augments along BFS paths until the flow reaches `limit` or no path remains.
  int max_flow(std::size_t source, std::size_t sink, int limit) {
    int flow = 0;
    std::vector<int> via(head_.size());
    while (flow < limit) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<std::size_t> queue{source};
      via[source] = -2;
      while (!queue.empty() && via[sink] == -1) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (int a = head_[u]; a != -1; a = arcs_[a].next) {
          if (arcs_[a].capacity > 0 && via[arcs_[a].to] == -1) {
            via[arcs_[a].to] = a;
            queue.push_back(arcs_[a].to);
          }
        }
      }
      if (via[sink] == -1) break;
      int push = std::numeric_limits<int>::max();
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].capacity);
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].capacity -= push;
        arcs_[via[v] ^ 1].capacity += push;
      }
      flow += push;
    }
    return flow;
  }

  std::vector<char> reachable(std::size_t source) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<std::size_t> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (int a = head_[u]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].capacity > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    int capacity;
    int next;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

// Minimum s-t vertex separator of size < limit, s and t non-adjacent.
std::optional<std::vector<std::uint32_t>> local_separator(const LocalGraph& lg, std::size_t s, std::size_t t,
                                                          int limit) {
  const std::size_t n = lg.size();
  const int big = static_cast<int>(n) + 1;
  UnitFlowNetwork net(2 * n);
  for (std::size_t v = 0; v < n; ++v) {
    net.add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
    for (std::uint32_t w : lg.neighbors(v)) net.add_arc(2 * v + 1, 2 * w, big);
  }
  const int flow = net.max_flow(2 * s + 1, 2 * t, limit);
  if (flow >= limit) return std::nullopt;
  const auto seen = net.reachable(2 * s + 1);
  std::vector<std::uint32_t> cut;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != s && v != t && seen[2 * v] && !seen[2 * v + 1]) cut.push_back(static_cast<std::uint32_t>(v));
  }
  return cut;
}

}  // namespace

std::optional<std::vector<VertexId>> find_vertex_separator(const SimpleGraph& g, std::size_t limit) {
  if (limit == 0) return std::nullopt;
  LocalGraph lg(g);
  const std::size_t n = lg.size();
  // A separator S with |S| < limit misses one of any `limit` vertices; that
  // vertex and some vertex on another side of S form a non-adjacent pair.
  const std::size_t sources = std::min(limit, n);
  for (std::size_t s = 0; s < sources; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s || lg.adjacent(s, t)) continue;
      if (auto cut = local_separator(lg, s, t, static_cast<int>(limit))) {
        std::vector<VertexId> ids;
        for (std::uint32_t v : *cut) ids.push_back(lg.id(v));
        return ids;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stoer–Wagner

EdgeCut min_edge_cut(const SimpleGraph& g) {
  LocalGraph lg(g);
  const std::size_t n = lg.size();
  if (n < 2) throw InvalidInput("minimum edge cut needs at least two vertices");

  std::vector<std::vector<std::size_t>> weight(n, std::vector<std::size_t>(n, 0));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint32_t w : lg.neighbors(v)) weight[v][w] = 1;
  }
  std::vector<std::vector<std::uint32_t>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = {static_cast<std::uint32_t>(v)};
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});

  EdgeCut best;
  best.weight = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> best_side;
  while (active.size() > 1) {
    std::vector<std::size_t> attach(n, 0);
    std::vector<char> added(n, 0);
    std::size_t prev = active[0];
    std::size_t last = active[0];
    for (std::size_t step = 0; step < active.size(); ++step) {
      std::size_t sel = n;
      for (std::size_t v : active) {
        if (!added[v] && (sel == n || attach[v] > attach[sel])) sel = v;
      }
      added[sel] = 1;
      if (step + 1 == active.size()) {
        if (attach[sel] < best.weight) {
          best.weight = attach[sel];
          best_side = members[sel];
        }
        // merge sel into prev
        for (std::size_t v : active) {
          weight[prev][v] += weight[sel][v];
          weight[v][prev] = weight[prev][v];
        }
        weight[prev][prev] = 0;
        members[prev].insert(members[prev].end(), members[sel].begin(), members[sel].end());
        active.erase(std::find(active.begin(), active.end(), sel));
        last = sel;
      } else {
        prev = sel;
        for (std::size_t v : active) {
          if (!added[v]) attach[v] += weight[sel][v];
        }
      }
    }
    (void)last;
  }
  std::sort(best_side.begin(), best_side.end());
  for (std::uint32_t v : best_side) best.side.push_back(lg.id(v));
  return best;
}

// ---------------------------------------------------------------------------
// Biconnected blocks

namespace {

struct BlockSearch {
  const LocalGraph& lg;
  std::vector<int> disc, low;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
  std::vector<std::vector<std::uint32_t>> blocks;
  int clock = 0;

  explicit BlockSearch(const LocalGraph& g) : lg(g), disc(g.size(), -1), low(g.size(), 0) {}

  void visit(std::uint32_t u, int parent) {
    disc[u] = low[u] = clock++;
    for (std::uint32_t w : lg.neighbors(u)) {
      if (disc[w] == -1) {
        stack.emplace_back(u, w);
        visit(w, static_cast<int>(u));
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) {
          std::vector<std::uint32_t> block;
          while (true) {
            auto [a, b] = stack.back();
            stack.pop_back();
            block.push_back(a);
            block.push_back(b);
            if (a == u && b == w) break;
          }
          std::sort(block.begin(), block.end());
          block.erase(std::unique(block.begin(), block.end()), block.end());
          blocks.push_back(std::move(block));
        }
      } else if (static_cast<int>(w) != parent && disc[w] < disc[u]) {
        stack.emplace_back(u, w);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<VertexId>> biconnected_blocks(const SimpleGraph& g) {
  LocalGraph lg(g);
  BlockSearch search(lg);
  for (std::uint32_t v = 0; v < lg.size(); ++v) {
    if (search.disc[v] == -1) search.visit(v, -1);
  }
  std::vector<std::vector<VertexId>> out;
  for (const auto& b : search.blocks) out.push_back(to_ids(lg, b));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Property predicates and components

namespace {

bool vertex_block_connected(const SimpleGraph& g, int k) {
  const auto n = g.vertex_count();
  if (n < static_cast<std::size_t>(k) || !is_connected(g)) return false;
  if (is_complete(g)) return true;
  return !find_vertex_separator(g, static_cast<std::size_t>(k)).has_value();
}

bool edge_block_connected(const SimpleGraph& g, const PropertySpec& spec) {
  if (!is_connected(g)) return false;
  if (spec.edge_deletion == EdgeDeletion::unrestricted && g.edge_count() < static_cast<std::size_t>(spec.k))
    return false;
  if (g.vertex_count() == 1) return true;
  return min_edge_cut(g).weight >= static_cast<std::size_t>(spec.k);
}

// Recursive separation: every k-connected induced subgraph of `sub` lies in
// one piece of `sub - S` plus S, for any separator S of size < k.
void collect_vertex_blocks(const SimpleGraph& sub, int k, std::vector<std::vector<VertexId>>& out) {
  if (sub.vertex_count() < static_cast<std::size_t>(k)) return;
  const auto pieces = connected_vertex_sets(sub);
  if (pieces.size() > 1) {
    for (const auto& piece : pieces) collect_vertex_blocks(sub.induced(piece), k, out);
    return;
  }
  if (is_complete(sub)) {
    out.emplace_back(sub.vertices().begin(), sub.vertices().end());
    return;
  }
  const auto separator = find_vertex_separator(sub, static_cast<std::size_t>(k));
  if (!separator) {
    out.emplace_back(sub.vertices().begin(), sub.vertices().end());
    return;
  }
  for (auto piece : connected_vertex_sets(sub.without_vertices(*separator))) {
    piece.insert(piece.end(), separator->begin(), separator->end());
    collect_vertex_blocks(sub.induced(piece), k, out);
  }
}

// Edge cuts below k separate every k-edge-connected subgraph to one side.
void collect_edge_blocks(const SimpleGraph& sub, int k, std::vector<std::vector<VertexId>>& out) {
  if (sub.empty()) return;
  if (sub.vertex_count() == 1) {
    out.emplace_back(sub.vertices().begin(), sub.vertices().end());
    return;
  }
  const auto pieces = connected_vertex_sets(sub);
  if (pieces.size() > 1) {
    for (const auto& piece : pieces) collect_edge_blocks(sub.induced(piece), k, out);
    return;
  }
  const EdgeCut cut = min_edge_cut(sub);
  if (cut.weight >= static_cast<std::size_t>(k)) {
    out.emplace_back(sub.vertices().begin(), sub.vertices().end());
    return;
  }
  collect_edge_blocks(sub.induced(cut.side), k, out);
  collect_edge_blocks(sub.without_vertices(cut.side), k, out);
}

// Clique percolation on maximal cliques: two maximal cliques of size >= k
// sharing at least k-1 vertices belong to the same community.
std::vector<SimpleGraph> clique_communities(const SimpleGraph& g, int k) {
  std::vector<std::vector<VertexId>> cliques;
  for (auto& c : maximal_cliques(g)) {
    if (c.size() >= static_cast<std::size_t>(k)) cliques.push_back(std::move(c));
  }
  UnionFind uf(cliques.size());
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    for (std::size_t j = i + 1; j < cliques.size(); ++j) {
      std::size_t shared = 0;
      auto a = cliques[i].begin();
      auto b = cliques[j].begin();
      while (a != cliques[i].end() && b != cliques[j].end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++shared, ++a, ++b;
        }
      }
      if (shared + 1 >= static_cast<std::size_t>(k)) uf.unite(i, j);
    }
  }
  std::map<std::size_t, std::pair<std::set<VertexId>, std::set<Edge>>> groups;
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    auto& [vs, es] = groups[uf.find(i)];
    for (std::size_t a = 0; a < cliques[i].size(); ++a) {
      vs.insert(cliques[i][a]);
      for (std::size_t b = a + 1; b < cliques[i].size(); ++b) es.insert(Edge{cliques[i][a], cliques[i][b]});
    }
  }
  std::vector<SimpleGraph> out;
  for (auto& [root, ve] : groups) {
    out.emplace_back(std::vector<VertexId>(ve.first.begin(), ve.first.end()),
                     std::vector<Edge>(ve.second.begin(), ve.second.end()));
  }
  return out;
}

std::vector<SimpleGraph> induced_all(const SimpleGraph& g, const std::vector<std::vector<VertexId>>& sets) {
  std::vector<SimpleGraph> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(g.induced(s));
  return out;
}

}  // namespace

bool is_property_connected(const SimpleGraph& g, const PropertySpec& spec) {
  spec.validate();
  if (g.empty()) return false;
  switch (spec.kind) {
    case PropertyKind::components:
      return is_connected(g);
    case PropertyKind::clique: {
      const auto communities = clique_communities(g, spec.k);
      return communities.size() == 1 && communities.front() == g;
    }
    case PropertyKind::vertex_block:
      return vertex_block_connected(g, spec.k);
    case PropertyKind::edge_block:
      return edge_block_connected(g, spec);
  }
  return false;
}

std::vector<SimpleGraph> property_components(const SimpleGraph& g, const PropertySpec& spec) {
  spec.validate();
  std::vector<SimpleGraph> out;
  switch (spec.kind) {
    case PropertyKind::components:
      out = induced_all(g, connected_vertex_sets(g));
      break;
    case PropertyKind::clique:
      out = clique_communities(g, spec.k);
      break;
    case PropertyKind::vertex_block: {
      if (spec.k == 1) {
        out = induced_all(g, connected_vertex_sets(g));
      } else if (spec.k == 2) {
        out = induced_all(g, biconnected_blocks(g));
      } else {
        std::vector<std::vector<VertexId>> candidates;
        collect_vertex_blocks(g, spec.k, candidates);
        out = induced_all(g, maximal_sets(std::move(candidates)));
      }
      break;
    }
    case PropertyKind::edge_block: {
      std::vector<std::vector<VertexId>> blocks;
      collect_edge_blocks(g, spec.k, blocks);
      for (auto& b : induced_all(g, blocks)) {
        if (spec.edge_deletion == EdgeDeletion::spanning || b.edge_count() >= static_cast<std::size_t>(spec.k))
          out.push_back(std::move(b));
      }
      break;
    }
  }
  sort_components(out);
  return out;
}

bool contains_property_connected(const SimpleGraph& g, const PropertySpec& spec) {
  spec.validate();
  if (g.empty()) return false;
  switch (spec.kind) {
    case PropertyKind::components:
      return true;
    case PropertyKind::clique:
      if (spec.k == 2) return g.edge_count() > 0;
      if (g.edge_count() < static_cast<std::size_t>(spec.k * (spec.k - 1) / 2)) return false;
      for (const auto& c : maximal_cliques(g)) {
        if (c.size() >= static_cast<std::size_t>(spec.k)) return true;
      }
      return false;
    case PropertyKind::vertex_block:
      if (spec.k == 1) return true;
      if (spec.k == 2) return g.edge_count() > 0;
      return !property_components(g, spec).empty();
    case PropertyKind::edge_block:
      if (spec.edge_deletion == EdgeDeletion::spanning) return true;
      return !property_components(g, spec).empty();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Subobject posets

namespace {

struct MaskedSubgraph {
  Bits vertices;
  Bits edges;
  SimpleGraph graph;
};

}  // namespace

SubobjectPoset subobject_poset(const SimpleGraph& g, const PropertySpec& spec, std::size_t size_cap,
                               std::size_t element_cap) {
  spec.validate();
  const std::size_t n = g.vertex_count();
  if (n > size_cap) {
    throw CapExceeded("subobject poset: " + std::to_string(n) + " vertices exceeds the cap of " +
                      std::to_string(size_cap));
  }
  if (n > 24) throw CapExceeded("subobject poset enumeration is limited to 24 vertices");

  LocalGraph lg(g);
  const auto edges = g.edges();
  auto edge_index = [&](Edge e) {
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  auto masked = [&](SimpleGraph sub) {
    MaskedSubgraph m{Bits(n), Bits(edges.size()), std::move(sub)};
    for (VertexId v : m.graph.vertices()) m.vertices.set(lg.local(v));
    for (const Edge& e : m.graph.edges()) m.edges.set(edge_index(e));
    return m;
  };
  auto check_cap = [&](std::size_t count) {
    if (count > element_cap) throw CapExceeded("subobject poset exceeds " + std::to_string(element_cap) + " elements");
  };

  std::vector<MaskedSubgraph> elements;
  if (spec.kind == PropertyKind::clique) {
    // k-cliques of g.
    std::set<std::vector<VertexId>> kcliques;
    const auto k = static_cast<std::size_t>(spec.k);
    for (const auto& c : maximal_cliques(g)) {
      if (c.size() < k) continue;
      std::vector<char> pick(c.size(), 0);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
      do {
        std::vector<VertexId> q;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (pick[i]) q.push_back(c[i]);
        }
        kcliques.insert(std::move(q));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::vector<std::vector<VertexId>> cliques(kcliques.begin(), kcliques.end());
    std::vector<Bits> clique_edges;
    for (const auto& q : cliques) {
      Bits b(edges.size());
      for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) b.set(edge_index(Edge{q[i], q[j]}));
      }
      clique_edges.push_back(std::move(b));
    }
    auto adjacent = [&](std::size_t a, std::size_t b) {
      std::size_t shared = 0;
      for (VertexId v : cliques[a]) shared += std::binary_search(cliques[b].begin(), cliques[b].end(), v);
      return shared + 1 == k;
    };
    // Grow unions of chained k-cliques, deduplicated by edge set.
    std::set<Bits> seen;
    std::deque<Bits> queue;
    for (const auto& b : clique_edges) {
      if (seen.insert(b).second) queue.push_back(b);
    }
    while (!queue.empty()) {
      Bits current = queue.front();
      queue.pop_front();
      check_cap(seen.size());
      std::vector<std::size_t> inside;
      for (std::size_t q = 0; q < cliques.size(); ++q) {
        if (clique_edges[q].is_subset_of(current)) inside.push_back(q);
      }
      for (std::size_t q = 0; q < cliques.size(); ++q) {
        if (clique_edges[q].is_subset_of(current)) continue;
        bool touches = false;
        for (std::size_t in : inside) {
          if (adjacent(q, in)) {
            touches = true;
            break;
          }
        }
        if (!touches) continue;
        Bits grown = current | clique_edges[q];
        if (seen.count(grown)) continue;
        std::vector<Edge> es;
        for (std::size_t e = grown.find_first(); e != Bits::npos; e = grown.find_next(e)) es.push_back(edges[e]);
        std::set<VertexId> vs;
        for (const Edge& e : es) vs.insert({e.u, e.v});
        SimpleGraph candidate(std::vector<VertexId>(vs.begin(), vs.end()), es);
        if (!is_property_connected(candidate, spec)) continue;
        seen.insert(grown);
        queue.push_back(std::move(grown));
      }
    }
    for (const Bits& b : seen) {
      std::vector<Edge> es;
      for (std::size_t e = b.find_first(); e != Bits::npos; e = b.find_next(e)) es.push_back(edges[e]);
      std::set<VertexId> vs;
      for (const Edge& e : es) vs.insert({e.u, e.v});
      elements.push_back(masked(SimpleGraph(std::vector<VertexId>(vs.begin(), vs.end()), es)));
    }
  } else {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<VertexId> keep;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) keep.push_back(lg.id(i));
      }
      SimpleGraph sub = g.induced(keep);
      if (is_property_connected(sub, spec)) {
        elements.push_back(masked(std::move(sub)));
        check_cap(elements.size());
      }
    }
  }

  std::sort(elements.begin(), elements.end(), [](const MaskedSubgraph& a, const MaskedSubgraph& b) {
    if (a.graph.vertex_count() != b.graph.vertex_count()) return a.graph.vertex_count() < b.graph.vertex_count();
    if (a.graph.edge_count() != b.graph.edge_count()) return a.graph.edge_count() < b.graph.edge_count();
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    return a.edges < b.edges;
  });

  SubobjectPoset result;
  result.order = Poset::from_order(elements.size(), [&](std::size_t a, std::size_t b) {
    return elements[a].vertices.is_subset_of(elements[b].vertices) && elements[a].edges.is_subset_of(elements[b].edges);
  });
  for (auto& e : elements) result.subobjects.push_back(std::move(e.graph));
  return result;
}

}  // namespace netpers
