#include "netpers/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "netpers/error.hpp"

namespace netpers {

double linf_cost(const Cornerpoint& a, const Cornerpoint& b) {
  if (a.at_infinity() != b.at_infinity()) return kInfinity;
  if (a.at_infinity()) return std::abs(a.birth - b.birth);
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const Cornerpoint& a) { return (a.death - a.birth) / 2; }

namespace {

// Kuhn's augmenting-path matching on an explicit bipartite graph.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right) : adj_(left), match_right_(right, npos) {}

  void add(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

  std::size_t solve() {
    std::size_t size = 0;
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      visited_.assign(match_right_.size(), 0);
      if (augment(l)) ++size;
    }
    return size;
  }

  std::size_t partner_of_right(std::size_t r) const { return match_right_[r]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  bool augment(std::size_t l) {
    for (std::size_t r : adj_[l]) {
      if (visited_[r]) continue;
      visited_[r] = 1;
      if (match_right_[r] == npos || augment(match_right_[r])) {
        match_right_[r] = l;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_right_;
  std::vector<char> visited_;
};

// Left side: points of `a` then one diagonal slot per point of `b`.
// Right side: points of `b` then one diagonal slot per point of `a`.
BipartiteMatcher threshold_graph(const std::vector<Cornerpoint>& a, const std::vector<Cornerpoint>& b, double t) {
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  BipartiteMatcher m(p + q, p + q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      if (linf_cost(a[i], b[j]) <= t) m.add(i, j);
    }
    if (diagonal_cost(a[i]) <= t) m.add(i, q + i);
  }
  for (std::size_t j = 0; j < q; ++j) {
    if (diagonal_cost(b[j]) <= t) m.add(p + j, j);
    for (std::size_t i = 0; i < p; ++i) m.add(p + j, q + i);
  }
  return m;
}

}  // namespace

BottleneckMatching bottleneck_matching(const Diagram& d1, const Diagram& d2) {
  BottleneckMatching result;
  auto inf1 = d1.expanded_infinite_births();
  auto inf2 = d2.expanded_infinite_births();
  if (inf1.size() != inf2.size()) {
    result.distance = kInfinity;
    return result;
  }
  std::sort(inf1.begin(), inf1.end());
  std::sort(inf2.begin(), inf2.end());
  double infinite_cost = 0;
  for (std::size_t i = 0; i < inf1.size(); ++i) {
    infinite_cost = std::max(infinite_cost, std::abs(inf1[i] - inf2[i]));
    result.pairs.push_back({Cornerpoint{inf1[i], kInfinity, 1}, Cornerpoint{inf2[i], kInfinity, 1}});
  }

  const auto a = d1.expanded_finite();
  const auto b = d2.expanded_finite();
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  std::vector<double> candidates{0.0};
  for (const auto& x : a) {
    candidates.push_back(diagonal_cost(x));
    for (const auto& y : b) candidates.push_back(linf_cost(x, y));
  }
  for (const auto& y : b) candidates.push_back(diagonal_cost(y));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Feasibility is monotone in the threshold; the largest candidate is always feasible.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (threshold_graph(a, b, candidates[mid]).solve() == p + q) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double finite_cost = candidates[lo];
  BipartiteMatcher matcher = threshold_graph(a, b, finite_cost);
  matcher.solve();
  for (std::size_t j = 0; j < q; ++j) {
    const std::size_t l = matcher.partner_of_right(j);
    if (l < p) {
      result.pairs.push_back({a[l], b[j]});
    } else {
      result.pairs.push_back({std::nullopt, b[j]});
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (matcher.partner_of_right(q + i) == i) result.pairs.push_back({a[i], std::nullopt});
  }
  result.distance = std::max(infinite_cost, finite_cost);
  return result;
}

double bottleneck_distance(const Diagram& d1, const Diagram& d2) { return bottleneck_matching(d1, d2).distance; }

// ---------------------------------------------------------------------------
// Natural pseudodistance by branch and bound over isomorphisms

namespace {

struct WeightedAdjacency {
  std::size_t n = 0;
  std::vector<double> vertex;
  std::vector<double> edge;  // n*n, NaN when absent
  std::vector<std::size_t> degree;

  explicit WeightedAdjacency(const WeightedGraph& g)
      : n(g.vertex_count()), vertex(g.vertex_weights().begin(), g.vertex_weights().end()),
        edge(n * n, std::nan("")), degree(n, 0) {
    const auto edges = g.graph().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edge[edges[i].u * n + edges[i].v] = g.edge_weight_at(i);
      edge[edges[i].v * n + edges[i].u] = g.edge_weight_at(i);
      ++degree[edges[i].u];
      ++degree[edges[i].v];
    }
  }

  bool adjacent(std::size_t a, std::size_t b) const { return !std::isnan(edge[a * n + b]); }
  double weight(std::size_t a, std::size_t b) const { return edge[a * n + b]; }
};

// Swapping two twins is a weight-preserving automorphism.
bool twins(const WeightedAdjacency& g, std::size_t a, std::size_t b) {
  if (g.vertex[a] != g.vertex[b]) return false;
  for (std::size_t z = 0; z < g.n; ++z) {
    if (z == a || z == b) continue;
    if (g.adjacent(a, z) != g.adjacent(b, z)) return false;
    if (g.adjacent(a, z) && g.weight(a, z) != g.weight(b, z)) return false;
  }
  return true;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const WeightedAdjacency& g1, const WeightedAdjacency& g2) : g1_(g1), g2_(g2) {
    const std::size_t n = g1.n;
    // Visit order: start at a highest-degree vertex, then repeatedly take the
    // vertex with most already-ordered neighbours.
    std::vector<char> placed(n, 0);
    std::vector<std::size_t> links(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (pick == n || links[v] > links[pick] || (links[v] == links[pick] && g1.degree[v] > g1.degree[pick]))
          pick = v;
      }
      placed[pick] = 1;
      order_.push_back(pick);
      for (std::size_t w = 0; w < n; ++w) {
        if (g1.adjacent(pick, w)) ++links[w];
      }
    }
    // Previous twin of each vertex in visit order, for symmetry breaking.
    twin_before_.assign(n, n);
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v : order_) {
      bool joined = false;
      for (auto& cls : classes) {
        if (std::all_of(cls.begin(), cls.end(), [&](std::size_t u) { return twins(g1, u, v); })) {
          twin_before_[v] = cls.back();
          cls.push_back(v);
          joined = true;
          break;
        }
      }
      if (!joined) classes.push_back({v});
    }
    image_.assign(n, n);
    used_.assign(n, 0);
  }

  double run() {
    search(0, 0.0);
    return best_;
  }

 private:
  void search(std::size_t pos, double cost) {
    if (pos == order_.size()) {
      best_ = cost;
      return;
    }
    const std::size_t u = order_[pos];
    struct Candidate {
      std::size_t v;
      double cost;
    };
    std::vector<Candidate> candidates;
    const std::size_t floor = twin_before_[u] < g1_.n ? image_[twin_before_[u]] : g2_.n;
    for (std::size_t v = 0; v < g2_.n; ++v) {
      if (used_[v] || g1_.degree[u] != g2_.degree[v]) continue;
      if (floor < g2_.n && v <= floor) continue;
      double c = std::max(cost, std::abs(g1_.vertex[u] - g2_.vertex[v]));
      if (c >= best_) continue;
      bool ok = true;
      for (std::size_t p = 0; p < pos && ok; ++p) {
        const std::size_t a = order_[p];
        const std::size_t b = image_[a];
        if (g1_.adjacent(u, a) != g2_.adjacent(v, b)) {
          ok = false;
        } else if (g1_.adjacent(u, a)) {
          c = std::max(c, std::abs(g1_.weight(u, a) - g2_.weight(v, b)));
          ok = c < best_;
        }
      }
      if (ok) candidates.push_back({v, c});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& x, const Candidate& y) { return x.cost < y.cost; });
    for (const Candidate& cand : candidates) {
      if (cand.cost >= best_) break;
      image_[u] = cand.v;
      used_[cand.v] = 1;
      search(pos + 1, cand.cost);
      used_[cand.v] = 0;
      image_[u] = g1_.n;
      if (best_ == 0) return;
    }
  }

  const WeightedAdjacency& g1_;
  const WeightedAdjacency& g2_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> twin_before_;
  std::vector<std::size_t> image_;
  std::vector<char> used_;
  double best_ = kInfinity;
};

}  // namespace

double natural_pseudodistance(const WeightedGraph& g1, const WeightedGraph& g2, std::size_t vertex_cap) {
  if (g1.vertex_count() > vertex_cap || g2.vertex_count() > vertex_cap) {
    throw CapExceeded("natural pseudodistance: graphs above the " + std::to_string(vertex_cap) + "-vertex cap");
  }
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return kInfinity;
  WeightedAdjacency a(g1);
  WeightedAdjacency b(g2);
  auto da = a.degree;
  auto db = b.degree;
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return kInfinity;
  if (a.n == 0) return 0;
  return IsomorphismSearch(a, b).run();
}

double natural_pseudodistance(const Filtration& f1, const Filtration& f2, std::size_t vertex_cap) {
  return natural_pseudodistance(f1.source(), f2.source(), vertex_cap);
}

WeightedGraph perturb(const WeightedGraph& g, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0)) throw InvalidInput("perturbation size must be non-negative");
  if (epsilon == 0) return g;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-epsilon, epsilon);
  std::vector<double> edges(g.edge_weights().begin(), g.edge_weights().end());
  for (double& w : edges) w += offset(rng);
  std::vector<std::optional<double>> vertices(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.has_explicit_weight(v)) vertices[v] = g.vertex_weight(v) + offset(rng);
  }
  return g.reweighted(std::move(edges), vertices);
}

}  // namespace netpers
