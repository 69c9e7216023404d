#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "netpers/graph.hpp"
#include "netpers/persistence.hpp"

namespace netpers {

// One pair of a matching between expanded diagrams. An empty side stands for
// the diagonal. Multiplicities of the stored points are 1.
struct MatchedPair {
  std::optional<Cornerpoint> first;
  std::optional<Cornerpoint> second;
};

struct BottleneckMatching {
  double distance = 0;
  std::vector<MatchedPair> pairs;
};

// L∞ distance between points; half-lines only compare births.
double linf_cost(const Cornerpoint& a, const Cornerpoint& b);
// Cost of sending a finite point to the diagonal: (death - birth) / 2.
double diagonal_cost(const Cornerpoint& a);

// Infinite when the diagrams differ in their number of half-lines.
double bottleneck_distance(const Diagram& d1, const Diagram& d2);

// Distance plus an optimal matching. Half-lines are paired in birth order;
// finite points by thresholded bipartite matching over the candidate costs.
BottleneckMatching bottleneck_matching(const Diagram& d1, const Diagram& d2);

// min over graph isomorphisms φ: F1(∞) → F2(∞) of max |w1(x) - w2(φ(x))| over
// vertices and edges; infinite if the final graphs are not isomorphic. Throws
// CapExceeded if either graph has more than `vertex_cap` vertices.
double natural_pseudodistance(const WeightedGraph& g1, const WeightedGraph& g2, std::size_t vertex_cap = 12);
double natural_pseudodistance(const Filtration& f1, const Filtration& f2, std::size_t vertex_cap = 12);

// Every edge weight and every explicit vertex weight shifted by an independent
// uniform offset in [-epsilon, epsilon]; derived vertex weights recomputed.
// Deterministic for a given seed.
WeightedGraph perturb(const WeightedGraph& g, double epsilon, std::uint64_t seed);

}  // namespace netpers
