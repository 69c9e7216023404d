#include <doctest.h>

#include <cmath>

#include "netpers/error.hpp"
#include "netpers/graph_persistence.hpp"
#include "netpers/metrics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace netpers;

TEST_CASE("bottleneck examples") {
  const Diagram d({{1, 2, 1}});
  CHECK(bottleneck_distance(d, d) == 0);
  CHECK(bottleneck_distance(d, Diagram()) == doctest::Approx(0.5));
  CHECK(bottleneck_distance(d, Diagram({{1, 2.5, 1}})) == doctest::Approx(0.5));
  CHECK(bottleneck_distance(Diagram({{0, kInfinity, 1}}), Diagram()) == kInfinity);
  CHECK(bottleneck_distance(Diagram({{0, kInfinity, 1}}), Diagram({{0.25, kInfinity, 1}})) == doctest::Approx(0.25));
  CHECK(bottleneck_distance(Diagram(), Diagram()) == 0);
}

TEST_CASE("the reported matching realises the distance") {
  testing::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    const Diagram a = testing::random_diagram(rng, 6, 2, true);
    const Diagram b = testing::random_diagram(rng, 6, 2, true);
    const auto m = bottleneck_matching(a, b);
    if (m.distance == kInfinity) continue;
    double worst = 0;
    std::size_t first = 0;
    std::size_t second = 0;
    for (const auto& pair : m.pairs) {
      first += pair.first.has_value();
      second += pair.second.has_value();
      if (pair.first && pair.second) {
        worst = std::max(worst, linf_cost(*pair.first, *pair.second));
      } else {
        worst = std::max(worst, diagonal_cost(pair.first ? *pair.first : *pair.second));
      }
    }
    CHECK(first == static_cast<std::size_t>(a.finite_count() + a.infinite_count()));
    CHECK(second == static_cast<std::size_t>(b.finite_count() + b.infinite_count()));
    CHECK(worst == m.distance);
  }
}

TEST_CASE("property: bottleneck agrees with exhaustive matching and is a metric") {
  testing::Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const bool grid = t % 2 == 0;
    const Diagram a = testing::random_diagram(rng, 6, 2, grid);
    const Diagram b = testing::random_diagram(rng, 6, 2, grid);
    const Diagram c = testing::random_diagram(rng, 6, 2, grid);
    const double ab = bottleneck_distance(a, b);
    CHECK(ab == oracle::bottleneck(a, b));
    CHECK(bottleneck_distance(b, a) == ab);
    CHECK(bottleneck_distance(a, a) == 0);
    const double ac = bottleneck_distance(a, c);
    const double cb = bottleneck_distance(c, b);
    if (ac != kInfinity && cb != kInfinity) CHECK(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("pseudodistance examples") {
  const auto tri = parse_weighted_graph("e a b 1\ne b c 2\ne a c 3\n");
  CHECK(natural_pseudodistance(tri, tri) == 0);
  const auto shifted = parse_weighted_graph("e a b 1\ne b c 2\ne a c 3.3\n");
  CHECK(natural_pseudodistance(tri, shifted) == doctest::Approx(0.3));
  const auto relabelled = parse_weighted_graph("e x y 2\ne y z 1\ne x z 3\n");
  CHECK(natural_pseudodistance(tri, relabelled) == 0);
  const auto path = parse_weighted_graph("e a b 1\ne b c 2\n");
  CHECK(natural_pseudodistance(tri, path) == kInfinity);
  CHECK(natural_pseudodistance(path, parse_weighted_graph("e a b 1\nv c 1\n")) == kInfinity);
  testing::Rng rng(40);
  const auto big = testing::random_graph(rng, {.min_vertices = 13, .max_vertices = 13});
  CHECK_THROWS_AS(natural_pseudodistance(big, big), CapExceeded);
  CHECK(natural_pseudodistance(big, big, 13) == 0);
}

TEST_CASE("property: pseudodistance agrees with the permutation oracle") {
  testing::Rng rng(43);
  for (int t = 0; t < 150; ++t) {
    const auto g1 = testing::random_graph(rng, {.max_vertices = 7, .max_criticals = 3});
    const auto g2 = t % 3 == 0 ? testing::random_graph(rng, {.max_vertices = 7, .max_criticals = 3})
                               : testing::relabelled_copy(rng, g1, t % 3 == 1 ? 0.0 : 0.5);
    CAPTURE(serialize_weighted_graph(g1));
    CAPTURE(serialize_weighted_graph(g2));
    CHECK(natural_pseudodistance(g1, g2) == oracle::pseudodistance(g1, g2));
  }
}

TEST_CASE("perturb is deterministic and stays within epsilon") {
  testing::Rng rng(44);
  for (int t = 0; t < 60; ++t) {
    const auto g = testing::random_graph(rng);
    CHECK(perturb(g, 0, 7) == g);
    for (double eps : {0.01, 0.1, 0.5}) {
      const auto p = perturb(g, eps, 99);
      CHECK(p == perturb(g, eps, 99));
      CHECK(p.graph() == g.graph());
      for (std::size_t e = 0; e < g.edge_count(); ++e) CHECK(std::abs(p.edge_weight_at(e) - g.edge_weight_at(e)) <= eps);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(std::abs(p.vertex_weight(v) - g.vertex_weight(v)) <= eps);
        CHECK(p.has_explicit_weight(v) == g.has_explicit_weight(v));
      }
      CHECK(natural_pseudodistance(g, p, 8) <= eps);
    }
  }
  CHECK_THROWS_AS(perturb(testing::random_graph(rng), -1, 1), InvalidInput);
}

TEST_CASE("property: stability of the diagrams under perturbation") {
  testing::Rng rng(45);
  for (int t = 0; t < 60; ++t) {
    const auto g = testing::random_graph(rng, {.max_vertices = 8});
    const Filtration f(g);
    for (double eps : {0.01, 0.1, 0.5}) {
      const Filtration fe(perturb(g, eps, static_cast<std::uint64_t>(t)));
      const double delta = natural_pseudodistance(f, fe);
      for (const auto& spec : {PropertySpec::components(), PropertySpec::clique(3), PropertySpec::vertex_block(2),
                               PropertySpec::edge_block(2)}) {
        CHECK(bottleneck_distance(persistence_diagram(f, spec), persistence_diagram(fe, spec)) <= delta + 1e-9);
      }
    }
  }
}
