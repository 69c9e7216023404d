#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <exception>
#include <functional>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace netpers {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Cornerpoint {
  double birth = 0;
  double death = kInfinity;
  int multiplicity = 1;

  bool at_infinity() const { return death == kInfinity; }
  friend bool operator==(const Cornerpoint&, const Cornerpoint&) = default;
};

// Finite multiset of cornerpoints, one entry per (birth, death) with
// aggregated multiplicity, sorted by (birth, death).
class Diagram {
 public:
  Diagram() = default;
  // Aggregates duplicates. Throws InvalidInput if birth >= death, a coordinate
  // is not a number, or a multiplicity is below 1.
  explicit Diagram(std::vector<Cornerpoint> points);

  std::span<const Cornerpoint> points() const { return points_; }
  bool empty() const { return points_.empty(); }
  int infinite_count() const;
  int finite_count() const;
  // Multiplicities expanded, finite points only / half-lines only.
  std::vector<Cornerpoint> expanded_finite() const;
  std::vector<double> expanded_infinite_births() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::vector<Cornerpoint> points_;
};

// `birth death multiplicity` records, `inf` for an infinite death.
std::string format_diagram(const Diagram& d);
Diagram parse_diagram(std::istream& in);
Diagram parse_diagram(std::string_view text);

// Integer persistence function tabulated on critical values c_0 < ... < c_{m-1}.
// Entry (i, j) for i <= j is p(c_i, c_j); column m is p(c_i, ∞).
class PersistenceFunction {
 public:
  PersistenceFunction() = default;
  explicit PersistenceFunction(std::vector<double> criticals);

  std::span<const double> criticals() const { return criticals_; }
  std::size_t size() const { return criticals_.size(); }
  std::size_t infinity_column() const { return criticals_.size(); }

  int at(std::size_t i, std::size_t j) const { return table_[i * (size() + 1) + j]; }
  void set(std::size_t i, std::size_t j, int value) { table_[i * (size() + 1) + j] = value; }

  // p(u, v) for arbitrary reals with u <= v (v may be +inf); 0 for u below c_0.
  int value(double u, double v) const;

  friend bool operator==(const PersistenceFunction&, const PersistenceFunction&) = default;

 private:
  std::vector<double> criticals_;
  std::vector<int> table_;
};

struct AxiomViolation {
  std::string axiom;   // "nonnegativity", "monotone-first", "monotone-second", "superadditivity"
  std::string detail;  // the violated inequality with indices and values
};

// Checks, over all grid quadruples u1 <= u2 <= v1 <= v2 (v2 may be ∞):
//   p >= 0,  p(u1,v1) <= p(u2,v1),  p(u2,v2) <= p(u2,v1),
//   p(u2,v1) - p(u1,v1) >= p(u2,v2) - p(u1,v2).
// The ∞ column takes part as the largest second argument, and a virtual row of
// zeros stands for u below the first critical value.
std::optional<AxiomViolation> check_axioms(const PersistenceFunction& pf);

// Multiplicities by inclusion-exclusion on the critical grid. Throws
// AxiomError on a negative multiplicity.
Diagram extract_diagram(const PersistenceFunction& pf);

// Sum of multiplicities with birth < beta and death > gamma. Throws
// InvalidInput if beta > gamma or either coordinate is a discontinuity
// abscissa/ordinate of the diagram (a birth or finite death value).
int evaluate(const Diagram& d, double beta, double gamma);

// Generic tabulation. A provider maps an object to its maximal connected
// subobjects, decides whether an object contains any connected subobject, and
// restricts a component to a lower level.
template <class P, class Object>
concept ComponentProvider = requires(const P& provider, const Object& obj) {
  { provider.components(obj) } -> std::same_as<std::vector<Object>>;
  { provider.contains_connected(obj) } -> std::convertible_to<bool>;
  { provider.restrict(obj, obj) } -> std::same_as<Object>;
};

struct EngineOptions {
  unsigned threads = 1;
  // Lets callers force the generic grid for properties that have a fast path.
  bool fast_path = true;
};

// p(c_i, c_j) counts components C of level j whose restriction to level i
// contains a connected subobject. The survival test is monotone in i, so the
// first surviving row of each component is found by bisection.
template <class Object, class Provider>
  requires ComponentProvider<Provider, Object>
PersistenceFunction tabulate(std::vector<double> criticals, const std::vector<Object>& levels,
                             const Provider& provider, EngineOptions options = {}) {
  const std::size_t m = criticals.size();
  PersistenceFunction pf(std::move(criticals));
  if (m == 0) return pf;

  auto column = [&](std::size_t j) {
    std::vector<int> first_row_count(j + 1, 0);
    for (const Object& component : provider.components(levels[j])) {
      std::size_t lo = 0;
      std::size_t hi = j + 1;  // first surviving row lies in [lo, hi]; hi = none
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (provider.contains_connected(provider.restrict(component, levels[mid]))) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      if (lo <= j) ++first_row_count[lo];
    }
    int running = 0;
    for (std::size_t i = 0; i <= j; ++i) {
      running += first_row_count[i];
      pf.set(i, j, running);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(m)));
  if (workers == 1) {
    for (std::size_t j = 0; j < m; ++j) column(j);
  } else {
    // Columns are disjoint, so workers never write the same cell.
    std::vector<std::exception_ptr> failure(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t j = w; j < m; j += workers) column(j);
          } catch (...) {
            failure[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : failure) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (std::size_t i = 0; i < m; ++i) pf.set(i, m, pf.at(i, m - 1));
  return pf;
}

}  // namespace netpers
