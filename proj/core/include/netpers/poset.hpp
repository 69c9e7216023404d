#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netpers/graph.hpp"

namespace netpers {

class Diagram;
class PersistenceFunction;

// Finite poset on elements 0..size()-1. The reflexive-transitive closure is
// stored as bitset rows; covering relations are derived on demand.
class Poset {
 public:
  Poset() = default;
  // Antichain (the free poset on `n` elements).
  explicit Poset(std::size_t n);
  Poset(std::size_t n, std::vector<std::string> labels);

  // Closure of the given `a <= b` pairs. Throws InvalidInput if a cycle
  // (antisymmetry violation) or an out-of-range index appears.
  static Poset from_relations(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> leq,
                              std::vector<std::string> labels = {});

  // `leq(a, b)` must already be a partial order; only reflexivity is enforced.
  static Poset from_order(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                          std::vector<std::string> labels = {});

  std::size_t size() const { return up_.size(); }
  bool empty() const { return up_.empty(); }
  bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  bool less(std::size_t a, std::size_t b) const { return a != b && up_[a].test(b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  // {b : a <= b} and {b : b <= a}, reflexive.
  const boost::dynamic_bitset<>& up_set(std::size_t a) const { return up_[a]; }
  const boost::dynamic_bitset<>& down_set(std::size_t a) const { return down_[a]; }

  const std::string& label(std::size_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Transitive reduction, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const;

  // Full sub-poset on `keep` (order inherited), elements renumbered in the given order.
  Poset restricted(std::span<const std::size_t> keep) const;

  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

 private:
  void finish_from_up();

  std::vector<boost::dynamic_bitset<>> up_;
  std::vector<boost::dynamic_bitset<>> down_;
  std::vector<std::string> labels_;
};

Poset free_poset(std::size_t n);

std::vector<std::size_t> maximal_elements(const Poset& p);
bool is_antichain(const Poset& p);

// Every pair with a common lower bound has a common upper bound. Uses the
// equivalent finite criterion that each element lies below exactly one
// maximal element.
bool is_weakly_directed(const Poset& p);

bool is_upbeat(const Poset& p, std::size_t a);
bool is_downbeat(const Poset& p, std::size_t a);

// Chooses which beat point to delete next from the (non-empty, ascending) candidates.
using BeatPointChooser = std::function<std::size_t(std::span<const std::size_t> beat_points)>;

struct CoreResult {
  Poset core;
  std::vector<std::size_t> kept;  // original indices of the core's elements
};

// Iterated beat-point deletion; by default always removes the lowest-index beat point.
CoreResult core(const Poset& p, const BeatPointChooser& choose = {});

// Graph on P x {1..n}; distinct (p,i), (q,j) adjacent iff p, q comparable.
// Vertex (p, i) has id p * n + i (0-based i).
SimpleGraph t_n(const Poset& p, int n);

// Text format: `el <name>` lines, `le <a> <b>` covering lines.
Poset parse_poset(std::istream& in);
std::string serialize_poset(const Poset& p);

// Element birth plus relation births. At level x the poset contains the
// elements born by x, ordered by the closure of the relations born by x.
struct TimedRelation {
  std::size_t lower;
  std::size_t upper;
  double birth;
};

class PosetFiltration {
 public:
  PosetFiltration() = default;
  // Throws InvalidInput if a relation is born before one of its endpoints.
  PosetFiltration(std::vector<std::string> labels, std::vector<double> element_birth,
                  std::vector<TimedRelation> relations);

  std::span<const double> criticals() const { return criticals_; }
  std::size_t element_count() const { return labels_.size(); }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  double element_birth(std::size_t a) const { return element_birth_[a]; }
  std::span<const TimedRelation> relations() const { return relations_; }

  struct Level {
    std::vector<std::size_t> members;  // global ids, ascending
    Poset order;                       // over local indices into `members`
  };
  Level level(std::size_t index) const;
  Level at(double x) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> element_birth_;
  std::vector<TimedRelation> relations_;
  std::vector<double> criticals_;
};

// p(u, v) = |image of M(level u) in M(level v)|. Throws InvalidInput when a
// level is not weakly directed, which is exactly when some maximal element
// lacks a unique maximal upper bound.
PersistenceFunction poset_persistence(const PosetFiltration& f);

// Weighted graph t_n ∘ f: vertex (a, i) weighs the birth of a, edge between
// fibres of a and b weighs the first level where a and b are comparable.
// Vertex names are "<label>.<i>" with i in 1..n.
WeightedGraph t_n_filtration(const PosetFiltration& f, int n);

struct UniversalPair {
  PosetFiltration first;
  PosetFiltration second;
  double bottleneck = 0;
};

// Realises two diagrams with one half-line each as poset filtrations whose
// element bijection is an optimal bottleneck matching. Requires the half-line
// birth to be no later than any finite birth in the same diagram; throws
// InvalidInput otherwise.
UniversalPair build_universal_pair(const Diagram& d1, const Diagram& d2);

}  // namespace netpers
