#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netpers/persistence.hpp"

namespace netpers {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Directed multigraph; loops and parallel arrows allowed.
class Quiver {
 public:
  Quiver() = default;
  // Throws InvalidInput on duplicate names or dangling arrow endpoints.
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& vertex(std::size_t v) const { return vertices_[v]; }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
  std::span<const std::string> vertices() const { return vertices_; }
  std::span<const Arrow> arrows() const { return arrows_; }

  std::optional<std::size_t> find_vertex(std::string_view name) const;
  std::optional<std::size_t> find_arrow(std::string_view name) const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

// Image tables of a quiver automorphism.
struct Generator {
  std::vector<std::size_t> vertex_image;
  std::vector<std::size_t> arrow_image;

  friend bool operator==(const Generator&, const Generator&) = default;
};

// Quiver with a finite group acting through the generated automorphisms.
class GQuiver {
 public:
  GQuiver() = default;
  // Throws InvalidInput unless every generator is a bijection on vertices and
  // arrows that commutes with source and target.
  GQuiver(Quiver quiver, std::vector<Generator> generators);

  const Quiver& quiver() const { return quiver_; }
  std::span<const Generator> generators() const { return generators_; }

 private:
  Quiver quiver_;
  std::vector<Generator> generators_;
};

// Subquiver of an ambient G-quiver as membership bitsets. Valid when every
// member arrow has member endpoints; invariant when closed under generators.
struct SubQuiver {
  boost::dynamic_bitset<> vertices;
  boost::dynamic_bitset<> arrows;

  bool empty() const { return vertices.none(); }
  friend bool operator==(const SubQuiver&, const SubQuiver&) = default;
};

SubQuiver whole(const GQuiver& gq);
SubQuiver empty_subquiver(const GQuiver& gq);
SubQuiver intersection(const SubQuiver& a, const SubQuiver& b);
bool is_subquiver_of(const SubQuiver& a, const SubQuiver& b);
bool is_valid(const GQuiver& gq, const SubQuiver& s);
bool is_invariant(const GQuiver& gq, const SubQuiver& s);
// `s` plus every ambient arrow with both endpoints in `s`.
SubQuiver induced(const GQuiver& gq, const boost::dynamic_bitset<>& vertices);

struct Orbits {
  std::vector<std::vector<std::size_t>> vertex_orbits;  // each ascending, ordered by first member
  std::vector<std::vector<std::size_t>> arrow_orbits;
  std::vector<std::size_t> vertex_orbit_of;
  std::vector<std::size_t> arrow_orbit_of;
};

Orbits orbits(const GQuiver& gq);

// Vertices fixed by every generator (hence by the whole group).
std::vector<std::size_t> fixed_vertices(const GQuiver& gq);

// Orbits become vertices and arrows, named by their members joined with '|'.
Quiver quotient(const GQuiver& gq);

// Quotient of an invariant subquiver, as the sub-quiver of `quotient(gq)`
// given by the orbits it contains.
SubQuiver quotient_subquiver(const GQuiver& gq, const SubQuiver& s);

enum class EquivariantKind { isomorphisms, orbit_deletion, fixed_vertex_deletion };

// Monomorphisms X' -> X whose complement is made of fewer than `k` deletion
// units: none (isomorphisms), vertex orbits, or G-fixed vertices; units take
// their incident arrows with them. k = 1 degenerates to isomorphisms.
struct EquivariantClass {
  EquivariantKind kind = EquivariantKind::isomorphisms;
  int k = 2;

  void validate() const;  // throws InvalidInput unless k >= 1
  std::string describe() const;

  friend bool operator==(const EquivariantClass&, const EquivariantClass&) = default;
};

std::string_view kind_name(EquivariantKind kind);
std::optional<EquivariantKind> parse_equivariant_kind(std::string_view name);

// Non-empty and the group acts transitively on the weak components.
bool is_g_connected(const GQuiver& gq, const SubQuiver& s);

// Every restriction along the class is G-connected. `s` must be invariant.
bool is_equivariantly_connected(const GQuiver& gq, const SubQuiver& s, const EquivariantClass& cls);

// Maximal connected invariant subquivers of the invariant subquiver `s`,
// ordered lexicographically by membership (lowest member index first).
// Throws CapExceeded when the number of unit subsets to try exceeds `subset_cap`.
std::vector<SubQuiver> gq_components(const GQuiver& gq, const SubQuiver& s, const EquivariantClass& cls,
                                     std::size_t subset_cap = 1u << 20);
inline std::vector<SubQuiver> gq_components(const GQuiver& gq, const EquivariantClass& cls) {
  return gq_components(gq, whole(gq), cls);
}

class QuiverComponentProvider {
 public:
  QuiverComponentProvider(const GQuiver& gq, EquivariantClass cls);

  std::vector<SubQuiver> components(const SubQuiver& s) const { return gq_components(*gq_, s, cls_); }
  bool contains_connected(const SubQuiver& s) const { return !components(s).empty(); }
  SubQuiver restrict(const SubQuiver& component, const SubQuiver& level) const {
    return intersection(component, level);
  }

 private:
  const GQuiver* gq_;
  EquivariantClass cls_;
};

// Invariant sublevel filtration given by births on vertices and arrows.
class QuiverFiltration {
 public:
  // Throws InvalidInput unless births are finite, constant on orbits, and no
  // arrow is born before its endpoints.
  QuiverFiltration(const GQuiver& gq, std::vector<double> vertex_birth, std::vector<double> arrow_birth);

  std::span<const double> criticals() const { return criticals_; }
  double vertex_birth(std::size_t v) const { return vertex_birth_[v]; }
  double arrow_birth(std::size_t a) const { return arrow_birth_[a]; }
  SubQuiver at(double x) const;
  SubQuiver level(std::size_t index) const { return at(criticals_.at(index)); }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<double> vertex_birth_;
  std::vector<double> arrow_birth_;
  std::vector<double> criticals_;
};

// Vertices enter at their orbit size, arrows at the largest of their own orbit
// size and their endpoints' orbit sizes.
QuiverFiltration orbit_filtration(const GQuiver& gq);

PersistenceFunction gq_persistence_function(const GQuiver& gq, const QuiverFiltration& f,
                                            const EquivariantClass& cls, EngineOptions options = {});
Diagram gq_persistence(const GQuiver& gq, const QuiverFiltration& f, const EquivariantClass& cls,
                       EngineOptions options = {});
inline Diagram gq_persistence(const GQuiver& gq, const EquivariantClass& cls, EngineOptions options = {}) {
  return gq_persistence(gq, orbit_filtration(gq), cls, options);
}

// `v <name>`, `a <name> <src> <tgt>`, then `g` blocks of `map v <x> <y>` /
// `map a <x> <y>` lines; unlisted entries are fixed.
GQuiver parse_gquiver(std::istream& in);
GQuiver parse_gquiver(std::string_view text);
GQuiver read_gquiver(const std::string& path);
std::string serialize_gquiver(const GQuiver& gq);

}  // namespace netpers
