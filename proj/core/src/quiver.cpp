#include "netpers/quiver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "netpers/error.hpp"
#include "netpers/union_find.hpp"

namespace netpers {

using Bits = boost::dynamic_bitset<>;

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::map<std::string_view, int> seen;
  for (const auto& v : vertices_) {
    if (!seen.emplace(v, 0).second) throw InvalidInput("duplicate quiver vertex " + v);
  }
  std::map<std::string_view, int> seen_arrows;
  for (const auto& a : arrows_) {
    if (!seen_arrows.emplace(a.name, 0).second) throw InvalidInput("duplicate quiver arrow " + a.name);
    if (a.source >= vertices_.size() || a.target >= vertices_.size()) {
      throw InvalidInput("arrow " + a.name + " has a missing endpoint");
    }
  }
}

std::optional<std::size_t> Quiver::find_vertex(std::string_view name) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v] == name) return v;
  }
  return std::nullopt;
}

std::optional<std::size_t> Quiver::find_arrow(std::string_view name) const {
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    if (arrows_[a].name == name) return a;
  }
  return std::nullopt;
}

namespace {

bool is_permutation_of(const std::vector<std::size_t>& image, std::size_t n) {
  if (image.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (std::size_t x : image) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

}  // namespace

GQuiver::GQuiver(Quiver quiver, std::vector<Generator> generators)
    : quiver_(std::move(quiver)), generators_(std::move(generators)) {
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const Generator& gen = generators_[g];
    const std::string which = "generator " + std::to_string(g + 1);
    if (!is_permutation_of(gen.vertex_image, quiver_.vertex_count())) {
      throw InvalidInput(which + " is not a permutation of the vertices");
    }
    if (!is_permutation_of(gen.arrow_image, quiver_.arrow_count())) {
      throw InvalidInput(which + " is not a permutation of the arrows");
    }
    for (std::size_t a = 0; a < quiver_.arrow_count(); ++a) {
      const Arrow& from = quiver_.arrow(a);
      const Arrow& to = quiver_.arrow(gen.arrow_image[a]);
      if (gen.vertex_image[from.source] != to.source || gen.vertex_image[from.target] != to.target) {
        throw InvalidInput(which + " does not commute with the endpoints of arrow " + from.name);
      }
    }
  }
}

SubQuiver whole(const GQuiver& gq) {
  SubQuiver s = empty_subquiver(gq);
  s.vertices.set();
  s.arrows.set();
  return s;
}

SubQuiver empty_subquiver(const GQuiver& gq) {
  return {Bits(gq.quiver().vertex_count()), Bits(gq.quiver().arrow_count())};
}

SubQuiver intersection(const SubQuiver& a, const SubQuiver& b) { return {a.vertices & b.vertices, a.arrows & b.arrows}; }

bool is_subquiver_of(const SubQuiver& a, const SubQuiver& b) {
  return a.vertices.is_subset_of(b.vertices) && a.arrows.is_subset_of(b.arrows);
}

bool is_valid(const GQuiver& gq, const SubQuiver& s) {
  const Quiver& q = gq.quiver();
  if (s.vertices.size() != q.vertex_count() || s.arrows.size() != q.arrow_count()) return false;
  for (std::size_t a = s.arrows.find_first(); a != Bits::npos; a = s.arrows.find_next(a)) {
    if (!s.vertices.test(q.arrow(a).source) || !s.vertices.test(q.arrow(a).target)) return false;
  }
  return true;
}

bool is_invariant(const GQuiver& gq, const SubQuiver& s) {
  for (const Generator& g : gq.generators()) {
    for (std::size_t v = s.vertices.find_first(); v != Bits::npos; v = s.vertices.find_next(v)) {
      if (!s.vertices.test(g.vertex_image[v])) return false;
    }
    for (std::size_t a = s.arrows.find_first(); a != Bits::npos; a = s.arrows.find_next(a)) {
      if (!s.arrows.test(g.arrow_image[a])) return false;
    }
  }
  return true;
}

SubQuiver induced(const GQuiver& gq, const Bits& vertices) {
  SubQuiver s{vertices, Bits(gq.quiver().arrow_count())};
  for (std::size_t a = 0; a < gq.quiver().arrow_count(); ++a) {
    const Arrow& arrow = gq.quiver().arrow(a);
    if (vertices.test(arrow.source) && vertices.test(arrow.target)) s.arrows.set(a);
  }
  return s;
}

namespace {

std::vector<std::vector<std::size_t>> classes_of(UnionFind& uf, std::size_t n) {
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < n; ++x) {
    auto [it, inserted] = slot.emplace(uf.find(x), out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(x);
  }
  return out;
}

}  // namespace

Orbits orbits(const GQuiver& gq) {
  const Quiver& q = gq.quiver();
  UnionFind vertex_uf(q.vertex_count());
  UnionFind arrow_uf(q.arrow_count());
  for (const Generator& g : gq.generators()) {
    for (std::size_t v = 0; v < q.vertex_count(); ++v) vertex_uf.unite(v, g.vertex_image[v]);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) arrow_uf.unite(a, g.arrow_image[a]);
  }
  Orbits out;
  out.vertex_orbits = classes_of(vertex_uf, q.vertex_count());
  out.arrow_orbits = classes_of(arrow_uf, q.arrow_count());
  out.vertex_orbit_of.resize(q.vertex_count());
  out.arrow_orbit_of.resize(q.arrow_count());
  for (std::size_t o = 0; o < out.vertex_orbits.size(); ++o) {
    for (std::size_t v : out.vertex_orbits[o]) out.vertex_orbit_of[v] = o;
  }
  for (std::size_t o = 0; o < out.arrow_orbits.size(); ++o) {
    for (std::size_t a : out.arrow_orbits[o]) out.arrow_orbit_of[a] = o;
  }
  return out;
}

std::vector<std::size_t> fixed_vertices(const GQuiver& gq) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < gq.quiver().vertex_count(); ++v) {
    const bool fixed = std::all_of(gq.generators().begin(), gq.generators().end(),
                                   [v](const Generator& g) { return g.vertex_image[v] == v; });
    if (fixed) out.push_back(v);
  }
  return out;
}

Quiver quotient(const GQuiver& gq) {
  const Quiver& q = gq.quiver();
  const Orbits o = orbits(gq);
  auto join = [](const std::vector<std::size_t>& members, auto&& name) {
    std::string out;
    for (std::size_t x : members) {
      if (!out.empty()) out += '|';
      out += name(x);
    }
    return out;
  };
  std::vector<std::string> vertices;
  for (const auto& orbit : o.vertex_orbits) {
    vertices.push_back(join(orbit, [&](std::size_t v) { return q.vertex(v); }));
  }
  std::vector<Arrow> arrows;
  for (const auto& orbit : o.arrow_orbits) {
    const Arrow& rep = q.arrow(orbit.front());
    arrows.push_back({join(orbit, [&](std::size_t a) { return q.arrow(a).name; }), o.vertex_orbit_of[rep.source],
                      o.vertex_orbit_of[rep.target]});
  }
  return Quiver(std::move(vertices), std::move(arrows));
}

SubQuiver quotient_subquiver(const GQuiver& gq, const SubQuiver& s) {
  const Orbits o = orbits(gq);
  SubQuiver out{Bits(o.vertex_orbits.size()), Bits(o.arrow_orbits.size())};
  for (std::size_t i = 0; i < o.vertex_orbits.size(); ++i) {
    if (s.vertices.test(o.vertex_orbits[i].front())) out.vertices.set(i);
  }
  for (std::size_t i = 0; i < o.arrow_orbits.size(); ++i) {
    if (s.arrows.test(o.arrow_orbits[i].front())) out.arrows.set(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

void EquivariantClass::validate() const {
  if (k < 1) throw InvalidInput("equivariant class needs k >= 1");
}

std::string_view kind_name(EquivariantKind kind) {
  switch (kind) {
    case EquivariantKind::isomorphisms: return "isomorphisms";
    case EquivariantKind::orbit_deletion: return "orbit-deletion";
    case EquivariantKind::fixed_vertex_deletion: return "fixed-vertex-deletion";
  }
  return "?";
}

std::optional<EquivariantKind> parse_equivariant_kind(std::string_view name) {
  for (auto kind :
       {EquivariantKind::isomorphisms, EquivariantKind::orbit_deletion, EquivariantKind::fixed_vertex_deletion}) {
    if (kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string EquivariantClass::describe() const {
  if (kind == EquivariantKind::isomorphisms) return std::string(kind_name(kind));
  return std::string(kind_name(kind)) + " k=" + std::to_string(k);
}

namespace {

// Vertex classes of `s` under arrows of `s` and the generators.
std::vector<Bits> g_classes(const GQuiver& gq, const SubQuiver& s) {
  const Quiver& q = gq.quiver();
  UnionFind uf(q.vertex_count());
  for (std::size_t a = s.arrows.find_first(); a != Bits::npos; a = s.arrows.find_next(a)) {
    uf.unite(q.arrow(a).source, q.arrow(a).target);
  }
  for (const Generator& g : gq.generators()) {
    for (std::size_t v = s.vertices.find_first(); v != Bits::npos; v = s.vertices.find_next(v)) {
      uf.unite(v, g.vertex_image[v]);
    }
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<Bits> out;
  for (std::size_t v = s.vertices.find_first(); v != Bits::npos; v = s.vertices.find_next(v)) {
    auto [it, inserted] = slot.emplace(uf.find(v), out.size());
    if (inserted) out.emplace_back(q.vertex_count());
    out[it->second].set(v);
  }
  return out;
}

// `s` restricted to the vertex set `keep`, with the arrows of `s` between them.
SubQuiver restricted(const GQuiver& gq, const SubQuiver& s, const Bits& keep) {
  SubQuiver out{s.vertices & keep, Bits(s.arrows.size())};
  for (std::size_t a = s.arrows.find_first(); a != Bits::npos; a = s.arrows.find_next(a)) {
    const Arrow& arrow = gq.quiver().arrow(a);
    if (out.vertices.test(arrow.source) && out.vertices.test(arrow.target)) out.arrows.set(a);
  }
  return out;
}

// Deletion units of `s`: vertex orbits or fixed vertices it contains.
std::vector<Bits> units_of(const GQuiver& gq, const SubQuiver& s, EquivariantKind kind) {
  std::vector<Bits> units;
  const std::size_t n = gq.quiver().vertex_count();
  if (kind == EquivariantKind::orbit_deletion) {
    for (const auto& orbit : orbits(gq).vertex_orbits) {
      if (!s.vertices.test(orbit.front())) continue;
      Bits u(n);
      for (std::size_t v : orbit) u.set(v);
      units.push_back(std::move(u));
    }
  } else if (kind == EquivariantKind::fixed_vertex_deletion) {
    for (std::size_t v : fixed_vertices(gq)) {
      if (!s.vertices.test(v)) continue;
      units.emplace_back(n).set(v);
    }
  }
  return units;
}

std::size_t effective_k(const EquivariantClass& cls) {
  return cls.kind == EquivariantKind::isomorphisms ? 1 : static_cast<std::size_t>(cls.k);
}

// Calls `visit(removed)` for every union of fewer than `limit` units, smallest
// first, stopping early when it returns true. Returns the hit, if any.
std::optional<Bits> find_unit_set(const std::vector<Bits>& units, std::size_t limit, std::size_t n,
                                  std::size_t subset_cap, const std::function<bool(const Bits&)>& visit) {
  std::size_t budget = subset_cap;
  std::vector<std::size_t> pick;
  for (std::size_t size = 0; size < limit && size <= units.size(); ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      if (budget-- == 0) throw CapExceeded("equivariant connectivity: too many deletion subsets");
      Bits removed(n);
      for (std::size_t i : pick) removed |= units[i];
      if (visit(removed)) return removed;
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == units.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<Bits> find_separating_units(const GQuiver& gq, const SubQuiver& s, const EquivariantClass& cls,
                                          std::size_t subset_cap) {
  const auto units = units_of(gq, s, cls.kind);
  const std::size_t n = gq.quiver().vertex_count();
  return find_unit_set(units, effective_k(cls), n, subset_cap, [&](const Bits& removed) {
    return !is_g_connected(gq, restricted(gq, s, s.vertices - removed));
  });
}

void collect_components(const GQuiver& gq, const SubQuiver& s, const EquivariantClass& cls, std::size_t subset_cap,
                        std::vector<SubQuiver>& out) {
  if (s.empty()) return;
  const auto classes = g_classes(gq, s);
  if (classes.size() > 1) {
    for (const Bits& c : classes) collect_components(gq, restricted(gq, s, c), cls, subset_cap, out);
    return;
  }
  const auto removed = find_separating_units(gq, s, cls, subset_cap);
  if (!removed) {
    out.push_back(s);
    return;
  }
  // Every connected piece survives the deletion inside one remaining class.
  const SubQuiver rest = restricted(gq, s, s.vertices - *removed);
  for (const Bits& part : g_classes(gq, rest)) {
    collect_components(gq, restricted(gq, s, part | (*removed & s.vertices)), cls, subset_cap, out);
  }
}

bool bits_less(const SubQuiver& a, const SubQuiver& b) {
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    if (a.vertices.test(i) != b.vertices.test(i)) return a.vertices.test(i);
  }
  for (std::size_t i = 0; i < a.arrows.size(); ++i) {
    if (a.arrows.test(i) != b.arrows.test(i)) return a.arrows.test(i);
  }
  return false;
}

}  // namespace

bool is_g_connected(const GQuiver& gq, const SubQuiver& s) { return !s.empty() && g_classes(gq, s).size() == 1; }

bool is_equivariantly_connected(const GQuiver& gq, const SubQuiver& s, const EquivariantClass& cls) {
  cls.validate();
  if (!is_g_connected(gq, s)) return false;
  return !find_separating_units(gq, s, cls, std::size_t{1} << 20);
}

std::vector<SubQuiver> gq_components(const GQuiver& gq, const SubQuiver& s, const EquivariantClass& cls,
                                     std::size_t subset_cap) {
  cls.validate();
  std::vector<SubQuiver> found;
  collect_components(gq, s, cls, subset_cap, found);
  std::sort(found.begin(), found.end(), bits_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<SubQuiver> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < found.size() && !dominated; ++j) {
      dominated = i != j && is_subquiver_of(found[i], found[j]);
    }
    if (!dominated) out.push_back(found[i]);
  }
  return out;
}

QuiverComponentProvider::QuiverComponentProvider(const GQuiver& gq, EquivariantClass cls) : gq_(&gq), cls_(cls) {
  cls_.validate();
}

// ---------------------------------------------------------------------------

QuiverFiltration::QuiverFiltration(const GQuiver& gq, std::vector<double> vertex_birth,
                                   std::vector<double> arrow_birth)
    : vertex_count_(gq.quiver().vertex_count()),
      vertex_birth_(std::move(vertex_birth)),
      arrow_birth_(std::move(arrow_birth)) {
  const Quiver& q = gq.quiver();
  if (vertex_birth_.size() != q.vertex_count() || arrow_birth_.size() != q.arrow_count()) {
    throw InvalidInput("quiver filtration needs one birth per vertex and per arrow");
  }
  for (double b : vertex_birth_) {
    if (!std::isfinite(b)) throw InvalidInput("quiver births must be finite");
    criticals_.push_back(b);
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const double b = arrow_birth_[a];
    if (!std::isfinite(b)) throw InvalidInput("quiver births must be finite");
    if (b < vertex_birth_[q.arrow(a).source] || b < vertex_birth_[q.arrow(a).target]) {
      throw InvalidInput("arrow " + q.arrow(a).name + " is born before an endpoint");
    }
    criticals_.push_back(b);
  }
  for (const Generator& g : gq.generators()) {
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      if (vertex_birth_[g.vertex_image[v]] != vertex_birth_[v]) {
        throw InvalidInput("vertex births are not constant on orbits");
      }
    }
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (arrow_birth_[g.arrow_image[a]] != arrow_birth_[a]) {
        throw InvalidInput("arrow births are not constant on orbits");
      }
    }
  }
  std::sort(criticals_.begin(), criticals_.end());
  criticals_.erase(std::unique(criticals_.begin(), criticals_.end()), criticals_.end());
}

SubQuiver QuiverFiltration::at(double x) const {
  SubQuiver s{Bits(vertex_count_), Bits(arrow_birth_.size())};
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (vertex_birth_[v] <= x) s.vertices.set(v);
  }
  for (std::size_t a = 0; a < arrow_birth_.size(); ++a) {
    if (arrow_birth_[a] <= x) s.arrows.set(a);
  }
  return s;
}

QuiverFiltration orbit_filtration(const GQuiver& gq) {
  const Quiver& q = gq.quiver();
  const Orbits o = orbits(gq);
  std::vector<double> vertex_birth(q.vertex_count());
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    vertex_birth[v] = static_cast<double>(o.vertex_orbits[o.vertex_orbit_of[v]].size());
  }
  std::vector<double> arrow_birth(q.arrow_count());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    arrow_birth[a] = std::max({static_cast<double>(o.arrow_orbits[o.arrow_orbit_of[a]].size()),
                               vertex_birth[q.arrow(a).source], vertex_birth[q.arrow(a).target]});
  }
  return QuiverFiltration(gq, std::move(vertex_birth), std::move(arrow_birth));
}

PersistenceFunction gq_persistence_function(const GQuiver& gq, const QuiverFiltration& f,
                                            const EquivariantClass& cls, EngineOptions options) {
  std::vector<SubQuiver> levels;
  for (std::size_t i = 0; i < f.criticals().size(); ++i) levels.push_back(f.level(i));
  return tabulate(std::vector<double>(f.criticals().begin(), f.criticals().end()), levels,
                  QuiverComponentProvider(gq, cls), options);
}

Diagram gq_persistence(const GQuiver& gq, const QuiverFiltration& f, const EquivariantClass& cls,
                       EngineOptions options) {
  return extract_diagram(gq_persistence_function(gq, f, cls, options));
}

// ---------------------------------------------------------------------------

GQuiver parse_gquiver(std::istream& in) {
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t, std::less<>> vertex_index;
  struct PendingArrow {
    std::string name, source, target;
    std::size_t line;
  };
  std::vector<PendingArrow> pending;
  struct PendingMap {
    bool vertex;
    std::string from, to;
    std::size_t line;
  };
  std::vector<std::vector<PendingMap>> blocks;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> t;
    for (std::string tok; fields >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    if (t[0] == "v" && t.size() == 2) {
      if (!blocks.empty()) throw ParseError(line_no, "vertex declared after a generator block");
      if (!vertex_index.emplace(t[1], vertices.size()).second) throw ParseError(line_no, "duplicate vertex " + t[1]);
      vertices.push_back(t[1]);
    } else if (t[0] == "a" && t.size() == 4) {
      if (!blocks.empty()) throw ParseError(line_no, "arrow declared after a generator block");
      pending.push_back({t[1], t[2], t[3], line_no});
    } else if (t[0] == "g" && t.size() == 1) {
      blocks.emplace_back();
    } else if (t[0] == "map" && t.size() == 4 && (t[1] == "v" || t[1] == "a")) {
      if (blocks.empty()) throw ParseError(line_no, "'map' outside a generator block");
      blocks.back().push_back({t[1] == "v", t[2], t[3], line_no});
    } else {
      throw ParseError(line_no, "expected 'v', 'a', 'g' or 'map' record");
    }
  }

  std::vector<Arrow> arrows;
  std::map<std::string, std::size_t, std::less<>> arrow_index;
  for (const auto& p : pending) {
    auto s = vertex_index.find(p.source);
    auto d = vertex_index.find(p.target);
    if (s == vertex_index.end() || d == vertex_index.end()) {
      throw ParseError(p.line, "arrow " + p.name + " refers to an undeclared vertex");
    }
    if (!arrow_index.emplace(p.name, arrows.size()).second) throw ParseError(p.line, "duplicate arrow " + p.name);
    arrows.push_back({p.name, s->second, d->second});
  }

  std::vector<Generator> generators;
  for (const auto& block : blocks) {
    Generator g;
    g.vertex_image.resize(vertices.size());
    g.arrow_image.resize(arrows.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) g.vertex_image[v] = v;
    for (std::size_t a = 0; a < arrows.size(); ++a) g.arrow_image[a] = a;
    for (const auto& m : block) {
      const auto& index = m.vertex ? vertex_index : arrow_index;
      auto from = index.find(m.from);
      auto to = index.find(m.to);
      if (from == index.end() || to == index.end()) throw ParseError(m.line, "map refers to an undeclared name");
      (m.vertex ? g.vertex_image : g.arrow_image)[from->second] = to->second;
    }
    generators.push_back(std::move(g));
  }
  try {
    return GQuiver(Quiver(std::move(vertices), std::move(arrows)), std::move(generators));
  } catch (const InvalidInput& e) {
    throw ParseError(0, e.what());
  }
}

GQuiver parse_gquiver(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_gquiver(in);
}

GQuiver read_gquiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_gquiver(in);
}

std::string serialize_gquiver(const GQuiver& gq) {
  const Quiver& q = gq.quiver();
  std::string out;
  for (const auto& v : q.vertices()) out += "v " + v + "\n";
  for (const auto& a : q.arrows()) out += "a " + a.name + " " + q.vertex(a.source) + " " + q.vertex(a.target) + "\n";
  for (const Generator& g : gq.generators()) {
    out += "g\n";
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      if (g.vertex_image[v] != v) out += "map v " + q.vertex(v) + " " + q.vertex(g.vertex_image[v]) + "\n";
    }
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (g.arrow_image[a] != a) out += "map a " + q.arrow(a).name + " " + q.arrow(g.arrow_image[a]).name + "\n";
    }
  }
  return out;
}

}  // namespace netpers
