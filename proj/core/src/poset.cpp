#include "netpers/poset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "netpers/error.hpp"
#include "netpers/metrics.hpp"
#include "netpers/persistence.hpp"

namespace netpers {

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw InvalidInput("poset label count does not match element count");
  return labels;
}

}  // namespace

Poset::Poset(std::size_t n) : Poset(n, {}) {}

Poset::Poset(std::size_t n, std::vector<std::string> labels)
    : up_(n, boost::dynamic_bitset<>(n)), labels_(default_labels(n, std::move(labels))) {
  for (std::size_t a = 0; a < n; ++a) up_[a].set(a);
  finish_from_up();
}

void Poset::finish_from_up() {
  const std::size_t n = up_.size();
  down_.assign(n, boost::dynamic_bitset<>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = up_[a].find_first(); b != boost::dynamic_bitset<>::npos; b = up_[a].find_next(b)) {
      down_[b].set(a);
    }
  }
}

Poset Poset::from_relations(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> leq,
                            std::vector<std::string> labels) {
  Poset p(n, std::move(labels));
  for (const auto& [a, b] : leq) {
    if (a >= n || b >= n) throw InvalidInput("poset relation refers to a missing element");
    p.up_[a].set(b);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (p.up_[i].test(k)) p.up_[i] |= p.up_[k];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (p.up_[a].test(b) && p.up_[b].test(a)) {
        throw InvalidInput("poset relations contain a cycle through " + p.labels_[a] + " and " + p.labels_[b]);
      }
    }
  }
  p.finish_from_up();
  return p;
}

Poset Poset::from_order(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                        std::vector<std::string> labels) {
  Poset p(n, std::move(labels));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq(a, b)) p.up_[a].set(b);
    }
  }
  p.finish_from_up();
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::cover_relations() const {
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = up_[a].find_first(); b != boost::dynamic_bitset<>::npos; b = up_[a].find_next(b)) {
      if (b != a && (up_[a] & down_[b]).count() == 2) covers.emplace_back(a, b);
    }
  }
  return covers;
}

Poset Poset::restricted(std::span<const std::size_t> keep) const {
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t a : keep) labels.push_back(labels_.at(a));
  Poset p(keep.size(), std::move(labels));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (leq(keep[i], keep[j])) p.up_[i].set(j);
    }
  }
  p.finish_from_up();
  return p;
}

Poset free_poset(std::size_t n) { return Poset(n); }

std::vector<std::size_t> maximal_elements(const Poset& p) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.up_set(a).count() == 1) out.push_back(a);
  }
  return out;
}

bool is_antichain(const Poset& p) {
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.up_set(a).count() != 1) return false;
  }
  return true;
}

bool is_weakly_directed(const Poset& p) {
  boost::dynamic_bitset<> maximal(p.size());
  for (std::size_t a : maximal_elements(p)) maximal.set(a);
  for (std::size_t a = 0; a < p.size(); ++a) {
    if ((p.up_set(a) & maximal).count() != 1) return false;
  }
  return true;
}

bool is_upbeat(const Poset& p, std::size_t a) {
  boost::dynamic_bitset<> strict = p.up_set(a);
  strict.reset(a);
  for (std::size_t m = strict.find_first(); m != boost::dynamic_bitset<>::npos; m = strict.find_next(m)) {
    if (strict.is_subset_of(p.up_set(m))) return true;
  }
  return false;
}

bool is_downbeat(const Poset& p, std::size_t a) {
  boost::dynamic_bitset<> strict = p.down_set(a);
  strict.reset(a);
  for (std::size_t m = strict.find_first(); m != boost::dynamic_bitset<>::npos; m = strict.find_next(m)) {
    if (strict.is_subset_of(p.down_set(m))) return true;
  }
  return false;
}

CoreResult core(const Poset& p, const BeatPointChooser& choose) {
  std::vector<std::size_t> kept(p.size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
  Poset current = p;
  for (;;) {
    std::vector<std::size_t> beats;
    for (std::size_t a = 0; a < current.size(); ++a) {
      if (is_upbeat(current, a) || is_downbeat(current, a)) beats.push_back(a);
    }
    if (beats.empty()) break;
    const std::size_t victim = choose ? choose(beats) : beats.front();
    if (!std::binary_search(beats.begin(), beats.end(), victim)) {
      throw InvalidInput("beat point chooser returned a non-candidate");
    }
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < current.size(); ++a) {
      if (a != victim) keep.push_back(a);
    }
    current = current.restricted(keep);
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return {std::move(current), std::move(kept)};
}

SimpleGraph t_n(const Poset& p, int n) {
  if (n < 1) throw InvalidInput("t_n needs n >= 1");
  const auto fibre = static_cast<std::size_t>(n);
  std::vector<VertexId> vertices(p.size() * fibre);
  for (std::size_t v = 0; v < vertices.size(); ++v) vertices[v] = static_cast<VertexId>(v);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a; b < p.size(); ++b) {
      if (!p.comparable(a, b)) continue;
      for (std::size_t i = 0; i < fibre; ++i) {
        for (std::size_t j = (a == b ? i + 1 : 0); j < fibre; ++j) {
          edges.push_back(make_edge(static_cast<VertexId>(a * fibre + i), static_cast<VertexId>(b * fibre + j)));
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return SimpleGraph(std::move(vertices), std::move(edges));
}

Poset parse_poset(std::istream& in) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::pair<std::size_t, std::size_t>> relations;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens[0] == "el" && tokens.size() == 2) {
      if (!index.emplace(tokens[1], labels.size()).second) throw ParseError(line_no, "duplicate element " + tokens[1]);
      labels.push_back(tokens[1]);
    } else if (tokens[0] == "le" && tokens.size() == 3) {
      auto a = index.find(tokens[1]);
      auto b = index.find(tokens[2]);
      if (a == index.end() || b == index.end()) throw ParseError(line_no, "relation refers to an undeclared element");
      relations.emplace_back(a->second, b->second);
    } else {
      throw ParseError(line_no, "expected 'el <name>' or 'le <a> <b>'");
    }
  }
  try {
    return Poset::from_relations(labels.size(), relations, labels);
  } catch (const InvalidInput& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_poset(const Poset& p) {
  std::string out;
  for (const auto& l : p.labels()) out += "el " + l + "\n";
  for (const auto& [a, b] : p.cover_relations()) out += "le " + p.label(a) + " " + p.label(b) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

PosetFiltration::PosetFiltration(std::vector<std::string> labels, std::vector<double> element_birth,
                                 std::vector<TimedRelation> relations)
    : labels_(default_labels(element_birth.size(), std::move(labels))),
      element_birth_(std::move(element_birth)),
      relations_(std::move(relations)) {
  for (double b : element_birth_) {
    if (!std::isfinite(b)) throw InvalidInput("element births must be finite");
    criticals_.push_back(b);
  }
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (const TimedRelation& r : relations_) {
    if (r.lower >= labels_.size() || r.upper >= labels_.size()) {
      throw InvalidInput("timed relation refers to a missing element");
    }
    if (!std::isfinite(r.birth)) throw InvalidInput("relation births must be finite");
    if (r.birth < element_birth_[r.lower] || r.birth < element_birth_[r.upper]) {
      throw InvalidInput("relation " + labels_[r.lower] + " <= " + labels_[r.upper] + " is born before an endpoint");
    }
    criticals_.push_back(r.birth);
    all.emplace_back(r.lower, r.upper);
  }
  Poset::from_relations(labels_.size(), all);  // rejects cycles at the top level
  std::sort(criticals_.begin(), criticals_.end());
  criticals_.erase(std::unique(criticals_.begin(), criticals_.end()), criticals_.end());
}

PosetFiltration::Level PosetFiltration::at(double x) const {
  Level out;
  std::vector<std::size_t> local(labels_.size(), labels_.size());
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    if (element_birth_[a] <= x) {
      local[a] = out.members.size();
      out.members.push_back(a);
      labels.push_back(labels_[a]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (const TimedRelation& r : relations_) {
    if (r.birth <= x) rel.emplace_back(local[r.lower], local[r.upper]);
  }
  out.order = Poset::from_relations(out.members.size(), rel, std::move(labels));
  return out;
}

PosetFiltration::Level PosetFiltration::level(std::size_t index) const { return at(criticals_.at(index)); }

PersistenceFunction poset_persistence(const PosetFiltration& f) {
  const std::size_t m = f.criticals().size();
  PersistenceFunction pf(std::vector<double>(f.criticals().begin(), f.criticals().end()));
  std::vector<PosetFiltration::Level> levels;
  std::vector<std::vector<std::size_t>> local(m, std::vector<std::size_t>(f.element_count(), f.element_count()));
  std::vector<boost::dynamic_bitset<>> maximal(m);
  for (std::size_t i = 0; i < m; ++i) {
    levels.push_back(f.level(i));
    const auto& lv = levels.back();
    if (!is_weakly_directed(lv.order)) {
      throw InvalidInput("level " + format_number(f.criticals()[i]) + " is not weakly directed");
    }
    for (std::size_t l = 0; l < lv.members.size(); ++l) local[i][lv.members[l]] = l;
    maximal[i].resize(lv.members.size());
    for (std::size_t l : maximal_elements(lv.order)) maximal[i].set(l);
  }
  for (std::size_t j = 0; j < m; ++j) {
    const auto& target = levels[j];
    for (std::size_t i = 0; i <= j; ++i) {
      boost::dynamic_bitset<> image(target.members.size());
      const auto& source = levels[i];
      for (std::size_t l = maximal[i].find_first(); l != boost::dynamic_bitset<>::npos; l = maximal[i].find_next(l)) {
        const std::size_t at_j = local[j][source.members[l]];
        const auto above = target.order.up_set(at_j) & maximal[j];
        if (above.count() != 1) {
          throw InvalidInput("element " + f.label(source.members[l]) + " lies below " + std::to_string(above.count()) +
                             " maximal elements at level " + format_number(f.criticals()[j]));
        }
        image |= above;
      }
      pf.set(i, j, static_cast<int>(image.count()));
    }
  }
  for (std::size_t i = 0; i < m; ++i) pf.set(i, m, pf.at(i, m - 1));
  return pf;
}

WeightedGraph t_n_filtration(const PosetFiltration& f, int n) {
  if (n < 1) throw InvalidInput("t_n needs n >= 1");
  const std::size_t count = f.element_count();
  // First critical level at which each pair becomes comparable.
  std::vector<double> meet(count * count, kInfinity);
  for (std::size_t i = 0; i < f.criticals().size(); ++i) {
    const auto lv = f.level(i);
    for (std::size_t a = 0; a < lv.members.size(); ++a) {
      for (std::size_t b = 0; b < lv.members.size(); ++b) {
        if (a == b || !lv.order.leq(a, b)) continue;
        double& slot = meet[lv.members[a] * count + lv.members[b]];
        slot = std::min(slot, f.criticals()[i]);
      }
    }
  }
  auto name = [&](std::size_t a, int i) { return f.label(a) + "." + std::to_string(i); };
  WeightedGraph::Builder builder;
  for (std::size_t a = 0; a < count; ++a) {
    for (int i = 1; i <= n; ++i) {
      builder.set_vertex_weight(name(a, i), f.element_birth(a));
      for (int j = i + 1; j <= n; ++j) builder.add_edge(name(a, i), name(a, j), f.element_birth(a));
    }
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      const double w = meet[a * count + b];
      if (a == b || w == kInfinity) continue;
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) builder.add_edge(name(a, i), name(b, j), w);
      }
    }
  }
  return builder.build();
}

UniversalPair build_universal_pair(const Diagram& d1, const Diagram& d2) {
  auto check = [](const Diagram& d, const char* which) {
    if (d.infinite_count() != 1) {
      throw InvalidInput(std::string(which) + " diagram must have exactly one point at infinity");
    }
    const double x0 = d.expanded_infinite_births().front();
    for (const auto& p : d.expanded_finite()) {
      if (p.birth < x0) {
        throw InvalidInput(std::string(which) + " diagram has a finite point born before its half-line");
      }
    }
    return x0;
  };
  const double x0 = check(d1, "first");
  const double x0_prime = check(d2, "second");

  const BottleneckMatching matching = bottleneck_matching(d1, d2);

  struct Side {
    std::vector<std::string> labels;
    std::vector<double> births;
    std::vector<TimedRelation> relations;
  };
  Side h;
  Side h_prime;
  auto push = [](Side& side, const std::string& label, double birth, double death) {
    const std::size_t id = side.births.size();
    side.labels.push_back(label);
    side.births.push_back(birth);
    if (id != 0) side.relations.push_back({id, 0, death});
  };
  // A diagonal pad sits at the midpoint of its partner, delayed to the half-line
  // birth of its own filtration so that the relation below p0 is well formed.
  auto pad = [](const Cornerpoint& partner, double own_x0) {
    return std::max((partner.birth + partner.death) / 2, own_x0);
  };

  push(h, "p0", x0, kInfinity);
  push(h_prime, "p0", x0_prime, kInfinity);
  std::size_t next = 1;
  for (const MatchedPair& pair : matching.pairs) {
    if (pair.first && pair.first->at_infinity()) continue;
    const std::string label = "p" + std::to_string(next++);
    if (pair.first) {
      push(h, label, pair.first->birth, pair.first->death);
    } else {
      const double t = pad(*pair.second, x0);
      push(h, label, t, t);
    }
    if (pair.second) {
      push(h_prime, label, pair.second->birth, pair.second->death);
    } else {
      const double t = pad(*pair.first, x0_prime);
      push(h_prime, label, t, t);
    }
  }
  return {PosetFiltration(std::move(h.labels), std::move(h.births), std::move(h.relations)),
          PosetFiltration(std::move(h_prime.labels), std::move(h_prime.births), std::move(h_prime.relations)),
          matching.distance};
}

}  // namespace netpers
