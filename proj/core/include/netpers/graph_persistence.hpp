#pragma once

#include <vector>

#include "netpers/connectivity.hpp"
#include "netpers/graph.hpp"
#include "netpers/persistence.hpp"

namespace netpers {

// Component oracle for simple graphs under a connectivity property.
class GraphComponentProvider {
 public:
  explicit GraphComponentProvider(PropertySpec spec);

  std::vector<SimpleGraph> components(const SimpleGraph& g) const { return property_components(g, spec_); }
  bool contains_connected(const SimpleGraph& g) const { return contains_property_connected(g, spec_); }
  SimpleGraph restrict(const SimpleGraph& component, const SimpleGraph& level) const {
    return intersection(component, level);
  }

 private:
  PropertySpec spec_;
};

// Persistence function of the sublevel filtration. Connected components use
// an incremental union-find pass; other properties go through `tabulate`.
PersistenceFunction persistence_function(const Filtration& f, const PropertySpec& spec, EngineOptions options = {});

inline Diagram persistence_diagram(const Filtration& f, const PropertySpec& spec, EngineOptions options = {}) {
  return extract_diagram(persistence_function(f, spec, options));
}

}  // namespace netpers
