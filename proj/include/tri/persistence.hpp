#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tri/graph.hpp"

namespace tri {

enum class FiltrationMode { Degree, Attribute };
enum class DegreeScope { Global, Local };

struct FiltrationSpec {
  FiltrationMode mode = FiltrationMode::Degree;
  Metric metric = Metric::Euclidean;  // attribute mode only
  DegreeScope degree_scope = DegreeScope::Global;
};

FiltrationMode parse_filtration_mode(const std::string& name);

/// 0-dimensional persistence diagram: finite (birth, death) bars plus
/// essential births (death = infinity), both kept sorted.
struct PersistenceDiagram {
  int dimension = 0;
  std::vector<std::pair<double, double>> finite;
  std::vector<double> essential;

  void normalize();  // sort both multisets
  bool operator==(const PersistenceDiagram& other) const = default;
};

/// Sublevel filtration where node v enters at f(v) and edge vw at
/// max(f(v), f(w)); union-find sweep, elder rule with id tie-break.
PersistenceDiagram sublevel_pd(const Neighborhood& nbhd,
                               const std::vector<double>& node_values,
                               const std::vector<double>& edge_values);

PersistenceDiagram degree_filtration_pd(const Neighborhood& nbhd,
                                        const std::vector<int>& global_degrees);

/// Nodes enter at 0, edge vw at tau_vw; requires a weighted neighborhood.
PersistenceDiagram attribute_filtration_pd(const Neighborhood& nbhd);

PersistenceDiagram neighborhood_pd(const Graph& g, const Neighborhood& nbhd,
                                   const FiltrationSpec& spec,
                                   const std::vector<int>& global_degrees);

std::string diagram_to_json(const PersistenceDiagram& pd);

}  // namespace tri
