#include "tri/persistence.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tri {

FiltrationMode parse_filtration_mode(const std::string& name) {
  if (name == "degree") return FiltrationMode::Degree;
  if (name == "attribute") return FiltrationMode::Attribute;
  throw std::invalid_argument("unknown filtration mode: " + name);
}

void PersistenceDiagram::normalize() {
  std::sort(finite.begin(), finite.end());
  std::sort(essential.begin(), essential.end());
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  // birth value and birth node id per component root (elder rule state)
  std::vector<double> birth;
  std::vector<int> birth_node;

  explicit UnionFind(int n) : parent(n, -1), birth(n, 0), birth_node(n, 0) {}

  void activate(int i, double value, int node_id) {
    parent[i] = i;
    birth[i] = value;
    birth_node[i] = node_id;
  }

  int find(int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
};

}  // namespace

PersistenceDiagram sublevel_pd(const Neighborhood& nbhd,
                               const std::vector<double>& node_values,
                               const std::vector<double>& edge_values) {
  const int n = static_cast<int>(nbhd.members.size());
  if (n == 0) throw std::invalid_argument("empty neighborhood");
  if (static_cast<int>(node_values.size()) != n ||
      edge_values.size() != nbhd.edges.size())
    throw std::invalid_argument("filtration value size mismatch");

  std::map<int, int> local;  // graph node id -> local index
  for (int i = 0; i < n; ++i) local[nbhd.members[i]] = i;

  // thresholds: every distinct node or edge entry value, ascending
  std::vector<double> thresholds(node_values);
  thresholds.insert(thresholds.end(), edge_values.begin(), edge_values.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  std::vector<int> node_order(n), edge_order(nbhd.edges.size());
  for (int i = 0; i < n; ++i) node_order[i] = i;
  for (std::size_t i = 0; i < edge_values.size(); ++i) edge_order[i] = (int)i;
  std::sort(node_order.begin(), node_order.end(),
            [&](int a, int b) { return node_values[a] < node_values[b]; });
  std::sort(edge_order.begin(), edge_order.end(),
            [&](int a, int b) { return edge_values[a] < edge_values[b]; });

  UnionFind uf(n);
  PersistenceDiagram pd;
  std::size_t ni = 0, ei = 0;
  for (double alpha : thresholds) {
    // all nodes at this threshold enter before any edge at this threshold
    while (ni < node_order.size() && node_values[node_order[ni]] == alpha) {
      int i = node_order[ni++];
      uf.activate(i, alpha, nbhd.members[i]);
    }
    while (ei < edge_order.size() && edge_values[edge_order[ei]] == alpha) {
      int e = edge_order[ei++];
      int a = uf.find(local.at(nbhd.edges[e].first));
      int b = uf.find(local.at(nbhd.edges[e].second));
      if (a == b) continue;
      // elder rule: smaller birth survives, ties by smaller node id
      auto key = [&](int r) { return std::pair(uf.birth[r], uf.birth_node[r]); };
      int survivor = key(a) <= key(b) ? a : b;
      int dying = survivor == a ? b : a;
      if (alpha > uf.birth[dying])  // zero-persistence merges stay on the diagonal
        pd.finite.emplace_back(uf.birth[dying], alpha);
      uf.parent[dying] = survivor;
    }
  }
  for (int i = 0; i < n; ++i)
    if (uf.find(i) == i) pd.essential.push_back(uf.birth[i]);
  pd.normalize();
  return pd;
}

PersistenceDiagram degree_filtration_pd(const Neighborhood& nbhd,
                                        const std::vector<int>& global_degrees) {
  std::vector<double> nv(nbhd.members.size());
  for (std::size_t i = 0; i < nbhd.members.size(); ++i) {
    int u = nbhd.members[i];
    if (u < 0 || u >= static_cast<int>(global_degrees.size()))
      throw std::invalid_argument("degree vector does not cover neighborhood");
    nv[i] = static_cast<double>(global_degrees[u]);
  }
  std::map<int, double> by_node;
  for (std::size_t i = 0; i < nbhd.members.size(); ++i)
    by_node[nbhd.members[i]] = nv[i];
  std::vector<double> ev(nbhd.edges.size());
  for (std::size_t e = 0; e < nbhd.edges.size(); ++e)
    ev[e] = std::max(by_node.at(nbhd.edges[e].first),
                     by_node.at(nbhd.edges[e].second));
  return sublevel_pd(nbhd, nv, ev);
}

PersistenceDiagram attribute_filtration_pd(const Neighborhood& nbhd) {
  if (!nbhd.weighted)
    throw std::invalid_argument("attribute filtration needs a weighted neighborhood");
  std::vector<double> nv(nbhd.members.size(), 0.0);
  return sublevel_pd(nbhd, nv, nbhd.edge_weights);
}

PersistenceDiagram neighborhood_pd(const Graph& g, const Neighborhood& nbhd,
                                   const FiltrationSpec& spec,
                                   const std::vector<int>& global_degrees) {
  if (spec.mode == FiltrationMode::Attribute) return attribute_filtration_pd(nbhd);
  if (spec.degree_scope == DegreeScope::Global)
    return degree_filtration_pd(nbhd, global_degrees);
  // local scope: degree within the induced subgraph
  std::vector<int> local_deg(g.n, 0);
  for (const auto& [a, b] : nbhd.edges) {
    ++local_deg[a];
    ++local_deg[b];
  }
  return degree_filtration_pd(nbhd, local_deg);
}

std::string diagram_to_json(const PersistenceDiagram& pd) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"dim\":" << pd.dimension << ",\"pairs\":[";
  for (std::size_t i = 0; i < pd.finite.size(); ++i) {
    if (i) os << ",";
    os << "[" << pd.finite[i].first << "," << pd.finite[i].second << "]";
  }
  os << "],\"essential\":[";
  for (std::size_t i = 0; i < pd.essential.size(); ++i) {
    if (i) os << ",";
    os << pd.essential[i];
  }
  os << "]}";
  return os.str();
}

}  // namespace tri
