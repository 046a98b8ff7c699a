#include "tri/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace tri {

Metric parse_metric(const std::string& name) {
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "hamming") return Metric::Hamming;
  throw std::invalid_argument("unknown metric: " + name);
}

Graph Graph::from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges,
                        bool directed) {
  if (n_nodes < 0) throw std::invalid_argument("negative node count");
  Graph g;
  g.n = n_nodes;
  g.adj.assign(n_nodes, {});
  // (W^T + W)/2 > 0 is just "edge in either direction"; self-loops dropped.
  (void)directed;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n_nodes || v < 0 || v >= n_nodes)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) continue;
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::edge_count() const {
  std::size_t s = 0;
  for (const auto& nb : adj) s += nb.size();
  return s / 2;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n; ++u)
    for (int v : adj[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::add_edge(int u, int v) {
  if (u == v || has_edge(u, v)) return;
  adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
  adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
}

void Graph::validate() const {
  if (features.size() > 0 && features.rows() != n)
    throw std::invalid_argument("feature row count != n_nodes");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("label count != n_nodes");
  for (std::size_t i = 0; i < train_mask.size(); ++i)
    if (train_mask[i] + val_mask[i] + test_mask[i] > 1)
      throw std::invalid_argument("masks not disjoint");
}

double feature_distance(const Graph& g, int v, int w, Metric metric) {
  if (g.features.size() == 0) throw std::invalid_argument("graph has no features");
  if (metric == Metric::Euclidean)
    return (g.features.row(v) - g.features.row(w)).norm();
  // Hamming: feature values must be binary.
  double d = 0;
  for (int j = 0; j < g.features.cols(); ++j) {
    double a = g.features(v, j), b = g.features(w, j);
    if ((a != 0.0 && a != 1.0) || (b != 0.0 && b != 1.0))
      throw std::invalid_argument("hamming metric requires binary features");
    d += (a != b) ? 1.0 : 0.0;
  }
  return d;
}

Neighborhood k_hop_neighborhood(const Graph& g, int u, int k, bool weighted,
                                Metric metric) {
  if (u < 0 || u >= g.n) throw std::invalid_argument("invalid node id");
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[u] = 0;
  q.push(u);
  std::vector<int> members{u};
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (dist[x] == k) continue;
    for (int y : g.adj[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        members.push_back(y);
        q.push(y);
      }
    }
  }
  std::sort(members.begin(), members.end());

  Neighborhood nb;
  nb.center = u;
  nb.hop_radius = k;
  nb.members = std::move(members);
  nb.weighted = weighted;
  for (int v : nb.members) {
    for (int w : g.adj[v]) {
      if (w > v && dist[w] >= 0) {
        nb.edges.emplace_back(v, w);
        if (weighted) nb.edge_weights.push_back(feature_distance(g, v, w, metric));
      }
    }
  }
  return nb;
}

std::vector<int> degree_vector(const Graph& g) {
  std::vector<int> d(g.n);
  for (int u = 0; u < g.n; ++u) d[u] = g.degree(u);
  return d;
}

}  // namespace tri
