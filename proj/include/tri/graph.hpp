#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace tri {

enum class Metric { Euclidean, Hamming };

Metric parse_metric(const std::string& name);

/// Attributed undirected graph. Directed input is symmetrized as
/// W' = (W^T + W)/2 and binarized at > 0 on ingestion; no self-loops.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists
  Eigen::MatrixXd features;           // n x F (may be 0 x 0)
  std::vector<int> labels;            // -1 = unlabeled
  std::vector<uint8_t> train_mask, val_mask, test_mask;

  static Graph from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges,
                          bool directed = false);

  bool has_edge(int u, int v) const;
  int degree(int u) const { return static_cast<int>(adj[u].size()); }
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edge_list() const;  // u < v, sorted
  void add_edge(int u, int v);
  void validate() const;
};

struct Neighborhood {
  int center = 0;
  int hop_radius = 0;
  std::vector<int> members;                   // sorted, includes center
  std::vector<std::pair<int, int>> edges;     // induced, u < v in member ids
  std::vector<double> edge_weights;           // tau per edge; empty if unweighted
  bool weighted = false;
};

/// All nodes within shortest-path distance k of u, with the induced edge set.
/// In weighted mode tau_vw = ||X_v - X_w|| under the chosen metric.
Neighborhood k_hop_neighborhood(const Graph& g, int u, int k, bool weighted,
                                Metric metric = Metric::Euclidean);

std::vector<int> degree_vector(const Graph& g);

double feature_distance(const Graph& g, int v, int w, Metric metric);

}  // namespace tri
