#pragma once

#include <Eigen/Dense>
#include <optional>

#include "tri/persistence.hpp"

namespace tri {

struct WassersteinOptions {
  double p = 1.0;
  // Cost per unmatched essential class when the two diagrams disagree on
  // essential count. Default: half the max finite death observed in either
  // diagram of the pair.
  std::optional<double> essential_penalty;
};

/// p-Wasserstein distance between two diagrams with diagonal augmentation:
/// point-point cost = L_inf^p, point-diagonal cost = ((d-b)/2)^p.
/// Essential classes are matched separately on birth values.
double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   const WassersteinOptions& opts = {});

using DistanceMatrix = Eigen::MatrixXd;

struct PairwiseOptions {
  FiltrationSpec spec;
  int k = 1;
  WassersteinOptions wopts;
  int threads = 1;
};

/// Symmetric N x N matrix of Wasserstein distances between the
/// k-hop neighborhood diagrams of every node pair.
DistanceMatrix pairwise_distance_matrix(const Graph& g, const PairwiseOptions& opts);

/// Diagrams of every node's k-hop neighborhood under the given filtration.
std::vector<PersistenceDiagram> all_node_diagrams(const Graph& g,
                                                  const FiltrationSpec& spec, int k);

}  // namespace tri
