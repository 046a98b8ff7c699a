#pragma once

#include <array>
#include <optional>

#include "tri/wasserstein.hpp"

namespace tri {

/// The multigraph triple (W, W^topo+, W^topo-) plus the joint adjacency.
struct TimrGraph {
  Eigen::MatrixXi w;            // original binary adjacency
  Eigen::MatrixXi w_topo_plus;  // dist < eps1
  Eigen::MatrixXi w_topo_minus; // dist > eps2
  Eigen::MatrixXi w_joint;      // 1 iff w + plus - minus > 0
  double eps1 = 0, eps2 = 0;

  Graph joint_graph(const Graph& source) const;  // carries features/labels/masks
  long edges_added(const Graph& source) const;
  long edges_removed(const Graph& source) const;
};

/// (1_{has_edge}, 1_{dist < eps1}, -1_{dist > eps2}); the two indicator
/// events are mutually exclusive since eps1 < eps2.
std::array<int, 3> multiedge(double dist, bool has_edge, double eps1, double eps2);

TimrGraph build_timr(const Graph& g, const DistanceMatrix& dm, double eps1,
                     double eps2);

/// Identity rewiring: w_joint == w regardless of distances.
TimrGraph identity_timr(const Graph& g);

/// (q1, q2)-quantiles of the off-diagonal upper-triangle distances.
std::pair<double, double> quantile_thresholds(const DistanceMatrix& dm, double q1,
                                              double q2);

}  // namespace tri
