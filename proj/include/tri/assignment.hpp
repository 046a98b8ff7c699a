#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tri {

struct AssignmentResult {
  double cost = 0;
  std::vector<int> row_to_col;  // row i matched to column row_to_col[i]
};

/// Exact minimum-cost perfect matching on a square cost matrix,
/// O(n^3) shortest augmenting path with potentials. Deterministic.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace tri
