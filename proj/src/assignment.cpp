#include "tri/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace tri {

// Jonker-Volgenant style augmenting-path algorithm with dual potentials.
AssignmentResult solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("cost matrix must be square");
  AssignmentResult res;
  if (n == 0) return res;

  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);  // p[j]: row matched to column j

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  res.row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) res.row_to_col[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) res.cost += cost(i, res.row_to_col[i]);
  return res;
}

}  // namespace tri
