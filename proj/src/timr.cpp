#include "tri/timr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tri {

std::array<int, 3> multiedge(double dist, bool has_edge, double eps1, double eps2) {
  if (!(eps1 < eps2)) throw std::invalid_argument("requires eps1 < eps2");
  if (dist < 0) throw std::invalid_argument("distance must be nonnegative");
  return {has_edge ? 1 : 0, dist < eps1 ? 1 : 0, dist > eps2 ? -1 : 0};
}

TimrGraph build_timr(const Graph& g, const DistanceMatrix& dm, double eps1,
                     double eps2) {
  if (dm.rows() != g.n || dm.cols() != g.n)
    throw std::invalid_argument("distance matrix size mismatch");
  if (!(eps1 < eps2)) throw std::invalid_argument("requires eps1 < eps2");

  TimrGraph t;
  t.eps1 = eps1;
  t.eps2 = eps2;
  t.w = Eigen::MatrixXi::Zero(g.n, g.n);
  t.w_topo_plus = Eigen::MatrixXi::Zero(g.n, g.n);
  t.w_topo_minus = Eigen::MatrixXi::Zero(g.n, g.n);
  t.w_joint = Eigen::MatrixXi::Zero(g.n, g.n);

  for (int u = 0; u < g.n; ++u) {
    for (int v = u + 1; v < g.n; ++v) {
      auto e = multiedge(dm(u, v), g.has_edge(u, v), eps1, eps2);
      int joint = (e[0] + e[1] + e[2] > 0) ? 1 : 0;
      t.w(u, v) = t.w(v, u) = e[0];
      t.w_topo_plus(u, v) = t.w_topo_plus(v, u) = e[1];
      t.w_topo_minus(u, v) = t.w_topo_minus(v, u) = -e[2];
      t.w_joint(u, v) = t.w_joint(v, u) = joint;
    }
  }
  return t;
}

TimrGraph identity_timr(const Graph& g) {
  TimrGraph t;
  t.eps1 = 0;
  t.eps2 = std::numeric_limits<double>::infinity();
  t.w = Eigen::MatrixXi::Zero(g.n, g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) t.w(u, v) = 1;
  t.w_topo_plus = Eigen::MatrixXi::Zero(g.n, g.n);
  t.w_topo_minus = Eigen::MatrixXi::Zero(g.n, g.n);
  t.w_joint = t.w;
  return t;
}

Graph TimrGraph::joint_graph(const Graph& source) const {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < w_joint.rows(); ++u)
    for (int v = u + 1; v < w_joint.cols(); ++v)
      if (w_joint(u, v)) edges.emplace_back(u, v);
  Graph out = Graph::from_edges(source.n, edges);
  out.features = source.features;
  out.labels = source.labels;
  out.train_mask = source.train_mask;
  out.val_mask = source.val_mask;
  out.test_mask = source.test_mask;
  return out;
}

long TimrGraph::edges_added(const Graph& source) const {
  long c = 0;
  for (int u = 0; u < w_joint.rows(); ++u)
    for (int v = u + 1; v < w_joint.cols(); ++v)
      if (w_joint(u, v) && !source.has_edge(u, v)) ++c;
  return c;
}

long TimrGraph::edges_removed(const Graph& source) const {
  long c = 0;
  for (int u = 0; u < w_joint.rows(); ++u)
    for (int v = u + 1; v < w_joint.cols(); ++v)
      if (!w_joint(u, v) && source.has_edge(u, v)) ++c;
  return c;
}

std::pair<double, double> quantile_thresholds(const DistanceMatrix& dm, double q1,
                                              double q2) {
  if (!(0 <= q1 && q1 < q2 && q2 <= 1))
    throw std::invalid_argument("need 0 <= q1 < q2 <= 1");
  std::vector<double> vals;
  for (int u = 0; u < dm.rows(); ++u)
    for (int v = u + 1; v < dm.cols(); ++v) vals.push_back(dm(u, v));
  if (vals.empty()) throw std::invalid_argument("empty distance matrix");
  std::sort(vals.begin(), vals.end());
  auto quantile = [&](double q) {
    double pos = q * (static_cast<double>(vals.size()) - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, vals.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return vals[lo] * (1 - frac) + vals[hi] * frac;
  };
  double e1 = quantile(q1), e2 = quantile(q2);
  if (!(e1 < e2))
    throw std::invalid_argument("degenerate quantiles: eps1 >= eps2");
  return {e1, e2};
}

}  // namespace tri
