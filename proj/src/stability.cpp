#include "tri/stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tri/assignment.hpp"

namespace tri {

namespace {

FiltrationSpec degree_spec() {
  FiltrationSpec s;
  s.mode = FiltrationMode::Degree;
  return s;
}

DistanceMatrix within_graph_dk(const Graph& g, int k) {
  PairwiseOptions opts;
  opts.spec = degree_spec();
  opts.k = k;
  return pairwise_distance_matrix(g, opts);
}

double average_degree(const TimrGraph& t) {
  double edges = t.w_joint.cast<double>().sum() / 2.0;
  return 2.0 * edges / static_cast<double>(t.w_joint.rows());
}

}  // namespace

LocalKDistanceResult local_k_distance(const Graph& g1, const Graph& g2, int k) {
  if (g1.n != g2.n) throw std::invalid_argument("node-count mismatch");
  auto d1 = all_node_diagrams(g1, degree_spec(), k);
  auto d2 = all_node_diagrams(g2, degree_spec(), k);
  Eigen::MatrixXd cost(g1.n, g1.n);
  for (int u = 0; u < g1.n; ++u)
    for (int v = 0; v < g1.n; ++v) cost(u, v) = wasserstein(d1[u], d2[v]);
  auto sol = solve_assignment(cost);
  LocalKDistanceResult res;
  res.value = sol.cost;
  res.best_bijection = sol.row_to_col;
  res.per_node_costs.resize(g1.n);
  for (int u = 0; u < g1.n; ++u)
    res.per_node_costs[u] = cost(u, sol.row_to_col[u]);
  return res;
}

StabilityReport check_degree_stability(const Graph& g1, const Graph& g2, int k,
                                       double eps1, double eps2) {
  if (g1.n != g2.n) throw std::invalid_argument("node-count mismatch");
  if (g1.edge_count() != g2.edge_count())
    throw std::invalid_argument("edge-count mismatch (same size required)");

  auto dm1 = within_graph_dk(g1, k);
  auto dm2 = within_graph_dk(g2, k);
  StabilityReport rep;
  rep.alpha_plus = average_degree(build_timr(g1, dm1, eps1, eps2));
  rep.alpha_minus = average_degree(build_timr(g2, dm2, eps1, eps2));
  rep.local_distance = local_k_distance(g1, g2, k).value;

  // r0: minimum positive gap among the pooled distinct within-graph d_k values
  std::vector<double> vals;
  for (int u = 0; u < g1.n; ++u)
    for (int v = u + 1; v < g1.n; ++v) {
      vals.push_back(dm1(u, v));
      vals.push_back(dm2(u, v));
    }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
             vals.end());
  double r0 = 0;
  for (std::size_t i = 1; i < vals.size(); ++i)
    if (double gap = vals[i] - vals[i - 1]; r0 == 0 || gap < r0) r0 = gap;
  rep.r0 = r0;
  rep.degenerate_r0 = (r0 == 0);

  const double m = static_cast<double>(g1.n);
  const double M = m * (m - 1) / 2.0;
  double lhs = std::abs(rep.alpha_plus - rep.alpha_minus);
  rep.zero_distance_case = rep.local_distance <= 1e-12;
  if (!rep.degenerate_r0) {
    rep.K = (2.0 / m) * (2.0 * M / r0);
    rep.inequality_holds = lhs <= rep.K * rep.local_distance + 1e-9;
  } else {
    // no positive gap means K blows up in the limit r0 -> 0, so the bound
    // is vacuous for positive distances and reduces to lhs = 0 otherwise
    rep.inequality_holds = !rep.zero_distance_case || lhs <= 1e-9;
  }
  if (rep.zero_distance_case) rep.zero_implies_equal = lhs <= 1e-9;
  return rep;
}

double algebraic_connectivity(const Graph& g) {
  if (g.n < 2) throw std::invalid_argument("need at least 2 nodes");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int u = 0; u < g.n; ++u) {
    lap(u, u) = g.degree(u);
    for (int v : g.adj[u]) lap(u, v) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  double l2 = es.eigenvalues()(1);
  return std::max(0.0, l2);  // clamp eigensolver noise around zero
}

ConjectureReport conjecture_probe(const Graph& g, std::pair<int, int> edge_to_add,
                                  int k, double eps1, double eps2,
                                  const FiltrationSpec& spec) {
  auto [a, b] = edge_to_add;
  if (a == b || a < 0 || b < 0 || a >= g.n || b >= g.n)
    throw std::invalid_argument("invalid edge");
  if (g.has_edge(a, b)) throw std::invalid_argument("edge already present");

  Graph gp = g;
  gp.add_edge(a, b);

  PairwiseOptions opts;
  opts.spec = spec;
  opts.k = k;
  auto dm = pairwise_distance_matrix(g, opts);
  auto dmp = pairwise_distance_matrix(gp, opts);
  auto t = build_timr(g, dm, eps1, eps2);
  auto tp = build_timr(gp, dmp, eps1, eps2);

  ConjectureReport rep;
  rep.lambda2_g = algebraic_connectivity(g);
  rep.lambda2_g_prime = algebraic_connectivity(gp);
  rep.lambda2_t = algebraic_connectivity(t.joint_graph(g));
  rep.lambda2_t_prime = algebraic_connectivity(tp.joint_graph(gp));
  rep.lhs = std::abs(rep.lambda2_t_prime - rep.lambda2_t);
  rep.rhs = std::abs(rep.lambda2_g_prime - rep.lambda2_g);
  if (spec.mode == FiltrationMode::Attribute)
    rep.timr_identical = (t.w_topo_plus == tp.w_topo_plus) &&
                         (t.w_topo_minus == tp.w_topo_minus);
  return rep;
}

}  // namespace tri
