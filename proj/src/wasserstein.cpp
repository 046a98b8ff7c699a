#include "tri/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "tri/assignment.hpp"

namespace tri {

namespace {

double linf(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double diag_cost(const std::pair<double, double>& a) {
  return (a.second - a.first) / 2.0;
}

double default_penalty(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  double m = 0;
  for (const auto& b : d1.finite) m = std::max(m, b.second);
  for (const auto& b : d2.finite) m = std::max(m, b.second);
  return m / 2.0;
}

}  // namespace

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   const WassersteinOptions& opts) {
  if (opts.p < 1.0) throw std::invalid_argument("p must be >= 1");
  if (d1.dimension != d2.dimension)
    throw std::invalid_argument("diagram dimension mismatch");
  const double p = opts.p;
  const int n = static_cast<int>(d1.finite.size());
  const int m = static_cast<int>(d2.finite.size());

  double total = 0;
  if (n + m > 0) {
    // augmented square problem: rows = d1 points then m diagonal slots,
    // cols = d2 points then n diagonal slots
    Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n + m, n + m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j)
        cost(i, j) = std::pow(linf(d1.finite[i], d2.finite[j]), p);
      for (int j = m; j < n + m; ++j)
        cost(i, j) = std::pow(diag_cost(d1.finite[i]), p);
    }
    for (int i = n; i < n + m; ++i)
      for (int j = 0; j < m; ++j)
        cost(i, j) = std::pow(diag_cost(d2.finite[j]), p);
    total += solve_assignment(cost).cost;
  }

  const int e1 = static_cast<int>(d1.essential.size());
  const int e2 = static_cast<int>(d2.essential.size());
  if (e1 + e2 > 0) {
    double penalty =
        opts.essential_penalty ? *opts.essential_penalty : default_penalty(d1, d2);
    int s = std::max(e1, e2);
    Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        if (i < e1 && j < e2)
          cost(i, j) = std::pow(std::abs(d1.essential[i] - d2.essential[j]), p);
        else if (i < e1 || j < e2)  // unmatched essential class
          cost(i, j) = std::pow(penalty, p);
      }
    total += solve_assignment(cost).cost;
  }

  return std::pow(total, 1.0 / p);
}

std::vector<PersistenceDiagram> all_node_diagrams(const Graph& g,
                                                  const FiltrationSpec& spec, int k) {
  auto degs = degree_vector(g);
  std::vector<PersistenceDiagram> out(g.n);
  const bool weighted = spec.mode == FiltrationMode::Attribute;
  for (int u = 0; u < g.n; ++u) {
    auto nbhd = k_hop_neighborhood(g, u, k, weighted, spec.metric);
    out[u] = neighborhood_pd(g, nbhd, spec, degs);
  }
  return out;
}

DistanceMatrix pairwise_distance_matrix(const Graph& g, const PairwiseOptions& opts) {
  if (opts.k < 1) throw std::invalid_argument("k must be >= 1");
  auto diagrams = all_node_diagrams(g, opts.spec, opts.k);
  DistanceMatrix dm = DistanceMatrix::Zero(g.n, g.n);

  auto work = [&](int row_begin, int row_end) {
    for (int u = row_begin; u < row_end; ++u)
      for (int v = u + 1; v < g.n; ++v)
        dm(u, v) = wasserstein(diagrams[u], diagrams[v], opts.wopts);
  };

  int nthreads = std::max(1, opts.threads);
  if (nthreads == 1 || g.n < 2 * nthreads) {
    work(0, g.n);
  } else {
    // entries written to disjoint slots; result independent of scheduling
    std::vector<std::thread> pool;
    int chunk = (g.n + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      int lo = t * chunk, hi = std::min(g.n, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < u; ++v) dm(u, v) = dm(v, u);
  return dm;
}

}  // namespace tri
