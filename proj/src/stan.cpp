#include "tri/stan.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tri {

std::map<int, double> topo_weights(int u, const DistanceMatrix& dm,
                                   const std::vector<int>& neighbors, double floor) {
  if (neighbors.empty()) throw std::invalid_argument("empty neighbor set");
  if (floor <= 0) throw std::invalid_argument("numeric_floor must be positive");
  // exponents 1/(d+floor), stabilized by subtracting the max before exp
  std::vector<double> ex(neighbors.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    ex[i] = 1.0 / (dm(u, neighbors[i]) + floor);
    mx = std::max(mx, ex[i]);
  }
  double z = 0;
  for (double& e : ex) {
    e = std::exp(e - mx);
    z += e;
  }
  std::map<int, double> w;
  for (std::size_t i = 0; i < neighbors.size(); ++i) w[neighbors[i]] = ex[i] / z;
  return w;
}

namespace {

Eigen::MatrixXd mlp_update(const Eigen::MatrixXd& x, unsigned seed) {
  // one hidden layer of the same width, tanh, seeded fixed weights
  const int f = static_cast<int>(x.cols());
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double scale = 1.0 / std::sqrt(static_cast<double>(f));
  Eigen::MatrixXd w1(f, f), w2(f, f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) w1(i, j) = dist(rng) * scale;
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) w2(i, j) = dist(rng) * scale;
  return ((x * w1).array().tanh().matrix()) * w2;
}

}  // namespace

Eigen::MatrixXd stan_step(const Graph& g, const Eigen::MatrixXd& features,
                          const DistanceMatrix& dm, const StanConfig& cfg) {
  if (features.rows() != g.n) throw std::invalid_argument("feature shape mismatch");
  if (dm.rows() != g.n) throw std::invalid_argument("distance matrix shape mismatch");

  Eigen::MatrixXd out(features.rows(), features.cols());
  for (int u = 0; u < g.n; ++u) {
    Eigen::RowVectorXd side = Eigen::RowVectorXd::Zero(features.cols());
    auto nbhd = k_hop_neighborhood(g, u, cfg.k, false);
    std::vector<int> neighbors;
    for (int v : nbhd.members)
      if (v != u) neighbors.push_back(v);
    if (!neighbors.empty() && cfg.alpha != 0.0) {
      auto w = topo_weights(u, dm, neighbors, cfg.numeric_floor);
      for (auto [v, wv] : w) {
        if (cfg.variant == StanVariant::SelfOnly)
          side += wv * features.row(u);  // subgraph+topology signal only
        else
          side += wv * features.row(v);
      }
      side *= cfg.alpha;
    }
    if (cfg.aggregate == StanAggregate::Sum)
      out.row(u) = features.row(u) + side;
    else
      out.row(u) = (features.row(u) + side) / 2.0;
  }
  if (cfg.update == StanUpdate::Mlp) out = mlp_update(out, cfg.mlp_seed);
  return out;
}

Eigen::MatrixXd run_stan(const Graph& g, const Eigen::MatrixXd& features,
                         const DistanceMatrix& dm, const StanConfig& cfg) {
  if (cfg.iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  Eigen::MatrixXd x = features;
  for (int t = 0; t < cfg.iterations; ++t) x = stan_step(g, x, dm, cfg);
  return x;
}

}  // namespace tri
