#pragma once

#include <map>

#include "tri/wasserstein.hpp"

namespace tri {

enum class StanAggregate { Sum, Mean };
enum class StanUpdate { Identity, Mlp };
enum class StanVariant { Full, SelfOnly };  // SelfOnly = the STN ablation arm

struct StanConfig {
  int iterations = 1;
  double alpha = 0.1;
  StanAggregate aggregate = StanAggregate::Sum;
  StanUpdate update = StanUpdate::Identity;
  int k = 1;                    // hop radius for the neighbor sum
  double numeric_floor = 1e-6;  // added to distances before inversion
  StanVariant variant = StanVariant::Full;
  unsigned mlp_seed = 0;        // fixed random f_up weights when update = Mlp
};

/// Normalized exp(1/(d+floor)) weights over the given neighbors;
/// computed in shifted log-space, strictly positive, sum to 1.
std::map<int, double> topo_weights(int u, const DistanceMatrix& dm,
                                   const std::vector<int>& neighbors, double floor);

Eigen::MatrixXd stan_step(const Graph& g, const Eigen::MatrixXd& features,
                          const DistanceMatrix& dm, const StanConfig& cfg);

/// cfg.iterations applications of stan_step.
Eigen::MatrixXd run_stan(const Graph& g, const Eigen::MatrixXd& features,
                         const DistanceMatrix& dm, const StanConfig& cfg);

}  // namespace tri
