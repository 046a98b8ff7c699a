#pragma once

#include <random>

#include "tri/timr.hpp"

namespace tri {

struct ModelConfig {
  double mu = 0.1;      // resolvent regularization, (0, 1]
  double sigma = 0.5;   // Laplacian normalization exponent, [0, 1]
  int rho = 1;          // matrix power of (W^topo + I)
  double R = 10;        // series coefficient, truncation at ceil(R * mu)
  int hidden = 16;
  double dropout = 0.5;
  double l2 = 5e-4;
  double lr = 0.01;
  int epochs = 200;
  int stacks = 1;       // parallel conv stacks, averaged
  unsigned seed = 0;
};

struct TopoLaplacian {
  Eigen::MatrixXd matrix;  // (D~)^-sigma W~ (D~)^(sigma-1)
  double sigma = 0.5;
  int rho = 1;
};

TopoLaplacian topo_laplacian(const TimrGraph& timr, double sigma, int rho);

/// Truncated resolvent series mu * sum_{i=0}^{max_i} (mu L)^i X by iterated
/// products; max_i = ceil(R * mu).
Eigen::MatrixXd resolvent_propagate(const Eigen::MatrixXd& L,
                                    const Eigen::MatrixXd& x, double mu,
                                    int max_i);

int series_truncation(double R, double mu);

Eigen::MatrixXd conv_layer(const TopoLaplacian& L, const Eigen::MatrixXd& h,
                           const Eigen::MatrixXd& theta, double mu, double R,
                           bool relu);

/// Two-layer classifier over the topological Laplacian: one weight pair
/// per parallel stack, logits averaged over stacks.
struct ModelParams {
  std::vector<Eigen::MatrixXd> theta0, theta1;
};

struct TrainReport {
  double train_acc = 0, val_acc = 0, test_acc = 0;
  double final_loss = 0;
  int epochs = 0;
  unsigned seed = 0;
};

struct LossGrads {
  double loss = 0;
  std::vector<Eigen::MatrixXd> d_theta0, d_theta1;
};

class TriNet {
 public:
  TriNet(const TopoLaplacian& lap, int in_dim, int num_classes,
         const ModelConfig& cfg);

  Eigen::MatrixXd logits(const Eigen::MatrixXd& x, const ModelParams& params,
                         std::mt19937* dropout_rng = nullptr) const;
  double loss(const Eigen::MatrixXd& x, const std::vector<int>& labels,
              const std::vector<uint8_t>& mask, const ModelParams& params) const;
  LossGrads loss_and_grads(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                           const std::vector<uint8_t>& mask,
                           const ModelParams& params,
                           std::mt19937* dropout_rng = nullptr) const;

  ModelParams init_params(std::mt19937& rng) const;
  const ModelConfig& config() const { return cfg_; }
  const Eigen::MatrixXd& laplacian() const { return lap_.matrix; }

 private:
  TopoLaplacian lap_;
  int in_dim_, classes_;
  ModelConfig cfg_;
  int max_i_;
};

TrainReport train(const Graph& g, const TopoLaplacian& lap,
                  const Eigen::MatrixXd& x, const ModelConfig& cfg,
                  ModelParams* out_params = nullptr);

double accuracy(const Eigen::MatrixXd& logits, const std::vector<int>& labels,
                const std::vector<uint8_t>& mask);

}  // namespace tri
