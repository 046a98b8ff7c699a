#include "tri/model.hpp"

#include <cmath>
#include <stdexcept>

namespace tri {

TopoLaplacian topo_laplacian(const TimrGraph& timr, double sigma, int rho) {
  if (sigma < 0 || sigma > 1) throw std::invalid_argument("sigma must be in [0,1]");
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  const int n = static_cast<int>(timr.w_joint.rows());
  Eigen::MatrixXd base =
      timr.w_joint.cast<double>() + Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd wt = base;
  for (int i = 1; i < rho; ++i) wt = wt * base;
  Eigen::VectorXd d = wt.rowwise().sum();  // >= 1 thanks to the identity term
  Eigen::VectorXd dl = d.array().pow(-sigma);
  Eigen::VectorXd dr = d.array().pow(sigma - 1.0);
  TopoLaplacian lap;
  lap.sigma = sigma;
  lap.rho = rho;
  lap.matrix = dl.asDiagonal() * wt * dr.asDiagonal();
  return lap;
}

int series_truncation(double R, double mu) {
  return static_cast<int>(std::ceil(R * mu));
}

Eigen::MatrixXd resolvent_propagate(const Eigen::MatrixXd& L,
                                    const Eigen::MatrixXd& x, double mu,
                                    int max_i) {
  if (L.cols() != x.rows()) throw std::invalid_argument("shape mismatch");
  Eigen::MatrixXd term = x;
  Eigen::MatrixXd acc = x;
  for (int i = 1; i <= max_i; ++i) {
    term = mu * (L * term);
    acc += term;
  }
  return mu * acc;
}

Eigen::MatrixXd conv_layer(const TopoLaplacian& L, const Eigen::MatrixXd& h,
                           const Eigen::MatrixXd& theta, double mu, double R,
                           bool relu) {
  if (mu <= 0 || mu > 1) throw std::invalid_argument("mu must be in (0,1]");
  if (h.cols() != theta.rows()) throw std::invalid_argument("shape mismatch");
  Eigen::MatrixXd out =
      resolvent_propagate(L.matrix, h * theta, mu, series_truncation(R, mu));
  if (relu) out = out.cwiseMax(0.0);
  return out;
}

TriNet::TriNet(const TopoLaplacian& lap, int in_dim, int num_classes,
               const ModelConfig& cfg)
    : lap_(lap), in_dim_(in_dim), classes_(num_classes), cfg_(cfg) {
  if (cfg.mu <= 0 || cfg.mu > 1) throw std::invalid_argument("mu must be in (0,1]");
  if (cfg.R < 2 || cfg.R > 50) throw std::invalid_argument("R must be in [2,50]");
  if (cfg.stacks < 1) throw std::invalid_argument("stacks must be >= 1");
  max_i_ = series_truncation(cfg.R, cfg.mu);
}

ModelParams TriNet::init_params(std::mt19937& rng) const {
  // symmetric-uniform init scaled by fan-in + fan-out
  auto make = [&](int rows, int cols) {
    double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
  };
  ModelParams p;
  for (int s = 0; s < cfg_.stacks; ++s) {
    p.theta0.push_back(make(in_dim_, cfg_.hidden));
    p.theta1.push_back(make(cfg_.hidden, classes_));
  }
  return p;
}

namespace {

Eigen::MatrixXd dropout_mask(int rows, int cols, double rate, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  double keep = 1.0 - rate;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = (u(rng) < keep) ? 1.0 / keep : 0.0;
  return m;
}

}  // namespace

Eigen::MatrixXd TriNet::logits(const Eigen::MatrixXd& x, const ModelParams& params,
                               std::mt19937* rng) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), classes_);
  for (int s = 0; s < cfg_.stacks; ++s) {
    Eigen::MatrixXd x0 = x;
    if (rng && cfg_.dropout > 0)
      x0 = x0.cwiseProduct(
          dropout_mask((int)x.rows(), (int)x.cols(), cfg_.dropout, *rng));
    Eigen::MatrixXd h1 =
        resolvent_propagate(lap_.matrix, x0 * params.theta0[s], cfg_.mu, max_i_)
            .cwiseMax(0.0);
    if (rng && cfg_.dropout > 0)
      h1 = h1.cwiseProduct(
          dropout_mask((int)h1.rows(), (int)h1.cols(), cfg_.dropout, *rng));
    out += resolvent_propagate(lap_.matrix, h1 * params.theta1[s], cfg_.mu, max_i_);
  }
  return out / static_cast<double>(cfg_.stacks);
}

namespace {

// softmax cross-entropy over masked rows; fills dz (same shape as z) if given
double masked_ce(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                 const std::vector<uint8_t>& mask, Eigen::MatrixXd* dz) {
  int count = 0;
  for (uint8_t m : mask) count += m ? 1 : 0;
  if (count == 0) throw std::invalid_argument("no labeled training nodes");
  if (dz) dz->setZero(z.rows(), z.cols());
  double loss = 0;
  for (int u = 0; u < z.rows(); ++u) {
    if (!mask[u]) continue;
    Eigen::RowVectorXd row = z.row(u);
    double mx = row.maxCoeff();
    Eigen::RowVectorXd e = (row.array() - mx).exp();
    double zsum = e.sum();
    int y = labels[u];
    if (y < 0 || y >= z.cols()) throw std::invalid_argument("bad label");
    loss += -(row(y) - mx - std::log(zsum));
    if (dz) {
      dz->row(u) = e / zsum / static_cast<double>(count);
      (*dz)(u, y) -= 1.0 / static_cast<double>(count);
    }
  }
  return loss / static_cast<double>(count);
}

}  // namespace

double TriNet::loss(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                    const std::vector<uint8_t>& mask,
                    const ModelParams& params) const {
  Eigen::MatrixXd z = logits(x, params, nullptr);
  double l = masked_ce(z, labels, mask, nullptr);
  for (int s = 0; s < cfg_.stacks; ++s)
    l += cfg_.l2 * (params.theta0[s].squaredNorm() + params.theta1[s].squaredNorm());
  return l;
}

LossGrads TriNet::loss_and_grads(const Eigen::MatrixXd& x,
                                 const std::vector<int>& labels,
                                 const std::vector<uint8_t>& mask,
                                 const ModelParams& params,
                                 std::mt19937* rng) const {
  const double mu = cfg_.mu;
  const auto& L = lap_.matrix;
  Eigen::MatrixXd Lt = L.transpose();

  struct StackState {
    Eigen::MatrixXd x0, m0, h1, h1d, a1;
  };
  std::vector<StackState> st(cfg_.stacks);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(x.rows(), classes_);
  for (int s = 0; s < cfg_.stacks; ++s) {
    auto& t = st[s];
    t.x0 = x;
    if (rng && cfg_.dropout > 0)
      t.x0 = t.x0.cwiseProduct(
          dropout_mask((int)x.rows(), (int)x.cols(), cfg_.dropout, *rng));
    t.a1 = resolvent_propagate(L, t.x0 * params.theta0[s], mu, max_i_);
    t.h1 = t.a1.cwiseMax(0.0);
    t.h1d = t.h1;
    if (rng && cfg_.dropout > 0) {
      t.m0 = dropout_mask((int)t.h1.rows(), (int)t.h1.cols(), cfg_.dropout, *rng);
      t.h1d = t.h1.cwiseProduct(t.m0);
    }
    z += resolvent_propagate(L, t.h1d * params.theta1[s], mu, max_i_);
  }
  z /= static_cast<double>(cfg_.stacks);

  LossGrads out;
  Eigen::MatrixXd dz;
  out.loss = masked_ce(z, labels, mask, &dz);
  for (int s = 0; s < cfg_.stacks; ++s)
    out.loss +=
        cfg_.l2 * (params.theta0[s].squaredNorm() + params.theta1[s].squaredNorm());

  Eigen::MatrixXd dz_s = dz / static_cast<double>(cfg_.stacks);
  // resolvent propagation is linear, its adjoint is the same series in L^T
  Eigen::MatrixXd pdz = resolvent_propagate(Lt, dz_s, mu, max_i_);
  for (int s = 0; s < cfg_.stacks; ++s) {
    auto& t = st[s];
    Eigen::MatrixXd dtheta1 =
        t.h1d.transpose() * pdz + 2.0 * cfg_.l2 * params.theta1[s];
    Eigen::MatrixXd dh1d = pdz * params.theta1[s].transpose();
    Eigen::MatrixXd dh1 = dh1d;
    if (t.m0.size() > 0) dh1 = dh1.cwiseProduct(t.m0);
    Eigen::MatrixXd da1 =
        dh1.cwiseProduct((t.a1.array() > 0.0).cast<double>().matrix());
    Eigen::MatrixXd pda1 = resolvent_propagate(Lt, da1, mu, max_i_);
    Eigen::MatrixXd dtheta0 =
        t.x0.transpose() * pda1 + 2.0 * cfg_.l2 * params.theta0[s];
    out.d_theta0.push_back(std::move(dtheta0));
    out.d_theta1.push_back(std::move(dtheta1));
  }
  return out;
}

double accuracy(const Eigen::MatrixXd& logits, const std::vector<int>& labels,
                const std::vector<uint8_t>& mask) {
  int correct = 0, total = 0;
  for (int u = 0; u < logits.rows(); ++u) {
    if (!mask[u]) continue;
    int best = 0;
    for (int c = 1; c < logits.cols(); ++c)
      if (logits(u, c) > logits(u, best)) best = c;
    correct += (best == labels[u]) ? 1 : 0;
    ++total;
  }
  return total ? static_cast<double>(correct) / total : 0.0;
}

namespace {

struct Adam {
  Eigen::MatrixXd m, v;
  int t = 0;
  void step(Eigen::MatrixXd& w, const Eigen::MatrixXd& g, double lr) {
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    if (m.size() == 0) {
      m = Eigen::MatrixXd::Zero(w.rows(), w.cols());
      v = m;
    }
    ++t;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g.cwiseProduct(g);
    double bc1 = 1 - std::pow(b1, t), bc2 = 1 - std::pow(b2, t);
    w -= (lr * (m / bc1).array() / ((v / bc2).array().sqrt() + eps)).matrix();
  }
};

}  // namespace

TrainReport train(const Graph& g, const TopoLaplacian& lap,
                  const Eigen::MatrixXd& x, const ModelConfig& cfg,
                  ModelParams* out_params) {
  g.validate();
  int classes = 0;
  for (int l : g.labels) classes = std::max(classes, l + 1);
  if (classes < 2) throw std::invalid_argument("need at least 2 classes");

  TriNet net(lap, static_cast<int>(x.cols()), classes, cfg);
  std::mt19937 rng(cfg.seed);
  ModelParams params = net.init_params(rng);
  std::mt19937 drop_rng(cfg.seed + 1);

  std::vector<Adam> opt0(cfg.stacks), opt1(cfg.stacks);
  double last_loss = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto lg = net.loss_and_grads(x, g.labels, g.train_mask, params, &drop_rng);
    last_loss = lg.loss;
    for (int s = 0; s < cfg.stacks; ++s) {
      opt0[s].step(params.theta0[s], lg.d_theta0[s], cfg.lr);
      opt1[s].step(params.theta1[s], lg.d_theta1[s], cfg.lr);
    }
  }

  Eigen::MatrixXd z = net.logits(x, params, nullptr);
  TrainReport rep;
  rep.train_acc = accuracy(z, g.labels, g.train_mask);
  rep.val_acc = accuracy(z, g.labels, g.val_mask);
  rep.test_acc = accuracy(z, g.labels, g.test_mask);
  rep.final_loss = last_loss;
  rep.epochs = cfg.epochs;
  rep.seed = cfg.seed;
  if (out_params) *out_params = std::move(params);
  return rep;
}

}  // namespace tri
