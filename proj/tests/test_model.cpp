#include <doctest.h>

#include <random>

#include "tri/harness.hpp"
#include "tri/model.hpp"

using namespace tri;

namespace {

TopoLaplacian lap_of(const Graph& g, double sigma = 0.5, int rho = 1) {
  return topo_laplacian(identity_timr(g), sigma, rho);
}

}  // namespace

TEST_CASE("topo laplacian on the single edge") {
  auto g = Graph::from_edges(2, {{0, 1}});
  auto lap = lap_of(g, 0.5, 1);
  // W~ = [[1,1],[1,1]], degrees 2: D^-1/2 W~ D^-1/2 has all entries 1/2
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(lap.matrix(i, j) == doctest::Approx(0.5));
}

TEST_CASE("sigma = 1 gives a row-stochastic operator") {
  std::mt19937 rng(2);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      if (rng() % 3 == 0) edges.emplace_back(i, j);
  auto g = Graph::from_edges(9, edges);
  for (int rho : {1, 2, 3}) {
    auto lap = lap_of(g, 1.0, rho);
    Eigen::VectorXd rows = lap.matrix.rowwise().sum();
    for (int i = 0; i < g.n; ++i) CHECK(rows(i) == doctest::Approx(1.0));
  }
}

TEST_CASE("rho raises W~ to a matrix power before normalizing") {
  auto g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  auto t = identity_timr(g);
  Eigen::MatrixXd base = t.w_joint.cast<double>() + Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd sq = base * base;
  Eigen::VectorXd d = sq.rowwise().sum();
  auto lap = topo_laplacian(t, 0.5, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(lap.matrix(i, j) ==
            doctest::Approx(sq(i, j) / std::sqrt(d(i) * d(j))));
  CHECK_THROWS(topo_laplacian(t, -0.1, 1));
  CHECK_THROWS(topo_laplacian(t, 0.5, 0));
}

TEST_CASE("series truncation index") {
  CHECK(series_truncation(10, 0.1) == 1);
  CHECK(series_truncation(10, 0.55) == 6);
  CHECK(series_truncation(2, 1.0) == 2);
  CHECK(series_truncation(10, 0.05) == 1);
}

TEST_CASE("truncated resolvent matches the explicit power sum and the solve") {
  auto g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  auto L = lap_of(g).matrix;
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 3);
  double mu = 0.3;

  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 3);
  Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(4, 4);
  for (int i = 0; i <= 5; ++i) {
    expect += pw * x;
    pw = mu * (L * pw);
  }
  expect *= mu;
  CHECK((resolvent_propagate(L, x, mu, 5) - expect).cwiseAbs().maxCoeff() < 1e-12);

  // with many terms the series converges to mu (I - mu L)^{-1} x since
  // the normalized operator has spectral radius <= 1 and mu < 1
  Eigen::MatrixXd closed =
      mu * (Eigen::MatrixXd::Identity(4, 4) - mu * L).partialPivLu().solve(x);
  CHECK((resolvent_propagate(L, x, mu, 80) - closed).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS(resolvent_propagate(L, Eigen::MatrixXd::Zero(5, 2), mu, 3));
}

TEST_CASE("resolvent adjoint identity") {
  std::mt19937 rng(8);
  auto g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  auto L = lap_of(g, 0.3).matrix;
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(5, 2);
  Eigen::MatrixXd y = Eigen::MatrixXd::Random(5, 2);
  double lhs = (resolvent_propagate(L, x, 0.4, 7).cwiseProduct(y)).sum();
  double rhs = (x.cwiseProduct(resolvent_propagate(L.transpose(), y, 0.4, 7))).sum();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  (void)rng;
}

TEST_CASE("conv layer validation and relu") {
  auto g = Graph::from_edges(2, {{0, 1}});
  auto lap = lap_of(g);
  Eigen::MatrixXd h(2, 2);
  h << 1, -1, 2, -2;
  Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(2, 2);
  auto out = conv_layer(lap, h, theta, 0.5, 10, true);
  CHECK(out.minCoeff() >= 0.0);
  CHECK_THROWS(conv_layer(lap, h, theta, 0.0, 10, false));
  CHECK_THROWS(conv_layer(lap, h, Eigen::MatrixXd::Identity(3, 3), 0.5, 10, false));
}

TEST_CASE("analytic gradients match central differences") {
  PlantedPartitionConfig pcfg;
  pcfg.n = 14;
  pcfg.p_in = 0.5;
  pcfg.p_out = 0.15;
  pcfg.feature_dim = 3;
  pcfg.train_frac = 0.4;
  pcfg.seed = 5;
  auto g = planted_partition(pcfg);

  ModelConfig cfg;
  cfg.hidden = 4;
  cfg.dropout = 0.0;
  cfg.l2 = 1e-3;
  cfg.stacks = 2;
  auto lap = topo_laplacian(identity_timr(g), cfg.sigma, cfg.rho);
  TriNet net(lap, 3, 2, cfg);
  std::mt19937 rng(3);
  auto params = net.init_params(rng);

  auto lg = net.loss_and_grads(g.features, g.labels, g.train_mask, params);
  CHECK(lg.loss == doctest::Approx(
                       net.loss(g.features, g.labels, g.train_mask, params)));

  const double h = 1e-6;
  auto check_block = [&](std::vector<Eigen::MatrixXd>& block,
                         const std::vector<Eigen::MatrixXd>& grads) {
    for (std::size_t s = 0; s < block.size(); ++s)
      for (int i = 0; i < block[s].rows(); ++i)
        for (int j = 0; j < block[s].cols(); ++j) {
          double keep = block[s](i, j);
          block[s](i, j) = keep + h;
          double up = net.loss(g.features, g.labels, g.train_mask, params);
          block[s](i, j) = keep - h;
          double dn = net.loss(g.features, g.labels, g.train_mask, params);
          block[s](i, j) = keep;
          CHECK(grads[s](i, j) ==
                doctest::Approx((up - dn) / (2 * h)).epsilon(1e-4));
        }
  };
  check_block(params.theta0, lg.d_theta0);
  check_block(params.theta1, lg.d_theta1);
}

TEST_CASE("accuracy with argmax ties broken to the lowest index") {
  Eigen::MatrixXd z(2, 2);
  z << 1.0, 1.0, 0.0, 2.0;
  std::vector<int> labels{0, 1};
  std::vector<uint8_t> mask{1, 1};
  CHECK(accuracy(z, labels, mask) == doctest::Approx(1.0));
  mask = {0, 0};
  CHECK(accuracy(z, labels, mask) == 0.0);
}

TEST_CASE("training is seed deterministic and fits an easy toy graph") {
  PlantedPartitionConfig pcfg;
  pcfg.n = 30;
  pcfg.p_in = 0.5;
  pcfg.p_out = 0.02;
  pcfg.feature_dim = 4;
  pcfg.mean_shift = 3.0;
  pcfg.seed = 11;
  auto g = planted_partition(pcfg);

  ModelConfig cfg;
  cfg.hidden = 8;
  cfg.epochs = 120;
  cfg.dropout = 0.2;
  cfg.seed = 42;
  auto lap = topo_laplacian(identity_timr(g), cfg.sigma, cfg.rho);

  auto a = train(g, lap, g.features, cfg);
  auto b = train(g, lap, g.features, cfg);
  CHECK(a.train_acc == b.train_acc);
  CHECK(a.test_acc == b.test_acc);
  CHECK(a.final_loss == b.final_loss);
  CHECK(a.test_acc >= 0.8);  // widely separated classes must be learnable

  cfg.seed = 43;
  auto c = train(g, lap, g.features, cfg);
  CHECK(c.seed == 43);

  // two stacks also run deterministically
  cfg.stacks = 2;
  auto d1 = train(g, lap, g.features, cfg);
  auto d2 = train(g, lap, g.features, cfg);
  CHECK(d1.final_loss == d2.final_loss);
}
