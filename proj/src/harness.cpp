#include "tri/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tri {

Graph random_attack(const Graph& g, const AttackConfig& cfg) {
  if (cfg.ratio < 0 || cfg.ratio > 1)
    throw std::invalid_argument("attack ratio must be in [0,1]");
  long count = std::lround(cfg.ratio * static_cast<double>(g.edge_count()));
  long capacity = static_cast<long>(g.n) * (g.n - 1) / 2 -
                  static_cast<long>(g.edge_count());
  if (count > capacity)
    throw std::invalid_argument("not enough non-edge pairs for attack");

  Graph out = g;
  std::mt19937 rng(cfg.seed);
  std::uniform_int_distribution<int> pick(0, g.n - 1);
  long injected = 0;
  while (injected < count) {
    int u = pick(rng), v = pick(rng);
    if (u == v || out.has_edge(u, v)) continue;
    out.add_edge(u, v);
    ++injected;
  }
  return out;
}

Variant parse_variant(const std::string& name) {
  if (name == "full") return Variant::Full;
  if (name == "no_timr") return Variant::NoTimr;
  if (name == "no_stan") return Variant::NoStan;
  if (name == "stn_only") return Variant::StnOnly;
  throw std::invalid_argument("unknown variant: " + name);
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::NoTimr: return "no_timr";
    case Variant::NoStan: return "no_stan";
    case Variant::StnOnly: return "stn_only";
  }
  throw std::invalid_argument("unknown variant");
}

RunResult run_variant(const Graph& g, Variant variant, const PipelineConfig& cfg,
                      unsigned seed) {
  auto dm = cached_distance_matrix(g, cfg.pairwise, cfg.use_cache);

  TimrGraph timr;
  if (variant == Variant::NoTimr) {
    timr = identity_timr(g);
  } else {
    double e1 = cfg.eps1, e2 = cfg.eps2;
    if (!cfg.raw_eps) std::tie(e1, e2) = quantile_thresholds(dm, cfg.q1, cfg.q2);
    timr = build_timr(g, dm, e1, e2);
  }

  Eigen::MatrixXd x = g.features;
  if (variant != Variant::NoStan) {
    StanConfig sc = cfg.stan;
    sc.variant =
        variant == Variant::StnOnly ? StanVariant::SelfOnly : StanVariant::Full;
    x = run_stan(g, x, dm, sc);
  }

  ModelConfig mc = cfg.model;
  mc.seed = seed;
  auto lap = topo_laplacian(timr, mc.sigma, mc.rho);

  RunResult res;
  res.report = train(g, lap, x, mc);
  res.eps1 = timr.eps1;
  res.eps2 = timr.eps2;
  res.edges_added = timr.edges_added(g);
  res.edges_removed = timr.edges_removed(g);
  return res;
}

namespace {

VariantStats summarize(std::vector<double> accs) {
  VariantStats s;
  s.accs = std::move(accs);
  double n = static_cast<double>(s.accs.size());
  s.mean = std::accumulate(s.accs.begin(), s.accs.end(), 0.0) / n;
  double ss = 0;
  for (double a : s.accs) ss += (a - s.mean) * (a - s.mean);
  s.stddev = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return s;
}

}  // namespace

AblationReport run_ablation(const Graph& g, const std::vector<Variant>& variants,
                            const PipelineConfig& cfg, int runs,
                            unsigned base_seed) {
  if (runs < 1) throw std::invalid_argument("need at least one run");
  AblationReport rep;
  rep.runs = runs;
  rep.base_seed = base_seed;
  for (Variant v : variants) {
    std::vector<double> accs;
    for (int r = 0; r < runs; ++r)
      accs.push_back(run_variant(g, v, cfg, base_seed + r).report.test_acc);
    rep.variants[variant_name(v)] = summarize(std::move(accs));
  }
  return rep;
}

std::vector<EpsCell> sweep_eps(const Graph& g, const std::vector<double>& grid1,
                               const std::vector<double>& grid2,
                               const PipelineConfig& cfg, int runs,
                               unsigned base_seed) {
  std::vector<EpsCell> cells;
  for (double e1 : grid1) {
    for (double e2 : grid2) {
      if (!(e1 < e2)) continue;  // invalid pair, skipped
      PipelineConfig c = cfg;
      c.raw_eps = true;
      c.eps1 = e1;
      c.eps2 = e2;
      EpsCell cell;
      cell.eps1 = e1;
      cell.eps2 = e2;
      std::vector<double> accs;
      for (int r = 0; r < runs; ++r) {
        auto res = run_variant(g, Variant::Full, c, base_seed + r);
        accs.push_back(res.report.test_acc);
        if (r == 0) {
          cell.edges_added = res.edges_added;
          cell.edges_removed = res.edges_removed;
        }
      }
      auto s = summarize(std::move(accs));
      cell.mean_acc = s.mean;
      cell.stddev = s.stddev;
      cells.push_back(cell);
    }
  }
  if (cells.empty()) throw std::invalid_argument("empty valid eps grid");
  return cells;
}

std::vector<AttackCell> attack_sweep(const Graph& g,
                                     const std::vector<double>& ratios,
                                     const std::vector<Variant>& variants,
                                     const PipelineConfig& cfg, int runs,
                                     unsigned base_seed) {
  std::vector<AttackCell> out;
  for (double ratio : ratios) {
    AttackCell cell;
    cell.ratio = ratio;
    std::map<std::string, std::vector<double>> accs;
    for (int r = 0; r < runs; ++r) {
      // same attacked graph for every variant within a run
      Graph attacked = random_attack(g, {ratio, base_seed + 1000u * (r + 1)});
      for (Variant v : variants)
        accs[variant_name(v)].push_back(
            run_variant(attacked, v, cfg, base_seed + r).report.test_acc);
    }
    for (auto& [name, a] : accs) cell.variants[name] = summarize(std::move(a));
    out.push_back(std::move(cell));
  }
  return out;
}

Graph planted_partition(const PlantedPartitionConfig& cfg) {
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int n = cfg.n;
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = (i < n / 2) ? 0 : 1;

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double p = (labels[i] == labels[j]) ? cfg.p_in : cfg.p_out;
      if (u(rng) < p) edges.emplace_back(i, j);
    }
  Graph g = Graph::from_edges(n, edges);
  g.labels = labels;

  const double col_shift = cfg.mean_shift / std::sqrt((double)cfg.feature_dim);
  g.features.resize(n, cfg.feature_dim);
  for (int i = 0; i < n; ++i) {
    double mean = labels[i] == 0 ? col_shift : -col_shift;
    double scale = labels[i] == 0 ? cfg.scale0 : cfg.scale1;
    for (int j = 0; j < cfg.feature_dim; ++j)
      g.features(i, j) = mean + scale * gauss(rng);
  }

  g.train_mask.assign(n, 0);
  g.val_mask.assign(n, 0);
  g.test_mask.assign(n, 0);
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
      if (labels[i] == cls) ids.push_back(i);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::size_t ntrain = static_cast<std::size_t>(cfg.train_frac * ids.size());
    std::size_t nval = static_cast<std::size_t>(cfg.val_frac * ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i < ntrain)
        g.train_mask[ids[i]] = 1;
      else if (i < ntrain + nval)
        g.val_mask[ids[i]] = 1;
      else
        g.test_mask[ids[i]] = 1;
    }
  }
  return g;
}

namespace {

// regularized incomplete beta, continued-fraction evaluation
double betacf(double a, double b, double x) {
  const int max_iter = 200;
  const double eps = 3e-12, fpmin = 1e-300;
  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

double betainc(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
              a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(ln);
  if (x < (a + 1) / (a + b + 2)) return bt * betacf(a, b, x) / a;
  return 1 - bt * betacf(b, a, 1 - x) / b;
}

}  // namespace

double welch_t_pvalue(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("need at least 2 samples per group");
  auto stats = [](const std::vector<double>& x) {
    double n = static_cast<double>(x.size());
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= (n - 1);
    return std::pair(mean, var);
  };
  auto [ma, va] = stats(a);
  auto [mb, vb] = stats(b);
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double se2 = va / na + vb / nb;
  if (se2 <= 0) return ma > mb ? 0.0 : 1.0;
  double t = (ma - mb) / std::sqrt(se2);
  double df = se2 * se2 /
              (va * va / (na * na * (na - 1)) + vb * vb / (nb * nb * (nb - 1)));
  // one-sided: P(T > t)
  double x = df / (df + t * t);
  double tail = 0.5 * betainc(df / 2.0, 0.5, x);
  return t > 0 ? tail : 1.0 - tail;
}

}  // namespace tri
