#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "tri/harness.hpp"
#include "tri/stability.hpp"

using json = nlohmann::ordered_json;
using namespace tri;

namespace {

struct DatasetOpts {
  DatasetPaths paths;
  void attach(CLI::App* cmd) {
    cmd->add_option("--edges", paths.edges, "edge list CSV (u,v per line)")
        ->required();
    cmd->add_option("--features", paths.features, "feature matrix CSV");
    cmd->add_option("--labels", paths.labels, "label CSV (node,class)");
    cmd->add_option("--train-mask", paths.train_mask, "train node-id CSV");
    cmd->add_option("--val-mask", paths.val_mask, "validation node-id CSV");
    cmd->add_option("--test-mask", paths.test_mask, "test node-id CSV");
    cmd->add_option("--nodes", paths.n_nodes, "node count (default: infer)");
    cmd->add_flag("--directed", paths.directed,
                  "input is directed; symmetrize on ingestion");
  }
};

struct FiltrationOpts {
  std::string filtration = "degree";
  std::string metric = "euclidean";
  std::string degree_scope = "global";
  int k = 1;
  double p = 1.0;
  int threads = 1;
  bool cache = false;
  void attach(CLI::App* cmd) {
    cmd->add_option("--filtration", filtration, "degree|attribute");
    cmd->add_option("--metric", metric, "euclidean|hamming");
    cmd->add_option("--degree-scope", degree_scope, "global|local");
    cmd->add_option("--k", k, "hop radius");
    cmd->add_option("--p", p, "Wasserstein order");
    cmd->add_option("--threads", threads, "worker threads for pairwise distances");
    cmd->add_flag("--cache", cache, "cache distance matrices on disk");
  }
  PairwiseOptions pairwise() const {
    PairwiseOptions o;
    o.spec.mode = parse_filtration_mode(filtration);
    o.spec.metric = parse_metric(metric);
    o.spec.degree_scope =
        degree_scope == "local" ? DegreeScope::Local : DegreeScope::Global;
    o.k = k;
    o.wopts.p = p;
    o.threads = threads;
    return o;
  }
};

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << j.dump(2) << "\n";
  }
}

// eps values accept raw numbers or quantile syntax "q0.55"
double resolve_eps(const std::string& s, const DistanceMatrix& dm, bool upper) {
  if (!s.empty() && s[0] == 'q') {
    double q = std::stod(s.substr(1));
    // quantile of the off-diagonal upper-triangle values
    std::vector<double> vals;
    for (int u = 0; u < dm.rows(); ++u)
      for (int v = u + 1; v < dm.cols(); ++v) vals.push_back(dm(u, v));
    std::sort(vals.begin(), vals.end());
    double pos = q * (static_cast<double>(vals.size()) - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, vals.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return vals[lo] * (1 - frac) + vals[hi] * frac;
  }
  (void)upper;
  return std::stod(s);
}

std::vector<double> parse_grid(const std::string& s) {
  // "start:stop:step" or comma-separated list
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    double start, stop, step;
    if (sscanf(s.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
      throw std::invalid_argument("grid must be start:stop:step");
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
  } else {
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  }
  return out;
}

std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(key);
    trim(val);
    kv[key] = val;
  }
  return kv;
}

json stats_json(const VariantStats& s) {
  return json{{"mean", s.mean}, {"std", s.stddev}, {"accs", s.accs}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topological relational inference toolkit"};
  app.require_subcommand(1);

  std::string out_path, out_csv, out_edges;

  // ---- ph ----
  auto* ph = app.add_subcommand("ph", "persistence diagrams of node neighborhoods");
  DatasetOpts ph_ds;
  FiltrationOpts ph_f;
  ph_ds.attach(ph);
  ph_f.attach(ph);
  ph->add_option("--out", out_path, "output JSON path (default stdout)");
  ph->callback([&] {
    Graph g = load_dataset(ph_ds.paths);
    auto diagrams = all_node_diagrams(g, ph_f.pairwise().spec, ph_f.k);
    json arr = json::array();
    for (const auto& d : diagrams) arr.push_back(json::parse(diagram_to_json(d)));
    emit(json{{"k", ph_f.k}, {"filtration", ph_f.filtration}, {"diagrams", arr}},
         out_path);
  });

  // ---- distances ----
  auto* dist = app.add_subcommand("distances", "pairwise Wasserstein distances");
  DatasetOpts d_ds;
  FiltrationOpts d_f;
  d_ds.attach(dist);
  d_f.attach(dist);
  dist->add_option("--out-csv", out_csv, "dense matrix CSV path");
  dist->add_option("--out", out_path, "sparse (u,v,d) triples JSON path");
  dist->callback([&] {
    Graph g = load_dataset(d_ds.paths);
    auto dm = cached_distance_matrix(g, d_f.pairwise(), d_f.cache);
    if (!out_csv.empty()) write_matrix_csv(out_csv, dm);
    if (out_csv.empty() || !out_path.empty()) {
      json triples = json::array();
      for (int u = 0; u < dm.rows(); ++u)
        for (int v = u + 1; v < dm.cols(); ++v)
          triples.push_back(json::array({u, v, dm(u, v)}));
      emit(json{{"n", g.n}, {"triples", triples}}, out_path);
    }
  });

  // ---- rewire ----
  auto* rew = app.add_subcommand("rewire", "TIMR rewiring of the input graph");
  DatasetOpts r_ds;
  FiltrationOpts r_f;
  r_ds.attach(rew);
  r_f.attach(rew);
  std::string eps1_s, eps2_s;
  rew->add_option("--eps1", eps1_s, "raw value or quantile qX")->required();
  rew->add_option("--eps2", eps2_s, "raw value or quantile qX")->required();
  rew->add_option("--out-edges", out_edges, "rewired edge list CSV");
  rew->add_option("--out", out_path, "rewiring report JSON");
  rew->callback([&] {
    Graph g = load_dataset(r_ds.paths);
    auto dm = cached_distance_matrix(g, r_f.pairwise(), r_f.cache);
    double e1 = resolve_eps(eps1_s, dm, false);
    double e2 = resolve_eps(eps2_s, dm, true);
    auto timr = build_timr(g, dm, e1, e2);
    if (!out_edges.empty()) write_edge_list_csv(out_edges, timr.joint_graph(g));
    emit(json{{"eps1", e1},
              {"eps2", e2},
              {"edges_original", g.edge_count()},
              {"edges_added", timr.edges_added(g)},
              {"edges_removed", timr.edges_removed(g)},
              {"edges_joint", timr.joint_graph(g).edge_count()}},
         out_path);
  });

  // ---- stan ----
  auto* st = app.add_subcommand("stan", "topology-weighted feature update");
  DatasetOpts s_ds;
  FiltrationOpts s_f;
  s_ds.attach(st);
  s_f.attach(st);
  StanConfig stan_cfg;
  std::string aggregate = "sum";
  st->add_option("--iters", stan_cfg.iterations, "STAN iterations");
  st->add_option("--alpha", stan_cfg.alpha, "weighting factor");
  st->add_option("--aggregate", aggregate, "sum|mean");
  st->add_option("--stan-k", stan_cfg.k, "hop radius for the neighbor sum");
  st->add_option("--floor", stan_cfg.numeric_floor, "numeric floor");
  st->add_option("--out-csv", out_csv, "updated feature CSV")->required();
  st->callback([&] {
    Graph g = load_dataset(s_ds.paths);
    auto dm = cached_distance_matrix(g, s_f.pairwise(), s_f.cache);
    stan_cfg.aggregate =
        aggregate == "mean" ? StanAggregate::Mean : StanAggregate::Sum;
    write_matrix_csv(out_csv, run_stan(g, g.features, dm, stan_cfg));
  });

  // ---- train ----
  auto* tr = app.add_subcommand("train", "end-to-end pipeline and training");
  DatasetOpts t_ds;
  t_ds.attach(tr);
  std::string config_path, checkpoint_path;
  tr->add_option("--config", config_path, "flat key=value config file")->required();
  tr->add_option("--checkpoint", checkpoint_path, "parameter checkpoint JSON path");
  tr->add_option("--out", out_path, "report JSON path (default stdout)");
  tr->callback([&] {
    Graph g = load_dataset(t_ds.paths);
    auto kv = read_flat_config(config_path);
    auto get = [&](const std::string& key, const std::string& dflt) {
      auto it = kv.find(key);
      return it == kv.end() ? dflt : it->second;
    };
    PipelineConfig cfg;
    cfg.pairwise.spec.mode = parse_filtration_mode(get("filtration", "degree"));
    cfg.pairwise.spec.metric = parse_metric(get("metric", "euclidean"));
    cfg.pairwise.k = std::stoi(get("k", "1"));
    cfg.pairwise.wopts.p = std::stod(get("p", "1"));
    cfg.pairwise.threads = std::stoi(get("threads", "1"));
    cfg.use_cache = get("cache", "0") == "1";
    cfg.q1 = std::stod(get("q1", "0.2"));
    cfg.q2 = std::stod(get("q2", "0.85"));
    if (kv.count("eps1") && kv.count("eps2")) {
      cfg.raw_eps = true;
      cfg.eps1 = std::stod(kv["eps1"]);
      cfg.eps2 = std::stod(kv["eps2"]);
    }
    cfg.stan.iterations = std::stoi(get("stan_iters", "1"));
    cfg.stan.alpha = std::stod(get("stan_alpha", "0.1"));
    cfg.stan.aggregate =
        get("stan_aggregate", "sum") == "mean" ? StanAggregate::Mean
                                               : StanAggregate::Sum;
    cfg.stan.k = std::stoi(get("stan_k", get("k", "1")));
    cfg.model.mu = std::stod(get("mu", "0.1"));
    cfg.model.sigma = std::stod(get("sigma", "0.5"));
    cfg.model.rho = std::stoi(get("rho", "1"));
    cfg.model.R = std::stod(get("R", "10"));
    cfg.model.hidden = std::stoi(get("hidden", "16"));
    cfg.model.dropout = std::stod(get("dropout", "0.5"));
    cfg.model.l2 = std::stod(get("l2", "5e-4"));
    cfg.model.lr = std::stod(get("lr", "0.01"));
    cfg.model.epochs = std::stoi(get("epochs", "200"));
    cfg.model.stacks = std::stoi(get("stacks", "1"));
    unsigned seed = static_cast<unsigned>(std::stoul(get("seed", "0")));
    Variant variant = parse_variant(get("variant", "full"));

    // re-run of run_variant with a params capture for the checkpoint
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
    ModelParams params;
    auto rep = train(g, lap, x, mc, &params);

    emit(json{{"train_acc", rep.train_acc},
              {"val_acc", rep.val_acc},
              {"test_acc", rep.test_acc},
              {"final_loss", rep.final_loss},
              {"epochs", rep.epochs},
              {"seed", rep.seed},
              {"variant", variant_name(variant)},
              {"eps1", timr.eps1},
              {"eps2", timr.eps2},
              {"edges_added", timr.edges_added(g)},
              {"edges_removed", timr.edges_removed(g)}},
         out_path);

    if (!checkpoint_path.empty()) {
      json ck{{"version", 1}, {"stacks", mc.stacks}};
      auto mat = [](const Eigen::MatrixXd& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
          json row = json::array();
          for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
          rows.push_back(row);
        }
        return rows;
      };
      json t0 = json::array(), t1 = json::array();
      for (const auto& m : params.theta0) t0.push_back(mat(m));
      for (const auto& m : params.theta1) t1.push_back(mat(m));
      ck["theta0"] = t0;
      ck["theta1"] = t1;
      emit(ck, checkpoint_path);
    }
  });

  // ---- shared experiment options ----
  auto attach_pipeline = [&](CLI::App* cmd, DatasetOpts& ds, FiltrationOpts& f,
                             PipelineConfig& cfg, int& runs, unsigned& seed) {
    ds.attach(cmd);
    f.attach(cmd);
    cmd->add_option("--q1", cfg.q1, "eps1 quantile");
    cmd->add_option("--q2", cfg.q2, "eps2 quantile");
    cmd->add_option("--stan-iters", cfg.stan.iterations);
    cmd->add_option("--stan-alpha", cfg.stan.alpha);
    cmd->add_option("--mu", cfg.model.mu);
    cmd->add_option("--sigma", cfg.model.sigma);
    cmd->add_option("--R", cfg.model.R);
    cmd->add_option("--hidden", cfg.model.hidden);
    cmd->add_option("--dropout", cfg.model.dropout);
    cmd->add_option("--lr", cfg.model.lr);
    cmd->add_option("--epochs", cfg.model.epochs);
    cmd->add_option("--runs", runs, "runs per cell");
    cmd->add_option("--seed", seed, "base seed");
  };

  // ---- ablate ----
  auto* ab = app.add_subcommand("ablate", "variant ablation study");
  DatasetOpts ab_ds;
  FiltrationOpts ab_f;
  PipelineConfig ab_cfg;
  int ab_runs = 10;
  unsigned ab_seed = 0;
  std::vector<std::string> ab_variants{"full", "no_timr", "no_stan", "stn_only"};
  attach_pipeline(ab, ab_ds, ab_f, ab_cfg, ab_runs, ab_seed);
  ab->add_option("--variants", ab_variants, "subset of full,no_timr,no_stan,stn_only");
  ab->add_option("--out", out_path, "report JSON path");
  ab->callback([&] {
    Graph g = load_dataset(ab_ds.paths);
    ab_cfg.pairwise = ab_f.pairwise();
    ab_cfg.use_cache = ab_f.cache;
    std::vector<Variant> vs;
    for (const auto& s : ab_variants) vs.push_back(parse_variant(s));
    auto rep = run_ablation(g, vs, ab_cfg, ab_runs, ab_seed);
    json out{{"runs", rep.runs}, {"seed", rep.base_seed}};
    for (const auto& [name, s] : rep.variants) out[name] = stats_json(s);
    emit(out, out_path);
  });

  // ---- eps-sweep ----
  auto* es = app.add_subcommand("eps-sweep", "threshold grid sweep");
  DatasetOpts es_ds;
  FiltrationOpts es_f;
  PipelineConfig es_cfg;
  int es_runs = 10;
  unsigned es_seed = 0;
  std::string grid1_s = "0.5:2.0:0.05", grid2_s = "2.5:6.74:0.5";
  attach_pipeline(es, es_ds, es_f, es_cfg, es_runs, es_seed);
  es->add_option("--grid1", grid1_s, "eps1 grid start:stop:step or list");
  es->add_option("--grid2", grid2_s, "eps2 grid start:stop:step or list");
  es->add_option("--out-csv", out_csv, "heat-map CSV (eps1,eps2,mean,std)");
  es->add_option("--out", out_path, "report JSON path");
  es->callback([&] {
    Graph g = load_dataset(es_ds.paths);
    es_cfg.pairwise = es_f.pairwise();
    es_cfg.use_cache = es_f.cache;
    auto cells = sweep_eps(g, parse_grid(grid1_s), parse_grid(grid2_s), es_cfg,
                           es_runs, es_seed);
    if (!out_csv.empty()) {
      std::ofstream f(out_csv);
      f << "eps1,eps2,mean_acc,std,edges_added,edges_removed\n";
      f.precision(17);
      for (const auto& c : cells)
        f << c.eps1 << "," << c.eps2 << "," << c.mean_acc << "," << c.stddev
          << "," << c.edges_added << "," << c.edges_removed << "\n";
    }
    json arr = json::array();
    for (const auto& c : cells)
      arr.push_back(json{{"eps1", c.eps1},
                         {"eps2", c.eps2},
                         {"mean_acc", c.mean_acc},
                         {"std", c.stddev},
                         {"edges_added", c.edges_added},
                         {"edges_removed", c.edges_removed}});
    emit(json{{"runs", es_runs}, {"seed", es_seed}, {"cells", arr}}, out_path);
  });

  // ---- attack-sweep ----
  auto* as = app.add_subcommand("attack-sweep", "random edge-injection robustness");
  DatasetOpts as_ds;
  FiltrationOpts as_f;
  PipelineConfig as_cfg;
  int as_runs = 10;
  unsigned as_seed = 0;
  std::vector<double> ratios{0, 0.25, 0.5, 0.75, 1.0};
  std::vector<std::string> as_variants{"full", "no_timr"};
  attach_pipeline(as, as_ds, as_f, as_cfg, as_runs, as_seed);
  as->add_option("--ratios", ratios, "fake-edge ratios");
  as->add_option("--variants", as_variants);
  as->add_option("--out", out_path, "report JSON path");
  as->callback([&] {
    Graph g = load_dataset(as_ds.paths);
    as_cfg.pairwise = as_f.pairwise();
    as_cfg.use_cache = as_f.cache;
    std::vector<Variant> vs;
    for (const auto& s : as_variants) vs.push_back(parse_variant(s));
    auto cells = attack_sweep(g, ratios, vs, as_cfg, as_runs, as_seed);
    json arr = json::array();
    for (const auto& c : cells) {
      json cell{{"ratio", c.ratio}};
      for (const auto& [name, s] : c.variants) cell[name] = stats_json(s);
      arr.push_back(cell);
    }
    emit(json{{"runs", as_runs}, {"seed", as_seed}, {"cells", arr}}, out_path);
  });

  // ---- verify-stability ----
  auto* vs = app.add_subcommand("verify-stability",
                                "average-degree stability trials");
  int trials = 100, vs_nodes = 10, vs_k = 1;
  double vs_eps1 = 0.5, vs_eps2 = 2.0, edge_prob = 0.3;
  unsigned vs_seed = 0;
  vs->add_option("--trials", trials);
  vs->add_option("--nodes", vs_nodes);
  vs->add_option("--k", vs_k);
  vs->add_option("--eps1", vs_eps1);
  vs->add_option("--eps2", vs_eps2);
  vs->add_option("--edge-prob", edge_prob);
  vs->add_option("--seed", vs_seed);
  vs->add_option("--out", out_path, "report JSON path");
  vs->callback([&] {
    std::mt19937 rng(vs_seed);
    json arr = json::array();
    int holds = 0;
    for (int t = 0; t < trials; ++t) {
      // same-order ER graph, then a second uniform graph of the same size
      std::uniform_real_distribution<double> u(0, 1);
      std::vector<std::pair<int, int>> pairs, e1;
      for (int i = 0; i < vs_nodes; ++i)
        for (int j = i + 1; j < vs_nodes; ++j) pairs.emplace_back(i, j);
      for (auto pr : pairs)
        if (u(rng) < edge_prob) e1.push_back(pr);
      std::vector<std::pair<int, int>> shuffled = pairs;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      std::vector<std::pair<int, int>> e2(shuffled.begin(),
                                          shuffled.begin() + e1.size());
      Graph g1 = Graph::from_edges(vs_nodes, e1);
      Graph g2 = Graph::from_edges(vs_nodes, e2);
      auto rep = check_degree_stability(g1, g2, vs_k, vs_eps1, vs_eps2);
      holds += rep.inequality_holds ? 1 : 0;
      arr.push_back(json{{"lhs", std::abs(rep.alpha_plus - rep.alpha_minus)},
                         {"rhs", rep.K * rep.local_distance},
                         {"K", rep.K},
                         {"r0", rep.r0},
                         {"Dk", rep.local_distance},
                         {"degenerate_r0", rep.degenerate_r0},
                         {"holds", rep.inequality_holds}});
    }
    emit(json{{"trials", trials},
              {"holds", holds},
              {"seed", vs_seed},
              {"eps1", vs_eps1},
              {"eps2", vs_eps2},
              {"per_trial", arr}},
         out_path);
  });

  // ---- probe-conjecture ----
  auto* pc = app.add_subcommand("probe-conjecture",
                                "algebraic-connectivity probe for one edge add");
  DatasetOpts pc_ds;
  FiltrationOpts pc_f;
  pc_ds.attach(pc);
  pc_f.attach(pc);
  std::vector<int> pc_edge;
  double pc_eps1 = 0.5, pc_eps2 = 2.0;
  pc->add_option("--edge", pc_edge, "edge to add: u v")->expected(2)->required();
  pc->add_option("--eps1", pc_eps1);
  pc->add_option("--eps2", pc_eps2);
  pc->add_option("--out", out_path, "report JSON path");
  pc->callback([&] {
    Graph g = load_dataset(pc_ds.paths);
    auto rep = conjecture_probe(g, {pc_edge[0], pc_edge[1]}, pc_f.k, pc_eps1,
                                pc_eps2, pc_f.pairwise().spec);
    json out{{"lambda2_T", rep.lambda2_t},
             {"lambda2_T_prime", rep.lambda2_t_prime},
             {"lambda2_G", rep.lambda2_g},
             {"lambda2_G_prime", rep.lambda2_g_prime},
             {"lhs", rep.lhs},
             {"rhs", rep.rhs}};
    if (rep.timr_identical)
      out["timr_identical"] = *rep.timr_identical;
    emit(out, out_path);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
