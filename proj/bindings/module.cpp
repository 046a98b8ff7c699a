#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tri/harness.hpp"
#include "tri/stability.hpp"

namespace py = pybind11;
using namespace tri;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                 std::optional<Eigen::MatrixXd> features,
                 std::optional<std::vector<int>> labels, bool directed) {
  Graph g = Graph::from_edges(n, edges, directed);
  if (features) g.features = *features;
  if (labels) g.labels = *labels;
  return g;
}

FiltrationSpec make_spec(const std::string& filtration, const std::string& metric,
                         const std::string& degree_scope) {
  FiltrationSpec spec;
  spec.mode = parse_filtration_mode(filtration);
  spec.metric = parse_metric(metric);
  spec.degree_scope =
      degree_scope == "local" ? DegreeScope::Local : DegreeScope::Global;
  return spec;
}

PipelineConfig make_pipeline(const std::string& filtration, int k, double q1,
                             double q2, int stan_iters, double stan_alpha,
                             int epochs, int hidden, double dropout, int threads) {
  PipelineConfig cfg;
  cfg.pairwise.spec = make_spec(filtration, "euclidean", "global");
  cfg.pairwise.k = k;
  cfg.pairwise.threads = threads;
  cfg.q1 = q1;
  cfg.q2 = q2;
  cfg.stan.iterations = stan_iters;
  cfg.stan.alpha = stan_alpha;
  cfg.model.epochs = epochs;
  cfg.model.hidden = hidden;
  cfg.model.dropout = dropout;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_trinet, m) {
  m.doc() = "topological relational inference core";

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
           py::arg("features") = std::nullopt, py::arg("labels") = std::nullopt,
           py::arg("directed") = false)
      .def_readonly("n", &Graph::n)
      .def_readwrite("features", &Graph::features)
      .def_readwrite("labels", &Graph::labels)
      .def_readwrite("train_mask", &Graph::train_mask)
      .def_readwrite("val_mask", &Graph::val_mask)
      .def_readwrite("test_mask", &Graph::test_mask)
      .def("edge_count", &Graph::edge_count)
      .def("edges", &Graph::edge_list)
      .def("has_edge", &Graph::has_edge)
      .def("degree", &Graph::degree);

  py::class_<PersistenceDiagram>(m, "PersistenceDiagram")
      .def_readonly("finite", &PersistenceDiagram::finite)
      .def_readonly("essential", &PersistenceDiagram::essential)
      .def("__repr__", &diagram_to_json);

  m.def(
      "node_diagrams",
      [](const Graph& g, const std::string& filtration, int k,
         const std::string& metric, const std::string& degree_scope) {
        return all_node_diagrams(g, make_spec(filtration, metric, degree_scope), k);
      },
      py::arg("graph"), py::arg("filtration") = "degree", py::arg("k") = 1,
      py::arg("metric") = "euclidean", py::arg("degree_scope") = "global");

  m.def(
      "wasserstein",
      [](const PersistenceDiagram& a, const PersistenceDiagram& b, double p) {
        WassersteinOptions opts;
        opts.p = p;
        return wasserstein(a, b, opts);
      },
      py::arg("d1"), py::arg("d2"), py::arg("p") = 1.0);

  m.def(
      "pairwise_distances",
      [](const Graph& g, const std::string& filtration, int k, double p,
         int threads) {
        PairwiseOptions opts;
        opts.spec = make_spec(filtration, "euclidean", "global");
        opts.k = k;
        opts.wopts.p = p;
        opts.threads = threads;
        return pairwise_distance_matrix(g, opts);
      },
      py::arg("graph"), py::arg("filtration") = "degree", py::arg("k") = 1,
      py::arg("p") = 1.0, py::arg("threads") = 1);

  m.def(
      "rewire",
      [](const Graph& g, const Eigen::MatrixXd& dm, double eps1, double eps2) {
        auto t = build_timr(g, dm, eps1, eps2);
        return py::make_tuple(t.joint_graph(g), t.edges_added(g),
                              t.edges_removed(g));
      },
      py::arg("graph"), py::arg("distances"), py::arg("eps1"), py::arg("eps2"));

  m.def("quantile_thresholds", &quantile_thresholds, py::arg("distances"),
        py::arg("q1"), py::arg("q2"));

  m.def(
      "stan_update",
      [](const Graph& g, const Eigen::MatrixXd& dm, int iterations, double alpha,
         int k) {
        StanConfig cfg;
        cfg.iterations = iterations;
        cfg.alpha = alpha;
        cfg.k = k;
        return run_stan(g, g.features, dm, cfg);
      },
      py::arg("graph"), py::arg("distances"), py::arg("iterations") = 1,
      py::arg("alpha") = 0.1, py::arg("k") = 1);

  py::class_<TrainReport>(m, "TrainReport")
      .def_readonly("train_acc", &TrainReport::train_acc)
      .def_readonly("val_acc", &TrainReport::val_acc)
      .def_readonly("test_acc", &TrainReport::test_acc)
      .def_readonly("final_loss", &TrainReport::final_loss)
      .def_readonly("epochs", &TrainReport::epochs)
      .def_readonly("seed", &TrainReport::seed);

  m.def(
      "run_pipeline",
      [](const Graph& g, const std::string& variant, unsigned seed,
         const std::string& filtration, int k, double q1, double q2,
         int stan_iters, double stan_alpha, int epochs, int hidden,
         double dropout, int threads) {
        auto cfg = make_pipeline(filtration, k, q1, q2, stan_iters, stan_alpha,
                                 epochs, hidden, dropout, threads);
        auto res = run_variant(g, parse_variant(variant), cfg, seed);
        return py::make_tuple(res.report, res.edges_added, res.edges_removed,
                              res.eps1, res.eps2);
      },
      py::arg("graph"), py::arg("variant") = "full", py::arg("seed") = 0,
      py::arg("filtration") = "attribute", py::arg("k") = 1,
      py::arg("q1") = 0.2, py::arg("q2") = 0.85, py::arg("stan_iters") = 1,
      py::arg("stan_alpha") = 0.1, py::arg("epochs") = 200,
      py::arg("hidden") = 16, py::arg("dropout") = 0.5, py::arg("threads") = 1);

  m.def(
      "random_attack",
      [](const Graph& g, double ratio, unsigned seed) {
        return random_attack(g, {ratio, seed});
      },
      py::arg("graph"), py::arg("ratio"), py::arg("seed") = 0);

  m.def(
      "planted_partition",
      [](int n, double p_in, double p_out, int feature_dim, unsigned seed) {
        PlantedPartitionConfig cfg;
        cfg.n = n;
        cfg.p_in = p_in;
        cfg.p_out = p_out;
        cfg.feature_dim = feature_dim;
        cfg.seed = seed;
        return planted_partition(cfg);
      },
      py::arg("n") = 200, py::arg("p_in") = 0.08, py::arg("p_out") = 0.01,
      py::arg("feature_dim") = 8, py::arg("seed") = 0);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("alpha_plus", &StabilityReport::alpha_plus)
      .def_readonly("alpha_minus", &StabilityReport::alpha_minus)
      .def_readonly("local_distance", &StabilityReport::local_distance)
      .def_readonly("r0", &StabilityReport::r0)
      .def_readonly("K", &StabilityReport::K)
      .def_readonly("degenerate_r0", &StabilityReport::degenerate_r0)
      .def_readonly("inequality_holds", &StabilityReport::inequality_holds);

  m.def("check_degree_stability", &check_degree_stability, py::arg("g1"),
        py::arg("g2"), py::arg("k"), py::arg("eps1"), py::arg("eps2"));

  m.def("algebraic_connectivity", &algebraic_connectivity, py::arg("graph"));

  m.def(
      "local_k_distance",
      [](const Graph& g1, const Graph& g2, int k) {
        return local_k_distance(g1, g2, k).value;
      },
      py::arg("g1"), py::arg("g2"), py::arg("k") = 1);
}
