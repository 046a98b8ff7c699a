#pragma once

#include <map>
#include <string>

#include "tri/io.hpp"
#include "tri/model.hpp"
#include "tri/stan.hpp"

namespace tri {

struct AttackConfig {
  double ratio = 0.0;  // fake edges / existing edges, in [0, 1]
  unsigned seed = 0;
};

/// g plus round(ratio * |E|) random fake edges; features/labels untouched.
Graph random_attack(const Graph& g, const AttackConfig& cfg);

enum class Variant { Full, NoTimr, NoStan, StnOnly };
Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

/// Everything one experiment cell needs to re-run bit-identically.
struct PipelineConfig {
  PairwiseOptions pairwise;    // filtration, k, p
  double q1 = 0.2, q2 = 0.85;  // quantile thresholds for (eps1, eps2)
  bool raw_eps = false;        // interpret eps1/eps2 below as raw values
  double eps1 = 0, eps2 = 0;
  StanConfig stan;
  ModelConfig model;
  bool use_cache = false;
};

struct RunResult {
  TrainReport report;
  long edges_added = 0, edges_removed = 0;
  double eps1 = 0, eps2 = 0;
};

/// One end-to-end run: distances -> TIMR -> STAN -> train.
RunResult run_variant(const Graph& g, Variant variant, const PipelineConfig& cfg,
                      unsigned seed);

struct VariantStats {
  std::vector<double> accs;
  double mean = 0, stddev = 0;
};

struct AblationReport {
  std::map<std::string, VariantStats> variants;
  int runs = 0;
  unsigned base_seed = 0;
};

AblationReport run_ablation(const Graph& g, const std::vector<Variant>& variants,
                            const PipelineConfig& cfg, int runs, unsigned base_seed);

struct EpsCell {
  double eps1 = 0, eps2 = 0;
  double mean_acc = 0, stddev = 0;
  long edges_added = 0, edges_removed = 0;
};

std::vector<EpsCell> sweep_eps(const Graph& g, const std::vector<double>& grid1,
                               const std::vector<double>& grid2,
                               const PipelineConfig& cfg, int runs,
                               unsigned base_seed);

struct AttackCell {
  double ratio = 0;
  std::map<std::string, VariantStats> variants;
};

std::vector<AttackCell> attack_sweep(const Graph& g,
                                     const std::vector<double>& ratios,
                                     const std::vector<Variant>& variants,
                                     const PipelineConfig& cfg, int runs,
                                     unsigned base_seed);

/// Seeded 2-block planted-partition graph with class-correlated Gaussian
/// features and 10/20/70 train/val/test masks.
struct PlantedPartitionConfig {
  int n = 200;
  double p_in = 0.08, p_out = 0.01;
  int feature_dim = 8;
  double mean_shift = 0.6;    // class means at +/- shift/sqrt(F) per column
  double scale0 = 1.0, scale1 = 1.6;  // per-class feature noise scales
  double train_frac = 0.10, val_frac = 0.20;
  unsigned seed = 0;
};

Graph planted_partition(const PlantedPartitionConfig& cfg);

/// One-sided two-sample Welch t-test, H1: mean(a) > mean(b).
double welch_t_pvalue(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tri
