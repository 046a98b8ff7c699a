#pragma once

#include <optional>

#include "tri/timr.hpp"

namespace tri {

struct LocalKDistanceResult {
  double value = 0;
  std::vector<int> best_bijection;   // node u in g1 -> node in g2
  std::vector<double> per_node_costs;
};

/// min over bijections of the summed Wasserstein-1 distances between
/// corresponding nodes' k-hop degree-filtration diagrams.
LocalKDistanceResult local_k_distance(const Graph& g1, const Graph& g2, int k);

struct StabilityReport {
  double alpha_plus = 0, alpha_minus = 0;  // average degrees of the TIMR graphs
  double local_distance = 0;               // D^k
  double r0 = 0;                           // min positive gap of pairwise d_k values
  double K = 0;                            // (2/m)(2M/r0)
  bool degenerate_r0 = false;
  bool inequality_holds = false;           // |a+ - a-| <= K * D^k
  bool zero_distance_case = false;         // D^k == 0
  bool zero_implies_equal = true;          // D^k == 0  =>  a+ == a-
};

StabilityReport check_degree_stability(const Graph& g1, const Graph& g2, int k,
                                       double eps1, double eps2);

/// Second smallest eigenvalue of the combinatorial Laplacian D - W.
double algebraic_connectivity(const Graph& g);

struct ConjectureReport {
  double lambda2_t = 0, lambda2_t_prime = 0;
  double lambda2_g = 0, lambda2_g_prime = 0;
  double lhs = 0;  // |lambda2(T') - lambda2(T)|
  double rhs = 0;  // |lambda2(G') - lambda2(G)|
  std::optional<bool> timr_identical;  // attribute mode only
};

ConjectureReport conjecture_probe(const Graph& g, std::pair<int, int> edge_to_add,
                                  int k, double eps1, double eps2,
                                  const FiltrationSpec& spec);

}  // namespace tri
