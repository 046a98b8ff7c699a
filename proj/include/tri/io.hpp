#pragma once

#include <filesystem>
#include <string>

#include "tri/wasserstein.hpp"

namespace tri {

/// Edge list as two-column integer CSV; features as float CSV; labels as
/// (node, class) CSV; masks as one node id per line.
struct DatasetPaths {
  std::string edges;
  std::string features;   // optional
  std::string labels;     // optional
  std::string train_mask, val_mask, test_mask;  // optional
  bool directed = false;
  int n_nodes = -1;       // -1: infer from max node id seen
};

Graph load_dataset(const DatasetPaths& paths);

Eigen::MatrixXd load_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_edge_list_csv(const std::string& path, const Graph& g);

/// FNV-1a over raw bytes; cache keys for distance matrices.
std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t dataset_content_hash(const Graph& g, const PairwiseOptions& opts);

std::filesystem::path cache_dir();  // .cache/ or $TOPO_REWIRE_CACHE
bool load_cached_matrix(std::uint64_t key, Eigen::MatrixXd& out);
void store_cached_matrix(std::uint64_t key, const Eigen::MatrixXd& m);

/// pairwise_distance_matrix with disk caching keyed by content hash.
DistanceMatrix cached_distance_matrix(const Graph& g, const PairwiseOptions& opts,
                                      bool use_cache = true);

}  // namespace tri
