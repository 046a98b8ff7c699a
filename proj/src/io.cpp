#include "tri/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tri {

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<uint8_t> load_mask(const std::string& path, int n) {
  std::vector<uint8_t> mask(n, 0);
  for (const auto& row : read_csv(path))
    for (const auto& cell : row) {
      int u = std::stoi(cell);
      if (u < 0 || u >= n) throw std::runtime_error("mask node id out of range");
      mask[u] = 1;
    }
  return mask;
}

}  // namespace

Graph load_dataset(const DatasetPaths& paths) {
  auto rows = read_csv(paths.edges);
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  for (const auto& row : rows) {
    if (row.size() < 2) throw std::runtime_error("edge row needs two columns");
    int u = std::stoi(row[0]), v = std::stoi(row[1]);
    edges.emplace_back(u, v);
    max_id = std::max({max_id, u, v});
  }
  int n = paths.n_nodes >= 0 ? paths.n_nodes : max_id + 1;
  Graph g = Graph::from_edges(n, edges, paths.directed);

  if (!paths.features.empty()) g.features = load_matrix_csv(paths.features);
  if (!paths.labels.empty()) {
    g.labels.assign(n, -1);
    for (const auto& row : read_csv(paths.labels)) {
      if (row.size() < 2) throw std::runtime_error("label row needs (node, class)");
      g.labels[std::stoi(row[0])] = std::stoi(row[1]);
    }
  }
  g.train_mask.assign(n, 0);
  g.val_mask.assign(n, 0);
  g.test_mask.assign(n, 0);
  if (!paths.train_mask.empty()) g.train_mask = load_mask(paths.train_mask, n);
  if (!paths.val_mask.empty()) g.val_mask = load_mask(paths.val_mask, n);
  if (!paths.test_mask.empty()) g.test_mask = load_mask(paths.test_mask, n);
  g.validate();
  return g;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) return {};
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::runtime_error("ragged CSV matrix in " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = std::stod(rows[i][j]);
  }
  return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << m(i, j);
    }
    out << "\n";
  }
}

void write_edge_list_csv(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (auto [u, v] : g.edge_list()) out << u << "," << v << "\n";
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t dataset_content_hash(const Graph& g, const PairwiseOptions& opts) {
  std::uint64_t h = fnv1a(&g.n, sizeof(g.n));
  for (auto [u, v] : g.edge_list()) {
    h = fnv1a(&u, sizeof(u), h);
    h = fnv1a(&v, sizeof(v), h);
  }
  if (g.features.size() > 0)
    h = fnv1a(g.features.data(), sizeof(double) * g.features.size(), h);
  int mode = static_cast<int>(opts.spec.mode);
  int metric = static_cast<int>(opts.spec.metric);
  int scope = static_cast<int>(opts.spec.degree_scope);
  h = fnv1a(&mode, sizeof(mode), h);
  h = fnv1a(&metric, sizeof(metric), h);
  h = fnv1a(&scope, sizeof(scope), h);
  h = fnv1a(&opts.k, sizeof(opts.k), h);
  h = fnv1a(&opts.wopts.p, sizeof(double), h);
  double pen = opts.wopts.essential_penalty.value_or(-1.0);
  h = fnv1a(&pen, sizeof(pen), h);
  return h;
}

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("TOPO_REWIRE_CACHE"))
    return std::filesystem::path(env);
  return std::filesystem::path(".cache");
}

namespace {

std::filesystem::path cache_file(std::uint64_t key) {
  std::ostringstream name;
  name << "dm_" << std::hex << key << ".bin";
  return cache_dir() / name.str();
}

}  // namespace

bool load_cached_matrix(std::uint64_t key, Eigen::MatrixXd& out) {
  std::ifstream in(cache_file(key), std::ios::binary);
  if (!in) return false;
  std::int64_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  in.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  if (!in || rows < 0 || cols < 0) return false;
  out.resize(rows, cols);
  in.read(reinterpret_cast<char*>(out.data()),
          static_cast<std::streamsize>(sizeof(double) * rows * cols));
  return static_cast<bool>(in);
}

void store_cached_matrix(std::uint64_t key, const Eigen::MatrixXd& m) {
  std::filesystem::create_directories(cache_dir());
  std::ofstream out(cache_file(key), std::ios::binary);
  if (!out) return;  // cache failures are non-fatal
  std::int64_t rows = m.rows(), cols = m.cols();
  out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * m.size()));
}

DistanceMatrix cached_distance_matrix(const Graph& g, const PairwiseOptions& opts,
                                      bool use_cache) {
  if (!use_cache) return pairwise_distance_matrix(g, opts);
  std::uint64_t key = dataset_content_hash(g, opts);
  Eigen::MatrixXd dm;
  if (load_cached_matrix(key, dm) && dm.rows() == g.n) return dm;
  dm = pairwise_distance_matrix(g, opts);
  store_cached_matrix(key, dm);
  return dm;
}

}  // namespace tri
