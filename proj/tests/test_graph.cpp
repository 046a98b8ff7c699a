#include <doctest.h>

#include <algorithm>
#include <random>

#include "tri/graph.hpp"

using namespace tri;

namespace {

Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_CASE("k-hop neighborhood on a path") {
  auto g = path3();
  auto n1 = k_hop_neighborhood(g, 0, 1, false);
  CHECK(n1.members == std::vector<int>{0, 1});
  CHECK(n1.edges == std::vector<std::pair<int, int>>{{0, 1}});

  auto n2 = k_hop_neighborhood(g, 0, 2, false);
  CHECK(n2.members == std::vector<int>{0, 1, 2});
  CHECK(n2.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("weighted neighborhood tau from euclidean features") {
  auto g = path3();
  g.features.resize(3, 2);
  g.features << 0, 0, 3, 4, 0, 0;
  auto nb = k_hop_neighborhood(g, 0, 1, true, Metric::Euclidean);
  REQUIRE(nb.edge_weights.size() == 1);
  CHECK(nb.edge_weights[0] == doctest::Approx(5.0));
}

TEST_CASE("degree vector") {
  CHECK(degree_vector(path3()) == std::vector<int>{1, 2, 1});
  auto tri_g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(degree_vector(tri_g) == std::vector<int>{2, 2, 2});
  CHECK(degree_vector(Graph::from_edges(3, {})) == std::vector<int>{0, 0, 0});
}

TEST_CASE("neighborhood errors") {
  auto g = path3();
  CHECK_THROWS(k_hop_neighborhood(g, 7, 1, false));
  CHECK_THROWS(k_hop_neighborhood(g, 0, 0, false));
  g.features.resize(3, 1);
  g.features << 0.5, 1.0, 0.0;
  CHECK_THROWS(k_hop_neighborhood(g, 0, 1, true, Metric::Hamming));
}

TEST_CASE("directed ingestion symmetrizes and drops self-loops") {
  auto g = Graph::from_edges(3, {{0, 1}, {1, 0}, {2, 2}}, true);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(2, 2));
}

TEST_CASE("k-hop monotone in k and saturates at the component") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 8);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 4 == 0) edges.emplace_back(i, j);
    auto g = Graph::from_edges(n, edges);
    for (int u = 0; u < n; ++u) {
      auto prev = k_hop_neighborhood(g, u, 1, false);
      for (int k = 2; k <= n; ++k) {
        auto cur = k_hop_neighborhood(g, u, k, false);
        CHECK(std::includes(cur.members.begin(), cur.members.end(),
                            prev.members.begin(), prev.members.end()));
        prev = cur;
      }
      // k = n exceeds any diameter, so this is u's whole component
      auto far = k_hop_neighborhood(g, u, n, false);
      for (int v : far.members)
        CHECK(std::find(far.members.begin(), far.members.end(), v) !=
              far.members.end());
    }
  }
}

TEST_CASE("isolated node yields the singleton neighborhood") {
  auto g = Graph::from_edges(3, {{0, 1}});
  auto nb = k_hop_neighborhood(g, 2, 2, false);
  CHECK(nb.members == std::vector<int>{2});
  CHECK(nb.edges.empty());
}
