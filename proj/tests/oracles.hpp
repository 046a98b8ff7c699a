#pragma once

// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the library's union-find / assignment machinery.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "tri/persistence.hpp"
#include "tri/wasserstein.hpp"

namespace oracle {

// 0-dim sublevel diagram by rebuilding the sublevel subgraph at every
// distinct threshold and tracking component merges via BFS.
inline tri::PersistenceDiagram brute_force_pd(
    const tri::Neighborhood& nbhd, const std::vector<double>& node_values,
    const std::vector<double>& edge_values) {
  const int n = static_cast<int>(nbhd.members.size());
  std::map<int, int> local;
  for (int i = 0; i < n; ++i) local[nbhd.members[i]] = i;

  std::vector<double> thresholds(node_values);
  thresholds.insert(thresholds.end(), edge_values.begin(), edge_values.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  // components as node-id sets paired with their birth multiset
  using Component = std::set<int>;
  std::vector<std::pair<Component, std::vector<double>>> prev;
  tri::PersistenceDiagram pd;

  for (double alpha : thresholds) {
    // sublevel subgraph at alpha, components by BFS
    std::vector<char> active(n, 0);
    for (int i = 0; i < n; ++i) active[i] = node_values[i] <= alpha;
    std::vector<std::vector<int>> adj(n);
    for (std::size_t e = 0; e < nbhd.edges.size(); ++e) {
      if (edge_values[e] > alpha) continue;
      int a = local.at(nbhd.edges[e].first), b = local.at(nbhd.edges[e].second);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (!active[s] || comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
          if (comp[y] < 0) {
            comp[y] = ncomp;
            stack.push_back(y);
          }
      }
      ++ncomp;
    }

    std::vector<std::pair<Component, std::vector<double>>> cur(ncomp);
    for (int i = 0; i < n; ++i)
      if (comp[i] >= 0) cur[comp[i]].first.insert(i);

    // birth multiset of a new component = births of the old components it
    // absorbs plus one entry per newly active node; all but the min die.
    for (auto& [members, births] : cur) {
      for (const auto& [old_members, old_births] : prev)
        if (members.count(*old_members.begin()))
          births.insert(births.end(), old_births.begin(), old_births.end());
      for (int i : members) {
        bool was_active = false;
        for (const auto& [old_members, ob] : prev)
          if (old_members.count(i)) was_active = true;
        if (!was_active) births.push_back(node_values[i]);
      }
      std::sort(births.begin(), births.end());
      for (std::size_t j = 1; j < births.size(); ++j)
        if (alpha > births[j]) pd.finite.emplace_back(births[j], alpha);
      births.resize(1);  // survivor keeps the minimal birth
    }
    prev = std::move(cur);
  }
  for (const auto& [members, births] : prev) pd.essential.push_back(births[0]);
  pd.normalize();
  return pd;
}

// exhaustive matching over all augmented bijections (finite parts)
inline double enumerate_finite_cost(
    const std::vector<std::pair<double, double>>& a,
    const std::vector<std::pair<double, double>>& b, double p) {
  std::vector<char> used(b.size(), 0);
  auto linf = [](auto& x, auto& y) {
    return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
  };
  auto diag = [](auto& x) { return (x.second - x.first) / 2.0; };
  std::function<double(std::size_t)> rec = [&](std::size_t i) -> double {
    if (i == a.size()) {
      double c = 0;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) c += std::pow(diag(b[j]), p);
      return c;
    }
    double best = std::pow(diag(a[i]), p) + rec(i + 1);  // a[i] to diagonal
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      best = std::min(best, std::pow(linf(a[i], b[j]), p) + rec(i + 1));
      used[j] = 0;
    }
    return best;
  };
  return rec(0);
}

inline double enumerate_essential_cost(const std::vector<double>& a,
                                       const std::vector<double>& b, double p,
                                       double penalty) {
  // enumerate injective matchings from the smaller side into the larger
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::vector<char> used(large.size(), 0);
  std::function<double(std::size_t)> rec = [&](std::size_t i) -> double {
    if (i == small.size())
      return std::pow(penalty, p) *
             static_cast<double>(large.size() - small.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < large.size(); ++j) {
      if (used[j]) continue;
      used[j] = 1;
      best = std::min(best, std::pow(std::abs(small[i] - large[j]), p) + rec(i + 1));
      used[j] = 0;
    }
    return best;
  };
  return rec(0);
}

inline double brute_force_wasserstein(const tri::PersistenceDiagram& d1,
                                      const tri::PersistenceDiagram& d2,
                                      double p = 1.0) {
  double total = enumerate_finite_cost(d1.finite, d2.finite, p);
  double penalty = 0;
  for (auto& b : d1.finite) penalty = std::max(penalty, b.second);
  for (auto& b : d2.finite) penalty = std::max(penalty, b.second);
  penalty /= 2.0;
  total += enumerate_essential_cost(d1.essential, d2.essential, p, penalty);
  return std::pow(total, 1.0 / p);
}

}  // namespace oracle
