#include "imsim/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace imsim::oracle {

std::vector<std::int64_t> bfs_distances(const GraphInstance& g, int src) {
  std::vector<std::int64_t> dist(static_cast<std::size_t>(g.n), kUnreachable);
  std::deque<int> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : g.adjacency[static_cast<std::size_t>(v)])
      if (dist[static_cast<std::size_t>(u)] == kUnreachable) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

std::int64_t eccentricity(const GraphInstance& g, int src) {
  const auto dist = bfs_distances(g, src);
  std::int64_t ecc = 0;
  for (std::int64_t d : dist) {
    if (d == kUnreachable) return kUnreachable;
    ecc = std::max(ecc, d);
  }
  return ecc;
}

std::int64_t diameter(const GraphInstance& g) {
  std::int64_t best = 0;
  for (int v = 0; v < g.n; ++v) {
    const std::int64_t ecc = eccentricity(g, v);
    if (ecc == kUnreachable) return kUnreachable;
    best = std::max(best, ecc);
  }
  return best;
}

std::vector<std::vector<std::int64_t>> floyd_warshall(const GraphInstance& g) {
  constexpr std::int64_t kInf = std::int64_t{1} << 60;
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    d[u][v] = std::min(d[u][v], e.w);
    d[v][u] = std::min(d[v][u], e.w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (auto& cost : row)
      if (cost >= kInf) cost = kUnreachable;
  return d;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

}  // namespace

std::vector<std::pair<int, int>> kruskal(const GraphInstance& g) {
  std::vector<Edge> sorted = g.edges;
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.w < b.w; });
  UnionFind uf(g.n);
  std::vector<std::pair<int, int>> tree;
  for (const Edge& e : sorted)
    if (uf.unite(e.u, e.v)) tree.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::int64_t max_uid(const GraphInstance& g) {
  return *std::max_element(g.uids.begin(), g.uids.end());
}

}  // namespace imsim::oracle
