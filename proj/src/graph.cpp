#include "imsim/graph.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace imsim {

namespace {

std::string node_str(int v) { return std::to_string(v); }

[[noreturn]] void fail(const std::string& invariant, const std::string& detail) {
  throw SpecError("invalid graph: " + invariant +
                  (detail.empty() ? "" : " (" + detail + ")"));
}

}  // namespace

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::RingUni: return "ring-uni";
    case GraphKind::RingBi: return "ring-bi";
    case GraphKind::TreeStar: return "tree-star";
    case GraphKind::TreeChain: return "tree-chain";
    case GraphKind::TreeRandom: return "tree-random";
    case GraphKind::Complete: return "complete";
    case GraphKind::Random: return "random";
    case GraphKind::SpMin: return "sp-min";
    case GraphKind::SpMax: return "sp-max";
  }
  return "?";
}

GraphKind graph_kind_from_string(const std::string& name) {
  static const std::pair<const char*, GraphKind> table[] = {
      {"ring-uni", GraphKind::RingUni},   {"ring-bi", GraphKind::RingBi},
      {"tree-star", GraphKind::TreeStar}, {"tree-chain", GraphKind::TreeChain},
      {"tree-random", GraphKind::TreeRandom}, {"complete", GraphKind::Complete},
      {"random", GraphKind::Random},      {"sp-min", GraphKind::SpMin},
      {"sp-max", GraphKind::SpMax},
  };
  for (const auto& [text, kind] : table)
    if (name == text) return kind;
  throw SpecError("unknown graph kind: " + name);
}

bool GraphInstance::is_faulty(int node) const {
  return std::binary_search(faulty.begin(), faulty.end(), node);
}

std::int64_t GraphInstance::edge_weight(int a, int b) const {
  if (a > b) std::swap(a, b);
  // Edges are kept in canonical lexicographic order, so binary search works.
  const auto it = std::lower_bound(
      edges.begin(), edges.end(), std::pair<int, int>{a, b},
      [](const Edge& e, const std::pair<int, int>& key) {
        return std::pair<int, int>{e.u, e.v} < key;
      });
  if (it != edges.end() && it->u == a && it->v == b) return it->w;
  throw Error("edge_weight: no edge " + node_str(a) + "-" + node_str(b));
}

void build_adjacency(GraphInstance& g) {
  g.adjacency.assign(static_cast<std::size_t>(g.n), {});
  for (const Edge& e : g.edges) {
    g.adjacency[static_cast<std::size_t>(e.u)].push_back(e.v);
    if (g.kind != GraphKind::RingUni)
      g.adjacency[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
}

namespace {

// Undirected connectivity; ring-uni links are treated as undirected here
// (a directed ring is connected exactly when its undirected shadow is a
// cycle, which the shape check enforces separately).
bool connected(const GraphInstance& g) {
  if (g.n == 0) return false;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
  for (const Edge& e : g.edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++count;
    for (int u : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
  }
  return count == g.n;
}

bool acyclic_tree(const GraphInstance& g) {
  // n-1 edges + connected => tree; both are checked by the caller.
  return static_cast<int>(g.edges.size()) == g.n - 1;
}

void check_shape(const GraphInstance& g) {
  const auto m = static_cast<std::int64_t>(g.edges.size());
  const std::int64_t n = g.n;
  std::vector<int> degree(static_cast<std::size_t>(g.n), 0);
  for (const Edge& e : g.edges) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }

  switch (g.kind) {
    case GraphKind::RingUni: {
      if (n < 2) fail("ring requires n >= 2", "n=" + node_str(g.n));
      if (m != n) fail("ring-uni edge count must equal n", node_str(static_cast<int>(m)));
      // Each node must appear exactly once as source and once as target.
      std::vector<int> out(static_cast<std::size_t>(g.n), 0), in(static_cast<std::size_t>(g.n), 0);
      for (const Edge& e : g.edges) {
        ++out[static_cast<std::size_t>(e.u)];
        ++in[static_cast<std::size_t>(e.v)];
      }
      for (int v = 0; v < g.n; ++v)
        if (out[static_cast<std::size_t>(v)] != 1 || in[static_cast<std::size_t>(v)] != 1)
          fail("ring-uni successor structure broken", "node " + node_str(v));
      break;
    }
    case GraphKind::RingBi: {
      if (n < 2) fail("ring requires n >= 2", "n=" + node_str(g.n));
      const std::int64_t want = (n == 2) ? 1 : n;
      if (m != want) fail("ring-bi edge count mismatch", node_str(static_cast<int>(m)));
      for (int v = 0; v < g.n; ++v) {
        const int want_deg = (g.n == 2) ? 1 : 2;
        if (degree[static_cast<std::size_t>(v)] != want_deg)
          fail("ring-bi node degree must form a cycle", "node " + node_str(v));
      }
      break;
    }
    case GraphKind::TreeStar: {
      if (!acyclic_tree(g)) fail("tree edge count must be n-1", node_str(static_cast<int>(m)));
      if (g.n > 1 && degree[0] != g.n - 1)
        fail("tree-star center must connect to all others", "center degree " + node_str(degree[0]));
      break;
    }
    case GraphKind::TreeChain: {
      if (!acyclic_tree(g)) fail("tree edge count must be n-1", node_str(static_cast<int>(m)));
      for (int v = 0; v < g.n; ++v)
        if (degree[static_cast<std::size_t>(v)] > 2)
          fail("tree-chain degree must be <= 2", "node " + node_str(v));
      break;
    }
    case GraphKind::TreeRandom: {
      if (!acyclic_tree(g)) fail("tree edge count must be n-1", node_str(static_cast<int>(m)));
      if (!g.maxDegree) fail("tree-random requires maxDegree", "");
      for (int v = 0; v < g.n; ++v)
        if (degree[static_cast<std::size_t>(v)] > *g.maxDegree)
          fail("tree-random degree bound exceeded", "node " + node_str(v));
      break;
    }
    case GraphKind::Complete: {
      if (m != n * (n - 1) / 2)
        fail("complete graph must contain every pair", node_str(static_cast<int>(m)));
      break;
    }
    case GraphKind::Random:
      break;  // no shape constraint beyond connectivity
    case GraphKind::SpMin: {
      if (m != n - 1) fail("sp-min edge count must be n-1", node_str(static_cast<int>(m)));
      break;
    }
    case GraphKind::SpMax: {
      int lg = 0;  // ceil(log2 n), matching the generator's target
      while ((std::int64_t{1} << lg) < n) ++lg;
      const std::int64_t target = n * lg;
      if (m != target)
        fail("sp-max edge count must be n*ceil(log2 n)", node_str(static_cast<int>(m)));
      break;
    }
  }
}

}  // namespace

void validate_instance(const GraphInstance& g) {
  if (g.n < 1) fail("n must be >= 1", "n=" + node_str(g.n));
  if (static_cast<int>(g.uids.size()) != g.n)
    fail("uid list length must equal n", node_str(static_cast<int>(g.uids.size())));

  {
    std::set<std::int64_t> seen;
    for (std::int64_t uid : g.uids) {
      if (uid < 1 || uid > 4LL * g.n)
        fail("uids must lie in [1, 4n]", std::to_string(uid));
      if (!seen.insert(uid).second) fail("uids not distinct", std::to_string(uid));
    }
  }

  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n)
      fail("edge endpoint out of range", node_str(e.u) + "-" + node_str(e.v));
    if (e.u == e.v) fail("self loops are not allowed", node_str(e.u));
    if (g.kind != GraphKind::RingUni && e.u > e.v)
      fail("edges not canonical (u < v required)", node_str(e.u) + "-" + node_str(e.v));
  }
  for (std::size_t i = 1; i < g.edges.size(); ++i) {
    const Edge& a = g.edges[i - 1];
    const Edge& b = g.edges[i];
    if (a.u > b.u || (a.u == b.u && a.v >= b.v))
      fail("edges not sorted lexicographically",
           node_str(b.u) + "-" + node_str(b.v));
  }
  if (g.kind == GraphKind::RingUni) {
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : g.edges)
      if (!seen.insert({e.u, e.v}).second)
        fail("duplicate edge", node_str(e.u) + "-" + node_str(e.v));
  }

  if (g.weighted) {
    std::set<std::int64_t> w;
    const auto m = static_cast<std::int64_t>(g.edges.size());
    for (const Edge& e : g.edges) {
      if (e.w < 1 || e.w > m)
        fail("weights must be a permutation of 1..m", std::to_string(e.w));
      if (!w.insert(e.w).second) fail("weights not distinct", std::to_string(e.w));
    }
  }

  if (g.root) {
    if (*g.root < 0 || *g.root >= g.n) fail("root out of range", node_str(*g.root));
  }

  if (!g.faulty.empty()) {
    if (!std::is_sorted(g.faulty.begin(), g.faulty.end()))
      fail("faulty list must be sorted", "");
    if (std::adjacent_find(g.faulty.begin(), g.faulty.end()) != g.faulty.end())
      fail("faulty list must be distinct", "");
    for (int v : g.faulty)
      if (v < 0 || v >= g.n) fail("faulty node out of range", node_str(v));
    if (g.root && g.is_faulty(*g.root)) fail("root cannot be faulty", node_str(*g.root));
    if (static_cast<int>(g.faulty.size()) > g.n / 8)
      fail("faulty count exceeds floor(n/8)", node_str(static_cast<int>(g.faulty.size())));
  }

  check_shape(g);

  if (!connected(g)) fail("graph not connected", "");
}

}  // namespace imsim
