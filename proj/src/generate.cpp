#include "imsim/generate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace imsim {

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

std::pair<int, int> norm(int a, int b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

// Uniform spanning tree of the complete graph via the Aldous-Broder walk:
// start anywhere, step to a uniformly random other node, and keep the edge
// that first enters each node.
EdgeSet random_walk_tree(int n, SplitMix64& rng) {
  EdgeSet tree;
  if (n <= 1) return tree;
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  int current = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  visited[static_cast<std::size_t>(current)] = 1;
  int remaining = n - 1;
  while (remaining > 0) {
    int next = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (next >= current) ++next;  // uniform over nodes != current
    if (!visited[static_cast<std::size_t>(next)]) {
      visited[static_cast<std::size_t>(next)] = 1;
      tree.insert(norm(current, next));
      --remaining;
    }
    current = next;
  }
  return tree;
}

EdgeSet make_edges(const GeneratorSpec& spec, SplitMix64& rng,
                   std::vector<Edge>& directed_out) {
  const int n = spec.n;
  EdgeSet edges;
  switch (spec.kind) {
    case GraphKind::RingUni: {
      if (n < 2) throw SpecError("invalid spec: ring requires n >= 2");
      for (int i = 0; i < n; ++i)
        directed_out.push_back({i, (i + 1) % n, 0});
      return edges;  // unused for the directed kind
    }
    case GraphKind::RingBi: {
      if (n < 2) throw SpecError("invalid spec: ring requires n >= 2");
      for (int i = 0; i < n; ++i) edges.insert(norm(i, (i + 1) % n));
      return edges;
    }
    case GraphKind::TreeStar: {
      for (int i = 1; i < n; ++i) edges.insert({0, i});
      return edges;
    }
    case GraphKind::TreeChain: {
      for (int i = 0; i + 1 < n; ++i) edges.insert({i, i + 1});
      return edges;
    }
    case GraphKind::TreeRandom: {
      if (!spec.maxDegree)
        throw SpecError("invalid spec: tree-random requires maxDegree");
      if (*spec.maxDegree < 2)
        throw SpecError("invalid spec: maxDegree must be >= 2");
      std::vector<int> degree(static_cast<std::size_t>(n), 0);
      for (int i = 1; i < n; ++i) {
        std::vector<int> eligible;
        for (int j = 0; j < i; ++j)
          if (degree[static_cast<std::size_t>(j)] < *spec.maxDegree)
            eligible.push_back(j);
        const int parent =
            eligible[rng.below(static_cast<std::uint64_t>(eligible.size()))];
        edges.insert(norm(parent, i));
        ++degree[static_cast<std::size_t>(parent)];
        ++degree[static_cast<std::size_t>(i)];
      }
      return edges;
    }
    case GraphKind::Complete: {
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.insert({u, v});
      return edges;
    }
    case GraphKind::Random: {
      // G(n, 1/2) unioned with a random-walk spanning tree so the
      // connectivity invariant holds for every draw.
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (rng.next() & 1u) edges.insert({u, v});
      EdgeSet tree = random_walk_tree(n, rng);
      edges.insert(tree.begin(), tree.end());
      return edges;
    }
    case GraphKind::SpMin: {
      return random_walk_tree(n, rng);
    }
    case GraphKind::SpMax: {
      if (n < 2) throw SpecError("invalid spec: sp-max requires n >= 2");
      const std::int64_t target = sp_max_target(n);
      const std::int64_t complete = std::int64_t{n} * (n - 1) / 2;
      if (target > complete)
        throw SpecError(
            "invalid spec: sp-max target n*ceil(log2 n) exceeds the complete "
            "graph at n=" + std::to_string(n));
      // Same walk, same substream: the sp-min tree for this seed is always a
      // subset of the sp-max edge set.
      edges = random_walk_tree(n, rng);
      while (static_cast<std::int64_t>(edges.size()) < target) {
        const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        if (b >= a) ++b;
        edges.insert(norm(a, b));
      }
      return edges;
    }
  }
  throw SpecError("invalid spec: unknown kind");
}

}  // namespace

std::int64_t sp_max_target(int n) {
  int lg = 0;
  while ((std::int64_t{1} << lg) < n) ++lg;
  return std::int64_t{n} * lg;
}

GraphInstance generate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw SpecError("invalid spec: n must be >= 1");
  if (spec.k && *spec.k < 1) throw SpecError("invalid spec: k must be >= 1");
  if (spec.faultyCount < 0)
    throw SpecError("invalid spec: faultyCount must be >= 0");
  if (spec.faultyCount > spec.n / 8)
    throw SpecError("invalid spec: faultyCount exceeds floor(n/8)");

  GraphInstance g;
  g.kind = spec.kind;
  g.n = spec.n;
  g.seed = spec.seed;
  g.maxDegree = spec.kind == GraphKind::TreeRandom ? spec.maxDegree : std::nullopt;
  g.k = spec.k;
  g.weighted = spec.weighted;

  {
    SplitMix64 rng = substream(spec.seed, Stream::Edges);
    std::vector<Edge> directed;
    EdgeSet undirected = make_edges(spec, rng, directed);
    if (spec.kind == GraphKind::RingUni) {
      g.edges = std::move(directed);
      std::sort(g.edges.begin(), g.edges.end(),
                [](const Edge& a, const Edge& b) {
                  return std::tie(a.u, a.v) < std::tie(b.u, b.v);
                });
    } else {
      for (const auto& [u, v] : undirected) g.edges.push_back({u, v, 0});
      // std::set iteration is already lexicographic; keep it explicit anyway.
      std::sort(g.edges.begin(), g.edges.end(),
                [](const Edge& a, const Edge& b) {
                  return std::tie(a.u, a.v) < std::tie(b.u, b.v);
                });
    }
  }

  {
    // uids: n distinct values sampled from [1, 4n].
    SplitMix64 rng = substream(spec.seed, Stream::Uids);
    std::vector<std::int64_t> pool(static_cast<std::size_t>(4) * spec.n);
    std::iota(pool.begin(), pool.end(), 1);
    shuffle(pool, rng);
    g.uids.assign(pool.begin(), pool.begin() + spec.n);
  }

  if (spec.weighted) {
    // Distinct weights: a random permutation of 1..m over the sorted edges,
    // so the minimum spanning tree is unique.
    SplitMix64 rng = substream(spec.seed, Stream::Weights);
    std::vector<std::int64_t> perm(g.edges.size());
    std::iota(perm.begin(), perm.end(), 1);
    shuffle(perm, rng);
    for (std::size_t i = 0; i < g.edges.size(); ++i) g.edges[i].w = perm[i];
  }

  switch (spec.rootPolicy) {
    case RootPolicy::None:
      break;
    case RootPolicy::FixedZero:
      g.root = 0;
      break;
    case RootPolicy::Random: {
      SplitMix64 rng = substream(spec.seed, Stream::Root);
      g.root = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n)));
      break;
    }
  }

  if (spec.faultyCount > 0) {
    SplitMix64 rng = substream(spec.seed, Stream::Faulty);
    std::vector<int> pool;
    for (int v = 0; v < spec.n; ++v)
      if (!g.root || v != *g.root) pool.push_back(v);
    if (spec.faultyCount > static_cast<int>(pool.size()))
      throw SpecError("invalid spec: faultyCount exceeds non-root nodes");
    shuffle(pool, rng);
    g.faulty.assign(pool.begin(), pool.begin() + spec.faultyCount);
    std::sort(g.faulty.begin(), g.faulty.end());
  }

  build_adjacency(g);
  validate_instance(g);
  return g;
}

}  // namespace imsim
