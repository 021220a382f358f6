#include "imsim/validators.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "imsim/oracle.hpp"

namespace imsim {
namespace {

Verdict fail(std::string rule, std::string witness) {
  Verdict v;
  v.pass = false;
  v.failedRule = std::move(rule);
  v.witness = std::move(witness);
  return v;
}

std::string node_str(const GraphInstance& g, int v) {
  return "node " + std::to_string(v) + " (uid " +
         std::to_string(g.uids[static_cast<std::size_t>(v)]) + ")";
}

bool has_edge(const GraphInstance& g, int u, int v) {
  const auto& adj = g.adjacency[static_cast<std::size_t>(u)];
  return std::binary_search(adj.begin(), adj.end(), v);
}

template <typename T>
Verdict check_size(const std::vector<T>& vec, int n, const char* what) {
  if (static_cast<int>(vec.size()) != n)
    return fail("shape", std::string(what) + " has " + std::to_string(vec.size()) +
                             " entries, expected " + std::to_string(n));
  return {};
}

int require_root(const GraphInstance& g) {
  if (!g.root) throw SpecError("validator: instance has no root");
  return *g.root;
}

Verdict check_bf(const GraphInstance& g, const BfOutput& out) {
  if (Verdict v = check_size(out.dist, g.n, "dist"); !v.pass) return v;
  const std::vector<std::int64_t> want = oracle::bfs_distances(g, require_root(g));
  for (int v = 0; v < g.n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (out.dist[i] != want[i])
      return fail("distance", node_str(g, v) + ": dist " + std::to_string(out.dist[i]) +
                                  ", oracle " + std::to_string(want[i]));
  }
  return {};
}

Verdict check_dst(const GraphInstance& g, const DstOutput& out) {
  if (Verdict v = check_size(out.parent, g.n, "parent"); !v.pass) return v;
  if (Verdict v = check_size(out.children, g.n, "children"); !v.pass) return v;
  const int root = require_root(g);
  const std::vector<std::int64_t> dist = oracle::bfs_distances(g, root);
  for (int v = 0; v < g.n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    const int p = out.parent[i];
    if (v == root) {
      if (p != -1) return fail("root-parent", node_str(g, v) + ": root has parent " +
                                                  std::to_string(p));
      continue;
    }
    if (p < 0 || p >= g.n || !has_edge(g, p, v))
      return fail("parent-edge",
                  node_str(g, v) + ": parent " + std::to_string(p) + " is not a neighbor");
    if (dist[i] != dist[static_cast<std::size_t>(p)] + 1)
      return fail("tree-depth", node_str(g, v) + ": depth " + std::to_string(dist[i]) +
                                    " but parent depth " +
                                    std::to_string(dist[static_cast<std::size_t>(p)]));
  }
  std::vector<std::vector<int>> expected(static_cast<std::size_t>(g.n));
  for (int v = 0; v < g.n; ++v)
    if (v != root) expected[static_cast<std::size_t>(out.parent[static_cast<std::size_t>(v)])]
        .push_back(v);
  for (int v = 0; v < g.n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (out.children[i] != expected[i])
      return fail("children", node_str(g, v) + ": child list disagrees with parent links");
  }
  return {};
}

Verdict check_by(const GraphInstance& g, const ByOutput& out) {
  if (Verdict v = check_size(out.initialVote, g.n, "initialVote"); !v.pass) return v;
  if (Verdict v = check_size(out.decision, g.n, "decision"); !v.pass) return v;
  int first = -1;
  bool unanimous = true;
  for (int v = 0; v < g.n; ++v) {
    if (g.is_faulty(v)) continue;
    const auto i = static_cast<std::size_t>(v);
    if (first < 0) {
      first = v;
      continue;
    }
    const auto f = static_cast<std::size_t>(first);
    if (out.decision[i] != out.decision[f])
      return fail("agreement", node_str(g, first) + " decided " +
                                   std::to_string(out.decision[f]) + ", " + node_str(g, v) +
                                   " decided " + std::to_string(out.decision[i]));
    if (out.initialVote[i] != out.initialVote[f]) unanimous = false;
  }
  if (first >= 0 && unanimous) {
    const auto f = static_cast<std::size_t>(first);
    if (out.decision[f] != out.initialVote[f])
      return fail("validity", "good nodes unanimously voted " +
                                  std::to_string(out.initialVote[f]) + " but decided " +
                                  std::to_string(out.decision[f]));
  }
  return {};
}

Verdict check_dr(const GraphInstance& g, const DrOutput& out) {
  const int n = g.n;
  if (static_cast<int>(out.table.size()) != n)
    return fail("shape", "table has " + std::to_string(out.table.size()) +
                             " rows, expected " + std::to_string(n));
  for (int s = 0; s < n; ++s)
    if (Verdict v = check_size(out.table[static_cast<std::size_t>(s)], n, "table row");
        !v.pass)
      return v;
  const std::vector<std::vector<std::int64_t>> want = oracle::floyd_warshall(g);
  for (int s = 0; s < n; ++s) {
    for (int d = 0; d < n; ++d) {
      const RouteEntry& e = out.table[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)];
      const std::string pair =
          "(" + std::to_string(s) + "," + std::to_string(d) + ")";
      if (e.cost != want[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)])
        return fail("route-cost", "pair " + pair + ": cost " + std::to_string(e.cost) +
                                      ", oracle " +
                                      std::to_string(want[static_cast<std::size_t>(s)]
                                                         [static_cast<std::size_t>(d)]));
      if (s == d) {
        if (e.cost != 0 || e.nextHop != -1 || e.hops != 0)
          return fail("route-diagonal", "pair " + pair + ": nonzero diagonal entry");
        continue;
      }
      if (e.nextHop < 0 || e.nextHop >= n || !has_edge(g, s, e.nextHop))
        return fail("route-next", "pair " + pair + ": next hop " +
                                      std::to_string(e.nextHop) + " is not a neighbor");
      const RouteEntry& rest =
          out.table[static_cast<std::size_t>(e.nextHop)][static_cast<std::size_t>(d)];
      if (e.cost != g.edge_weight(s, e.nextHop) + rest.cost)
        return fail("route-next", "pair " + pair + ": cost does not decompose through hop " +
                                      std::to_string(e.nextHop));
    }
  }
  return {};
}

Verdict check_ds(const GraphInstance& g, const DsOutput& out) {
  if (Verdict v = check_size(out.color, g.n, "color"); !v.pass) return v;
  for (int v = 0; v < g.n; ++v) {
    const int c = out.color[static_cast<std::size_t>(v)];
    if (c < 0 || c > 2)
      return fail("color-range", node_str(g, v) + ": color " + std::to_string(c));
  }
  for (int v = 0; v < g.n; ++v) {
    if (out.color[static_cast<std::size_t>(v)] == 2) continue;
    bool covered = false;
    for (int nbr : g.adjacency[static_cast<std::size_t>(v)])
      if (out.color[static_cast<std::size_t>(nbr)] == 2) {
        covered = true;
        break;
      }
    if (!covered) return fail("domination", node_str(g, v) + " has no Black neighbor");
  }
  return {};
}

Verdict check_kc(const GraphInstance& g, const KcOutput& out) {
  if (Verdict v = check_size(out.committee, g.n, "committee"); !v.pass) return v;
  std::vector<std::int64_t> uids = g.uids;
  std::sort(uids.begin(), uids.end());
  std::map<std::int64_t, int> sizes;
  for (int v = 0; v < g.n; ++v) {
    const std::int64_t id = out.committee[static_cast<std::size_t>(v)];
    if (!std::binary_search(uids.begin(), uids.end(), id))
      return fail("committee-id",
                  node_str(g, v) + ": committee id " + std::to_string(id) + " is no uid");
    ++sizes[id];
  }
  const int bound = g.k.value_or(g.n);
  for (const auto& [id, size] : sizes)
    if (size > bound)
      return fail("committee-size", "committee " + std::to_string(id) + " has " +
                                        std::to_string(size) + " members, bound " +
                                        std::to_string(bound));
  return {};
}

Verdict check_mis(const GraphInstance& g, const MisOutput& out) {
  if (Verdict v = check_size(out.inSet, g.n, "inSet"); !v.pass) return v;
  for (const Edge& e : g.edges)
    if (out.inSet[static_cast<std::size_t>(e.u)] && out.inSet[static_cast<std::size_t>(e.v)])
      return fail("independence",
                  "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  for (int v = 0; v < g.n; ++v) {
    if (out.inSet[static_cast<std::size_t>(v)]) continue;
    bool dominated = false;
    for (int nbr : g.adjacency[static_cast<std::size_t>(v)])
      if (out.inSet[static_cast<std::size_t>(nbr)]) {
        dominated = true;
        break;
      }
    if (!dominated) return fail("maximality", node_str(g, v) + " could join the set");
  }
  return {};
}

Verdict check_leader(const GraphInstance& g, const std::vector<std::int64_t>& leaderId,
                     const std::vector<std::uint8_t>& isLeader) {
  if (Verdict v = check_size(leaderId, g.n, "leaderId"); !v.pass) return v;
  if (Verdict v = check_size(isLeader, g.n, "isLeader"); !v.pass) return v;
  const std::int64_t maxUid = oracle::max_uid(g);
  int leaders = 0;
  for (int v = 0; v < g.n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (isLeader[i]) {
      ++leaders;
      if (g.uids[i] != maxUid)
        return fail("leader-node", node_str(g, v) + " claims leadership but max uid is " +
                                       std::to_string(maxUid));
    }
    if (leaderId[i] != maxUid)
      return fail("leader-id", node_str(g, v) + ": leaderId " + std::to_string(leaderId[i]) +
                                   ", max uid " + std::to_string(maxUid));
  }
  if (leaders != 1)
    return fail("unique-leader", std::to_string(leaders) + " nodes claim leadership");
  return {};
}

Verdict check_dp(const GraphInstance& g, const DpOutput& out) {
  if (Verdict v = check_leader(g, out.leaderId, out.isLeader); !v.pass) return v;
  const std::int64_t want = oracle::diameter(g);
  if (out.diameter != want)
    return fail("diameter", "diameter " + std::to_string(out.diameter) + ", oracle " +
                                std::to_string(want));
  return {};
}

Verdict check_mst(const GraphInstance& g, const MstOutput& out) {
  const std::vector<std::pair<int, int>> want = oracle::kruskal(g);
  if (!std::is_sorted(out.marked.begin(), out.marked.end()))
    return fail("shape", "marked edge list is not sorted");
  if (out.marked != want) {
    for (const auto& e : want)
      if (!std::binary_search(out.marked.begin(), out.marked.end(), e))
        return fail("tree-edges", "missing (" + std::to_string(e.first) + "," +
                                      std::to_string(e.second) + ")");
    for (const auto& e : out.marked)
      if (!std::binary_search(want.begin(), want.end(), e))
        return fail("tree-edges", "extra (" + std::to_string(e.first) + "," +
                                      std::to_string(e.second) + ")");
    return fail("tree-edges", "duplicate marked edges");
  }
  return {};
}

Verdict check_vc(const GraphInstance& g, const VcOutput& out) {
  if (Verdict v = check_size(out.color, g.n, "color"); !v.pass) return v;
  for (int v = 0; v < g.n; ++v) {
    const int c = out.color[static_cast<std::size_t>(v)];
    if (c < 0 || c > 2)
      return fail("color-range", node_str(g, v) + ": color " + std::to_string(c));
  }
  for (const Edge& e : g.edges)
    if (out.color[static_cast<std::size_t>(e.u)] == out.color[static_cast<std::size_t>(e.v)])
      return fail("proper-coloring",
                  "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") share color " +
                      std::to_string(out.color[static_cast<std::size_t>(e.u)]));
  return {};
}

template <typename Payload>
const Payload& payload_as(const KernelOutput& out, Kernel kernel) {
  const Payload* p = std::get_if<Payload>(&out.payload);
  if (p == nullptr)
    throw SpecError(std::string("validator: payload does not match kernel ") +
                    to_string(kernel));
  return *p;
}

}  // namespace

Verdict validate(Kernel kernel, const GraphInstance& g, const KernelOutput& out) {
  if (kernel != out.kernel)
    throw SpecError(std::string("validator: output was produced by kernel ") +
                    to_string(out.kernel) + ", not " + to_string(kernel));
  switch (kernel) {
    case Kernel::BF: return check_bf(g, payload_as<BfOutput>(out, kernel));
    case Kernel::DST: return check_dst(g, payload_as<DstOutput>(out, kernel));
    case Kernel::BY: return check_by(g, payload_as<ByOutput>(out, kernel));
    case Kernel::DR: return check_dr(g, payload_as<DrOutput>(out, kernel));
    case Kernel::DS: return check_ds(g, payload_as<DsOutput>(out, kernel));
    case Kernel::KC: return check_kc(g, payload_as<KcOutput>(out, kernel));
    case Kernel::MIS: return check_mis(g, payload_as<MisOutput>(out, kernel));
    case Kernel::LCR: {
      const auto& p = payload_as<LeaderOutput>(out, kernel);
      return check_leader(g, p.leaderId, p.isLeader);
    }
    case Kernel::HS: {
      const auto& p = payload_as<LeaderOutput>(out, kernel);
      return check_leader(g, p.leaderId, p.isLeader);
    }
    case Kernel::DP: return check_dp(g, payload_as<DpOutput>(out, kernel));
    case Kernel::MST: return check_mst(g, payload_as<MstOutput>(out, kernel));
    case Kernel::VC: return check_vc(g, payload_as<VcOutput>(out, kernel));
  }
  throw SpecError("validator: unknown kernel tag");
}

}  // namespace imsim
