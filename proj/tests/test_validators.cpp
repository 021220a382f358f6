#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "imsim/generate.hpp"
#include "imsim/kernels.hpp"
#include "imsim/oracle.hpp"
#include "imsim/validators.hpp"

using namespace imsim;

namespace {

GraphInstance make(GraphKind kind, int n, std::uint64_t seed = 11,
                   bool weighted = false, int faulty = 0) {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.seed = seed;
  spec.weighted = weighted;
  spec.faultyCount = faulty;
  if (kind == GraphKind::TreeRandom) spec.maxDegree = 4;
  return generate(spec);
}

// Expect a failure naming `rule`; every failing verdict must carry a witness.
void expect_fail(Kernel k, const GraphInstance& g, const KernelOutput& out,
                 const std::string& rule) {
  auto v = validate(k, g, out);
  CHECK_FALSE(v.pass);
  REQUIRE(v.failedRule.has_value());
  CHECK(*v.failedRule == rule);
  CHECK(v.witness.has_value());
  CHECK_FALSE(v.witness->empty());
}

}  // namespace

// ---- reference-oracle sanity ------------------------------------------------

TEST_CASE("oracle bfs handles chains, stars and the directed ring") {
  auto chain = make(GraphKind::TreeChain, 5);
  // Chain roots at one end or the other; distances are a permutation of 0..4.
  auto d = oracle::bfs_distances(chain, *chain.root);
  CHECK(*std::max_element(d.begin(), d.end()) == 4);
  CHECK(oracle::eccentricity(chain, *chain.root) == 4);
  CHECK(oracle::diameter(chain) == 4);

  auto star = make(GraphKind::TreeStar, 7);
  CHECK(oracle::diameter(star) == 2);

  auto ring = make(GraphKind::RingUni, 6);
  auto rd = oracle::bfs_distances(ring, 0);
  for (int v = 0; v < 6; ++v)
    CHECK(rd[static_cast<std::size_t>(v)] == v);  // successor-only edges
}

TEST_CASE("oracle floyd-warshall and kruskal agree with hand answers") {
  GraphInstance g;
  g.kind = GraphKind::Random;
  g.n = 3;
  g.uids = {1, 2, 3};
  g.root = 0;
  g.weighted = true;
  g.edges = {{0, 1, 1}, {0, 2, 3}, {1, 2, 2}};
  build_adjacency(g);
  validate_instance(g);

  auto cost = oracle::floyd_warshall(g);
  CHECK(cost[0] == std::vector<std::int64_t>{0, 1, 3});
  CHECK(cost[1] == std::vector<std::int64_t>{1, 0, 2});
  CHECK(cost[2] == std::vector<std::int64_t>{3, 2, 0});

  CHECK(oracle::kruskal(g) == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(oracle::max_uid(g) == 3);
}

// ---- mutation killing: each rule detects a seeded corruption -----------------

TEST_CASE("validator kills bf corruption") {
  auto g = make(GraphKind::Random, 16);
  auto out = kernels::run_bf(g, {}).output;
  REQUIRE(validate(Kernel::BF, g, out).pass);

  auto bad = out;
  std::get<BfOutput>(bad.payload).dist[5] += 1;
  expect_fail(Kernel::BF, g, bad, "distance");

  bad = out;
  std::get<BfOutput>(bad.payload).dist.pop_back();
  expect_fail(Kernel::BF, g, bad, "shape");
}

TEST_CASE("validator kills dst corruption") {
  auto g = make(GraphKind::Random, 16);
  auto out = kernels::run_dst(g, {}).output;
  REQUIRE(validate(Kernel::DST, g, out).pass);
  auto& good = std::get<DstOutput>(out.payload);

  auto bad = out;
  std::get<DstOutput>(bad.payload).parent[static_cast<std::size_t>(*g.root)] = 1;
  expect_fail(Kernel::DST, g, bad, "root-parent");

  // Point some non-root node at a non-neighbor.
  int victim = -1, stranger = -1;
  for (int v = 0; v < g.n && victim < 0; ++v) {
    if (v == *g.root) continue;
    for (int u = 0; u < g.n; ++u) {
      if (u == v) continue;
      const auto& adj = g.adjacency[static_cast<std::size_t>(v)];
      if (!std::binary_search(adj.begin(), adj.end(), u)) {
        victim = v;
        stranger = u;
        break;
      }
    }
  }
  REQUIRE(victim >= 0);
  bad = out;
  std::get<DstOutput>(bad.payload).parent[static_cast<std::size_t>(victim)] =
      stranger;
  expect_fail(Kernel::DST, g, bad, "parent-edge");

  // Drop a child from its parent's list.
  int child = victim;
  int parent = good.parent[static_cast<std::size_t>(child)];
  bad = out;
  auto& kids = std::get<DstOutput>(bad.payload)
                   .children[static_cast<std::size_t>(parent)];
  kids.erase(std::find(kids.begin(), kids.end(), child));
  expect_fail(Kernel::DST, g, bad, "children");
}

TEST_CASE("validator kills by corruption") {
  auto g = make(GraphKind::Complete, 16, 3, false, 2);
  auto out = kernels::run_by(g, {}).output;
  REQUIRE(validate(Kernel::BY, g, out).pass);

  int good0 = -1;
  for (int v = 0; v < g.n && good0 < 0; ++v)
    if (!g.is_faulty(v)) good0 = v;
  auto bad = out;
  auto& dec = std::get<ByOutput>(bad.payload).decision;
  dec[static_cast<std::size_t>(good0)] ^= 1;
  expect_fail(Kernel::BY, g, bad, "agreement");

  // Unanimous inputs deciding the other value violate validity.
  auto uni = kernels::run_by(g, {}, {ByVotes::AllOne, ByAdversary::Random});
  REQUIRE(validate(Kernel::BY, g, uni.output).pass);
  bad = uni.output;
  for (auto& x : std::get<ByOutput>(bad.payload).decision) x = 0;
  expect_fail(Kernel::BY, g, bad, "validity");
}

TEST_CASE("validator kills dr corruption") {
  auto g = make(GraphKind::Random, 12, 5, true);
  auto out = kernels::run_dr(g, {}).output;
  REQUIRE(validate(Kernel::DR, g, out).pass);

  auto bad = out;
  std::get<DrOutput>(bad.payload).table[0][3].cost += 1;
  expect_fail(Kernel::DR, g, bad, "route-cost");

  bad = out;
  std::get<DrOutput>(bad.payload).table[2][2] = {0, 1, 0};
  expect_fail(Kernel::DR, g, bad, "route-diagonal");

  bad = out;
  std::get<DrOutput>(bad.payload).table[0][3].nextHop = -5;
  expect_fail(Kernel::DR, g, bad, "route-next");
}

TEST_CASE("validator kills ds corruption") {
  auto g = make(GraphKind::Random, 20, 6);
  auto out = kernels::run_ds(g, {}).output;
  REQUIRE(validate(Kernel::DS, g, out).pass);

  auto bad = out;
  std::get<DsOutput>(bad.payload).color[4] = 7;
  expect_fail(Kernel::DS, g, bad, "color-range");

  bad = out;
  for (auto& c : std::get<DsOutput>(bad.payload).color) c = 0;  // all white
  expect_fail(Kernel::DS, g, bad, "domination");
}

TEST_CASE("validator kills kc corruption") {
  auto g = make(GraphKind::Random, 16, 7);
  g.k = 3;
  auto out = kernels::run_kc(g, {}).output;
  REQUIRE(validate(Kernel::KC, g, out).pass);

  auto bad = out;
  std::get<KcOutput>(bad.payload).committee[2] = 999999;  // no such uid
  expect_fail(Kernel::KC, g, bad, "committee-id");

  bad = out;
  auto& com = std::get<KcOutput>(bad.payload).committee;
  for (auto& c : com) c = com[0];  // one committee of size n > k
  expect_fail(Kernel::KC, g, bad, "committee-size");
}

TEST_CASE("validator kills mis corruption") {
  auto g = make(GraphKind::Random, 20, 8);
  auto out = kernels::run_mis(g, {}).output;
  REQUIRE(validate(Kernel::MIS, g, out).pass);

  auto bad = out;
  for (auto& x : std::get<MisOutput>(bad.payload).inSet) x = 1;
  expect_fail(Kernel::MIS, g, bad, "independence");

  bad = out;
  for (auto& x : std::get<MisOutput>(bad.payload).inSet) x = 0;
  expect_fail(Kernel::MIS, g, bad, "maximality");
}

TEST_CASE("validator kills leader corruption in lcr and hs") {
  auto ring = make(GraphKind::RingUni, 12, 9);
  auto out = kernels::run_lcr(ring, {}).output;
  REQUIRE(validate(Kernel::LCR, ring, out).pass);

  auto bad = out;
  for (auto& id : std::get<LeaderOutput>(bad.payload).leaderId)
    id = oracle::max_uid(ring) - 1;  // uids are distinct, so not the max
  expect_fail(Kernel::LCR, ring, bad, "leader-id");

  // Everyone claiming: the first claimant without the max uid is caught.
  bad = out;
  for (auto& x : std::get<LeaderOutput>(bad.payload).isLeader) x = 1;
  expect_fail(Kernel::LCR, ring, bad, "leader-node");

  // Nobody claiming: the leader count must be exactly one.
  bad = out;
  for (auto& x : std::get<LeaderOutput>(bad.payload).isLeader) x = 0;
  expect_fail(Kernel::LCR, ring, bad, "unique-leader");

  auto bi = make(GraphKind::RingBi, 12, 9);
  auto hs = kernels::run_hs(bi, {}).output;
  REQUIRE(validate(Kernel::HS, bi, hs).pass);
  bad = hs;
  std::get<LeaderOutput>(bad.payload).leaderId[3] = 0;  // uids start at 1
  expect_fail(Kernel::HS, bi, bad, "leader-id");
}

TEST_CASE("validator kills dp corruption") {
  auto g = make(GraphKind::Random, 16, 10);
  auto out = kernels::run_dp(g, {}).output;
  REQUIRE(validate(Kernel::DP, g, out).pass);

  auto bad = out;
  std::get<DpOutput>(bad.payload).diameter += 1;
  expect_fail(Kernel::DP, g, bad, "diameter");
}

TEST_CASE("validator kills mst corruption") {
  auto g = make(GraphKind::Random, 16, 11, true);
  auto out = kernels::run_mst(g, {}).output;
  REQUIRE(validate(Kernel::MST, g, out).pass);

  auto bad = out;
  std::get<MstOutput>(bad.payload).marked.pop_back();
  expect_fail(Kernel::MST, g, bad, "tree-edges");

  bad = out;
  auto& marked = std::get<MstOutput>(bad.payload).marked;
  for (const Edge& e : g.edges) {
    std::pair<int, int> cand{e.u, e.v};
    if (!std::binary_search(marked.begin(), marked.end(), cand)) {
      marked[0] = cand;  // swap in a non-tree edge
      std::sort(marked.begin(), marked.end());
      break;
    }
  }
  expect_fail(Kernel::MST, g, bad, "tree-edges");
}

TEST_CASE("validator kills vc corruption") {
  auto g = make(GraphKind::TreeRandom, 20, 12);
  auto out = kernels::run_vc(g, {}).output;
  REQUIRE(validate(Kernel::VC, g, out).pass);

  auto bad = out;
  std::get<VcOutput>(bad.payload).color[0] = 5;
  expect_fail(Kernel::VC, g, bad, "color-range");

  bad = out;
  auto& color = std::get<VcOutput>(bad.payload).color;
  const Edge& e = g.edges.front();
  color[static_cast<std::size_t>(e.u)] = color[static_cast<std::size_t>(e.v)];
  expect_fail(Kernel::VC, g, bad, "proper-coloring");
}

// ---- structural behaviour ----------------------------------------------------

TEST_CASE("validate rejects a payload tagged for another kernel") {
  auto g = make(GraphKind::Random, 8);
  auto out = kernels::run_mis(g, {}).output;
  CHECK_THROWS_AS(validate(Kernel::BF, g, out), SpecError);
}

TEST_CASE("passing verdicts carry no rule; failing ones always carry both") {
  auto g = make(GraphKind::Random, 12);
  auto out = kernels::run_bf(g, {}).output;
  auto ok = validate(Kernel::BF, g, out);
  CHECK(ok.pass);
  CHECK_FALSE(ok.failedRule.has_value());
  CHECK_FALSE(ok.witness.has_value());
}
