#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
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

EngineConfig fa() { return {}; }

EngineConfig fac() {
  EngineConfig cfg;
  cfg.strategy = Strategy::FAC;
  return cfg;
}

// Hand-rolled instance for pinpoint anchors; adjacency is rebuilt and the
// full structural validation applied before use.
GraphInstance custom(GraphKind kind, int n, std::vector<Edge> edges,
                     bool weighted = false) {
  GraphInstance g;
  g.kind = kind;
  g.n = n;
  g.seed = 1;
  g.weighted = weighted;
  g.root = 0;
  for (int v = 0; v < n; ++v) g.uids.push_back(v + 1);
  g.edges = std::move(edges);
  build_adjacency(g);
  validate_instance(g);
  return g;
}

void expect_valid(Kernel k, const GraphInstance& g, const RunResult& r) {
  auto v = validate(k, g, r.output);
  CAPTURE(v.failedRule ? *v.failedRule : std::string("-"));
  CAPTURE(v.witness ? *v.witness : std::string("-"));
  CHECK(v.pass);
}

}  // namespace

TEST_CASE("lcr: max uid wins on a unidirectional ring") {
  auto g = make(GraphKind::RingUni, 64);
  auto r = kernels::run_lcr(g, fa());
  expect_valid(Kernel::LCR, g, r);

  const auto& out = std::get<LeaderOutput>(r.output.payload);
  const std::int64_t top = oracle::max_uid(g);
  int leaders = 0;
  for (int v = 0; v < g.n; ++v) {
    CHECK(out.leaderId[static_cast<std::size_t>(v)] == top);
    if (out.isLeader[static_cast<std::size_t>(v)]) ++leaders;
  }
  CHECK(leaders == 1);

  CHECK(r.metrics.finishes == 2 * 64 + 1);
  CHECK(r.metrics.asyncs == r.metrics.finishes * 64);
  CHECK(r.metrics.messagesTotal == 64 * 64);
  CHECK(r.metrics.barriers == 0);
}

TEST_CASE("bf: distances match a reference BFS; 2D supersteps") {
  for (auto kind : {GraphKind::Random, GraphKind::TreeChain, GraphKind::SpMax}) {
    CAPTURE(std::string(to_string(kind)));
    auto g = make(kind, 24, 5);
    auto r = kernels::run_bf(g, fa());
    expect_valid(Kernel::BF, g, r);

    const auto& out = std::get<BfOutput>(r.output.payload);
    CHECK(out.dist == oracle::bfs_distances(g, *g.root));

    const std::int64_t ecc = oracle::eccentricity(g, *g.root);
    CHECK(r.metrics.measuredRounds == ecc);
    CHECK(r.metrics.finishes == 2 * ecc);
    CHECK(r.metrics.asyncs == r.metrics.finishes * g.n);
  }
}

TEST_CASE("dst: rooted spanning tree with consistent parent/children") {
  auto g = make(GraphKind::Random, 32, 9);
  auto r = kernels::run_dst(g, fa());
  expect_valid(Kernel::DST, g, r);

  const auto& out = std::get<DstOutput>(r.output.payload);
  CHECK(out.parent[static_cast<std::size_t>(*g.root)] == -1);
  int edges = 0;
  for (int v = 0; v < g.n; ++v)
    if (v != *g.root) {
      CHECK(out.parent[static_cast<std::size_t>(v)] >= 0);
      ++edges;
    }
  CHECK(edges == g.n - 1);
}

TEST_CASE("by: unanimous good votes decide that value even under attack") {
  auto g = make(GraphKind::Complete, 16, 3, false, 2);
  REQUIRE(g.faulty.size() == 2);

  for (auto votes : {ByVotes::AllZero, ByVotes::AllOne}) {
    for (auto adv : {ByAdversary::Random, ByAdversary::ConstZero,
                     ByAdversary::ConstOne}) {
      ByOptions opt{votes, adv};
      auto r = kernels::run_by(g, fa(), opt);
      expect_valid(Kernel::BY, g, r);
      const auto& out = std::get<ByOutput>(r.output.payload);
      const std::uint8_t want = votes == ByVotes::AllZero ? 0 : 1;
      for (int v = 0; v < g.n; ++v)
        if (!g.is_faulty(v))
          CHECK(out.decision[static_cast<std::size_t>(v)] == want);
    }
  }
}

TEST_CASE("by: random votes still reach agreement against each adversary") {
  for (int n : {16, 32}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto g = make(GraphKind::Complete, n, seed, false, n / 8);
      for (auto adv : {ByAdversary::Random, ByAdversary::ConstZero,
                       ByAdversary::ConstOne}) {
        CAPTURE(n);
        CAPTURE(seed);
        ByOptions opt{ByVotes::Random, adv};
        auto r = kernels::run_by(g, fa(), opt);
        expect_valid(Kernel::BY, g, r);
      }
    }
  }
}

TEST_CASE("by: superstep formula (t+1)(2D+1) holds") {
  auto g = make(GraphKind::Complete, 16, 3, false, 2);
  auto r = kernels::run_by(g, fa());
  const std::int64_t d = r.metrics.measuredRounds;
  CHECK(d == oracle::diameter(g));
  CHECK(r.metrics.finishes == 3 * (2 * d + 1));
}

TEST_CASE("dr: routing tables on a hand-built weighted square") {
  // Cycle 0-1-2-3-0 with weights chosen so every best route is unique.
  auto g = custom(GraphKind::Random, 4,
                  {{0, 1, 1}, {0, 3, 3}, {1, 2, 2}, {2, 3, 4}}, true);
  auto r = kernels::run_dr(g, fa());
  expect_valid(Kernel::DR, g, r);

  const auto& t = std::get<DrOutput>(r.output.payload).table;
  CHECK(t[0][0] == RouteEntry{0, -1, 0});
  CHECK(t[0][1] == RouteEntry{1, 1, 1});
  CHECK(t[0][2] == RouteEntry{3, 1, 2});  // around the cheap side
  CHECK(t[0][3] == RouteEntry{3, 3, 1});
  CHECK(t[1][3] == RouteEntry{4, 0, 2});
  CHECK(t[2][0] == RouteEntry{3, 1, 2});
  CHECK(t[1][2] == RouteEntry{2, 2, 1});
  CHECK(r.metrics.finishes == 1);  // single clocked pulse
}

TEST_CASE("dr: costs equal Floyd-Warshall on random weighted graphs") {
  for (std::uint64_t seed : {2, 7, 19}) {
    auto g = make(GraphKind::Random, 24, seed, true);
    auto r = kernels::run_dr(g, fa());
    expect_valid(Kernel::DR, g, r);
    const auto want = oracle::floyd_warshall(g);
    const auto& t = std::get<DrOutput>(r.output.payload).table;
    for (int s = 0; s < g.n; ++s)
      for (int d = 0; d < g.n; ++d)
        CHECK(t[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)].cost ==
              want[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)]);
  }
}

TEST_CASE("ds: a star settles in one round with the hub black") {
  auto g = make(GraphKind::TreeStar, 9);
  auto r = kernels::run_ds(g, fa());
  expect_valid(Kernel::DS, g, r);

  int hub = -1;
  for (int v = 0; v < g.n; ++v)
    if (static_cast<int>(g.adjacency[static_cast<std::size_t>(v)].size()) ==
        g.n - 1)
      hub = v;
  REQUIRE(hub >= 0);

  const auto& out = std::get<DsOutput>(r.output.payload);
  for (int v = 0; v < g.n; ++v)
    CHECK(out.color[static_cast<std::size_t>(v)] == (v == hub ? 2 : 1));
  CHECK(r.metrics.measuredRounds == 1);
  CHECK(r.metrics.finishes == 9);
  CHECK(r.metrics.supersteps == 9);
}

TEST_CASE("ds: complete graph elects exactly one black node in round one") {
  auto g = make(GraphKind::Complete, 8);
  auto r = kernels::run_ds(g, fa());
  expect_valid(Kernel::DS, g, r);
  const auto& out = std::get<DsOutput>(r.output.payload);
  CHECK(std::count(out.color.begin(), out.color.end(), 2) == 1);
  CHECK(std::count(out.color.begin(), out.color.end(), 1) == 7);
  CHECK(r.metrics.measuredRounds == 1);
}

TEST_CASE("ds: 9R supersteps and full domination on general graphs") {
  for (std::uint64_t seed : {1, 4, 12}) {
    auto g = make(GraphKind::Random, 40, seed);
    auto r = kernels::run_ds(g, fa());
    expect_valid(Kernel::DS, g, r);
    CHECK(r.metrics.finishes == 9 * r.metrics.measuredRounds);
    CHECK(r.metrics.asyncs == r.metrics.finishes * g.n);
  }
}

TEST_CASE("kc: committees never exceed k and use existing leader uids") {
  auto g = make(GraphKind::Complete, 16, 5);
  g.k = 4;
  auto r = kernels::run_kc(g, fa());
  expect_valid(Kernel::KC, g, r);
  CHECK(r.metrics.finishes == 5 * 4 * 4);

  // k = 1 forces singleton committees: no id repeats.
  auto g1 = make(GraphKind::Random, 12, 8);
  g1.k = 1;
  auto r1 = kernels::run_kc(g1, fa());
  expect_valid(Kernel::KC, g1, r1);
  const auto& com = std::get<KcOutput>(r1.output.payload).committee;
  std::set<std::int64_t> ids(com.begin(), com.end());
  CHECK(ids.size() == com.size());
}

TEST_CASE("mis: independence and maximality on paths, trees and random") {
  auto path3 = make(GraphKind::TreeChain, 3);
  auto r3 = kernels::run_mis(path3, fa());
  expect_valid(Kernel::MIS, path3, r3);
  const auto& in3 = std::get<MisOutput>(r3.output.payload).inSet;
  const int picked = static_cast<int>(std::count(in3.begin(), in3.end(), 1));
  CHECK((picked == 1 || picked == 2));  // {middle} or both endpoints

  for (std::uint64_t seed : {2, 6}) {
    auto g = make(GraphKind::Random, 48, seed);
    auto r = kernels::run_mis(g, fa());
    expect_valid(Kernel::MIS, g, r);
    CHECK(r.metrics.finishes == 4 * r.metrics.measuredRounds + 1);
  }
}

TEST_CASE("hs: bidirectional ring elects the max uid") {
  for (int n : {2, 8, 16}) {
    CAPTURE(n);
    auto g = make(GraphKind::RingBi, n, 21);
    auto r = kernels::run_hs(g, fa());
    expect_valid(Kernel::HS, g, r);
    const auto& out = std::get<LeaderOutput>(r.output.payload);
    CHECK(out.leaderId[0] == oracle::max_uid(g));

    const auto phases =
        static_cast<std::int64_t>(std::ceil(std::log2(n))) + 1;
    CHECK(r.metrics.messagesTotal <= 8 * n * phases);
  }
}

TEST_CASE("dp: every node learns the leader and the exact diameter") {
  auto chain = make(GraphKind::TreeChain, 6);
  auto rc = kernels::run_dp(chain, fa());
  expect_valid(Kernel::DP, chain, rc);
  CHECK(std::get<DpOutput>(rc.output.payload).diameter == 5);

  auto full = make(GraphKind::Complete, 8);
  auto rf = kernels::run_dp(full, fa());
  expect_valid(Kernel::DP, full, rf);
  CHECK(std::get<DpOutput>(rf.output.payload).diameter == 1);

  auto rnd = make(GraphKind::Random, 32, 14);
  auto rr = kernels::run_dp(rnd, fa());
  expect_valid(Kernel::DP, rnd, rr);
  CHECK(std::get<DpOutput>(rr.output.payload).diameter == oracle::diameter(rnd));
}

TEST_CASE("mst: hand-built square drops exactly the heaviest edge") {
  auto g = custom(GraphKind::Random, 4,
                  {{0, 1, 1}, {0, 3, 3}, {1, 2, 2}, {2, 3, 4}}, true);
  auto r = kernels::run_mst(g, fa());
  expect_valid(Kernel::MST, g, r);
  const auto& marked = std::get<MstOutput>(r.output.payload).marked;
  CHECK(marked == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}});
}

TEST_CASE("mst: a tree instance marks every edge; random matches Kruskal") {
  auto tree = make(GraphKind::SpMin, 16, 4, true);
  auto rt = kernels::run_mst(tree, fa());
  expect_valid(Kernel::MST, tree, rt);
  CHECK(std::get<MstOutput>(rt.output.payload).marked.size() ==
        static_cast<std::size_t>(tree.n - 1));

  for (std::uint64_t seed : {3, 9, 27}) {
    auto g = make(GraphKind::Random, 32, seed, true);
    auto r = kernels::run_mst(g, fa());
    expect_valid(Kernel::MST, g, r);
    CHECK(std::get<MstOutput>(r.output.payload).marked == oracle::kruskal(g));
  }
}

TEST_CASE("vc: trees end with a proper 3-coloring; 2L+9 supersteps") {
  for (auto kind :
       {GraphKind::TreeChain, GraphKind::TreeStar, GraphKind::TreeRandom}) {
    CAPTURE(std::string(to_string(kind)));
    auto g = make(kind, 20, 13);
    auto r = kernels::run_vc(g, fa());
    expect_valid(Kernel::VC, g, r);
    CHECK(r.metrics.finishes == 2 * r.metrics.measuredRounds + 9);
  }
}

TEST_CASE("fa and fac agree on outputs for every kernel") {
  struct Case {
    Kernel k;
    GraphInstance g;
  };
  std::vector<Case> cases;
  cases.push_back({Kernel::LCR, make(GraphKind::RingUni, 16, 31)});
  cases.push_back({Kernel::HS, make(GraphKind::RingBi, 16, 31)});
  cases.push_back({Kernel::VC, make(GraphKind::TreeRandom, 16, 31)});
  cases.push_back({Kernel::BF, make(GraphKind::Random, 16, 31)});
  cases.push_back({Kernel::DST, make(GraphKind::Random, 16, 31)});
  cases.push_back({Kernel::BY, make(GraphKind::Complete, 16, 31, false, 2)});
  cases.push_back({Kernel::DR, make(GraphKind::Random, 16, 31, true)});
  cases.push_back({Kernel::DS, make(GraphKind::Random, 16, 31)});
  cases.push_back({Kernel::KC, make(GraphKind::Random, 16, 31)});
  cases.push_back({Kernel::MIS, make(GraphKind::Random, 16, 31)});
  cases.push_back({Kernel::DP, make(GraphKind::Random, 16, 31)});
  cases.push_back({Kernel::MST, make(GraphKind::Random, 16, 31, true)});

  for (auto& c : cases) {
    CAPTURE(std::string(to_string(c.k)));
    if (c.k == Kernel::KC) c.g.k = 3;
    auto a = run_kernel(c.k, c.g, fa());
    auto b = run_kernel(c.k, c.g, fac());
    CHECK(a.output == b.output);
    CHECK(output_digest(a.output) == output_digest(b.output));
    CHECK(a.metrics.asyncs == a.metrics.finishes * c.g.n);
    CHECK(a.metrics.barriers == 0);
    // Any kernel with more than one superstep must charge clocked barriers.
    if (b.metrics.supersteps > 1) CHECK(b.metrics.barriers > 0);
    expect_valid(c.k, c.g, a);
  }
}

TEST_CASE("kernels are deterministic run to run") {
  auto g = make(GraphKind::Random, 24, 17);
  for (Kernel k : {Kernel::BF, Kernel::DS, Kernel::MIS, Kernel::DP}) {
    CAPTURE(std::string(to_string(k)));
    auto a = run_kernel(k, g, fa());
    auto b = run_kernel(k, g, fa());
    CHECK(a.output == b.output);
    CHECK(a.metrics == b.metrics);
    CHECK(a.trace == b.trace);
  }
}

TEST_CASE("run_kernel rejects instances outside the kernel's contract") {
  CHECK_THROWS_AS(run_kernel(Kernel::LCR, make(GraphKind::RingBi, 8), fa()),
                  SpecError);
  CHECK_THROWS_AS(run_kernel(Kernel::HS, make(GraphKind::RingUni, 8), fa()),
                  SpecError);
  CHECK_THROWS_AS(run_kernel(Kernel::VC, make(GraphKind::Random, 8), fa()),
                  SpecError);
  CHECK_THROWS_AS(run_kernel(Kernel::MST, make(GraphKind::Random, 8), fa()),
                  SpecError);  // weights missing
  CHECK_THROWS_AS(run_kernel(Kernel::DR, make(GraphKind::Random, 8), fa()),
                  SpecError);  // weights missing
}
