#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Each node owns one row of the routing table and fills it in a single
// superstep from its local copy of the weighted topology: settle nodes in
// (cost, uid) order, then read next hops back off the parent chain.
struct DrProgram {
  struct Message {};
  enum : int { kCompute };

  explicit DrProgram(const GraphInstance& g)
      : rows(static_cast<std::size_t>(g.n)) {}

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    if (tag != kCompute) return;
    const GraphInstance& g = ctx.graph();
    const int n = g.n;
    const int src = ctx.id();

    std::vector<std::int64_t> cost(static_cast<std::size_t>(n), kInf);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    using Item = std::pair<std::pair<std::int64_t, std::int64_t>, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    cost[static_cast<std::size_t>(src)] = 0;
    heap.push({{0, g.uids[static_cast<std::size_t>(src)]}, src});
    while (!heap.empty()) {
      const int u = heap.top().second;
      heap.pop();
      if (done[static_cast<std::size_t>(u)]) continue;
      done[static_cast<std::size_t>(u)] = 1;
      for (int w : g.adjacency[static_cast<std::size_t>(u)]) {
        const std::int64_t c = cost[static_cast<std::size_t>(u)] + g.edge_weight(u, w);
        if (c < cost[static_cast<std::size_t>(w)]) {
          cost[static_cast<std::size_t>(w)] = c;
          parent[static_cast<std::size_t>(w)] = u;
          heap.push({{c, g.uids[static_cast<std::size_t>(w)]}, w});
        }
      }
    }

    auto& row = rows[static_cast<std::size_t>(src)];
    row.assign(static_cast<std::size_t>(n), RouteEntry{});
    for (int dst = 0; dst < n; ++dst) {
      RouteEntry& e = row[static_cast<std::size_t>(dst)];
      if (dst == src) {
        e = RouteEntry{0, -1, 0};
        continue;
      }
      e.cost = cost[static_cast<std::size_t>(dst)];
      std::int64_t hops = 0;
      int cur = dst;
      while (parent[static_cast<std::size_t>(cur)] != src) {
        cur = parent[static_cast<std::size_t>(cur)];
        ++hops;
      }
      e.nextHop = cur;
      e.hops = hops + 1;
    }
  }

  std::vector<std::vector<RouteEntry>> rows;
};

}  // namespace

RunResult run_dr(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::DR, g);

  DrProgram prog(g);
  typename Engine<DrProgram>::Options opt;
  opt.label = "dr";
  opt.hard_step_bound = 16;
  Engine<DrProgram> eng(prog, g, cfg, std::move(opt));

  eng.scope([&] { eng.step(DrProgram::kCompute); });

  RunResult res;
  res.output = KernelOutput{Kernel::DR, eng.checksum(), DrOutput{std::move(prog.rows)}};
  res.metrics = eng.metrics(1);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
