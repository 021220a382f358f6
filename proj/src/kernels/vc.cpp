#include <algorithm>
#include <cstdint>
#include <queue>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

// Tree 3-colouring: bitwise colour reduction from the uid colouring until all
// colours sit in {0..5}, then three shift-down rounds that free classes 5, 4
// and 3.  Reduction rounds are (send, apply) pairs; each shift round is a
// clocked (send old, shift) pair plus a recolour pass of its own.
struct VcProgram {
  struct Message {
    std::int64_t value = 0;
  };
  enum : int { kStepReduceSend, kStepReduceApply, kStepShiftSend, kStepShiftApply, kStepRecolor };

  explicit VcProgram(const GraphInstance& g)
      : parent(static_cast<std::size_t>(g.n), -1),
        children(static_cast<std::size_t>(g.n)),
        color(static_cast<std::size_t>(g.n)),
        prev(static_cast<std::size_t>(g.n), 0) {
    // Orient the tree away from the root.
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::queue<int> q;
    q.push(*g.root);
    seen[static_cast<std::size_t>(*g.root)] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : g.adjacency[static_cast<std::size_t>(u)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          parent[static_cast<std::size_t>(w)] = u;
          children[static_cast<std::size_t>(u)].push_back(w);
          q.push(w);
        }
    }
    for (int v = 0; v < g.n; ++v) color[static_cast<std::size_t>(v)] = g.uids[static_cast<std::size_t>(v)];
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    const int v = ctx.id();
    const auto idx = static_cast<std::size_t>(v);
    switch (tag) {
      case kStepReduceSend:
        for (int c : children[idx]) ctx.send(c, Message{color[idx]});
        break;
      case kStepReduceApply:
        if (parent[idx] < 0) {
          color[idx] &= 1;
        } else {
          const std::int64_t p = ctx.inbox()[0].value;
          int i = 0;  // a differing bit exists while the colouring is proper
          while (i < 62 && ((color[idx] >> i) & 1) == ((p >> i) & 1)) ++i;
          color[idx] = 2 * i + ((color[idx] >> i) & 1);
        }
        break;
      case kStepShiftSend:
        prev[idx] = color[idx];
        for (int c : children[idx]) ctx.send(c, Message{color[idx]});
        break;
      case kStepShiftApply:
        color[idx] = parent[idx] < 0 ? (prev[idx] == 0 ? 1 : 0) : ctx.inbox()[0].value;
        for (int c : children[idx]) ctx.send(c, Message{color[idx]});
        break;
      case kStepRecolor:
        if (color[idx] == target) {
          const std::int64_t parentNew = parent[idx] < 0 ? -1 : ctx.inbox()[0].value;
          for (std::int64_t cand = 0; cand < 3; ++cand)
            if (cand != parentNew && cand != prev[idx]) {
              color[idx] = cand;
              break;
            }
        }
        break;
    }
  }

  std::int64_t max_color() const {
    std::int64_t best = 0;
    for (std::int64_t c : color) best = std::max(best, c);
    return best;
  }

  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<std::int64_t> color;
  std::vector<std::int64_t> prev;
  std::int64_t target = -1;
};

}  // namespace

RunResult run_vc(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::VC, g);
  const int n = g.n;

  VcProgram prog(g);
  typename Engine<VcProgram>::Options opt;
  opt.label = "vc";
  opt.hard_step_bound = 10 * (2 * 64 + 9);  // reduction needs O(log* uid) rounds
  Engine<VcProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t reductions = 0;
  while (prog.max_color() > 5) {
    eng.scope([&] {
      eng.step(VcProgram::kStepReduceSend);
      eng.step(VcProgram::kStepReduceApply);
    });
    ++reductions;
  }
  for (std::int64_t c = 5; c >= 3; --c) {
    prog.target = c;
    eng.scope([&] {
      eng.step(VcProgram::kStepShiftSend);
      eng.step(VcProgram::kStepShiftApply);
    });
    eng.scope([&] { eng.step(VcProgram::kStepRecolor); });
  }

  VcOutput out;
  out.color.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    out.color[static_cast<std::size_t>(v)] = static_cast<int>(prog.color[static_cast<std::size_t>(v)]);

  RunResult res;
  res.output = KernelOutput{Kernel::VC, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(reductions);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
