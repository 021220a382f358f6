#include <cstdint>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

// Diameter by waves: every node floods its id; the round in which a node
// learns its last new origin is that node's eccentricity.  A max fold over
// (uid, eccentricity) then elects the largest uid and publishes the largest
// eccentricity, which is the diameter.
struct DpProgram {
  struct Message {
    std::vector<int> origins;
  };
  enum : int { kStepWaveSend, kStepWaveIngest, kStepMaxSend, kStepMaxIngest };
  enum : int { kUidCell, kEccCell };

  struct State {
    std::vector<char> seen;
    std::vector<int> fresh;
    std::int64_t ecc = 0;
    std::int64_t bestUid = -1;
    std::int64_t bestEcc = -1;
    bool changed = true;
  };

  explicit DpProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)) {
    for (int v = 0; v < g.n; ++v) {
      auto& s = st[static_cast<std::size_t>(v)];
      s.seen.assign(static_cast<std::size_t>(g.n), 0);
      s.seen[static_cast<std::size_t>(v)] = 1;
      s.fresh = {v};
    }
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    switch (tag) {
      case kStepWaveSend:
        if (!me.fresh.empty())
          for (int nbr : ctx.neighbors()) ctx.send(nbr, Message{me.fresh});
        break;
      case kStepWaveIngest: {
        std::vector<int> arrived;
        for (const Message& m : ctx.inbox())
          for (int o : m.origins)
            if (!me.seen[static_cast<std::size_t>(o)]) {
              me.seen[static_cast<std::size_t>(o)] = 1;
              arrived.push_back(o);
            }
        if (!arrived.empty()) me.ecc = wave;
        me.fresh = std::move(arrived);
        break;
      }
      case kStepMaxSend:
        if (me.changed)
          for (int nbr : ctx.neighbors()) {
            ctx.atomic_max(nbr, kUidCell, me.bestUid);
            ctx.atomic_max(nbr, kEccCell, me.bestEcc);
          }
        break;
      case kStepMaxIngest: {
        const std::int64_t nu = std::max(ctx.cell(kUidCell), me.bestUid);
        const std::int64_t ne = std::max(ctx.cell(kEccCell), me.bestEcc);
        me.changed = nu != me.bestUid || ne != me.bestEcc;
        me.bestUid = nu;
        me.bestEcc = ne;
        break;
      }
    }
  }

  bool any_fresh() const {
    for (const State& s : st)
      if (!s.fresh.empty()) return true;
    return false;
  }
  bool any_changed() const {
    for (const State& s : st)
      if (s.changed) return true;
    return false;
  }

  std::vector<State> st;
  std::int64_t wave = 0;
};

}  // namespace

RunResult run_dp(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::DP, g);
  const int n = g.n;

  DpProgram prog(g);
  typename Engine<DpProgram>::Options opt;
  opt.label = "dp";
  opt.hard_step_bound = 10 * (4 * static_cast<std::int64_t>(n) + 8);
  opt.cells = {CellSpec{CellOp::Max, -1}, CellSpec{CellOp::Max, -1}};
  Engine<DpProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t waves = 0;
  do {
    prog.wave = ++waves;
    eng.scope([&] {
      eng.step(DpProgram::kStepWaveSend);
      eng.step(DpProgram::kStepWaveIngest);
    });
  } while (prog.any_fresh());

  for (int v = 0; v < n; ++v) {
    auto& s = prog.st[static_cast<std::size_t>(v)];
    s.bestUid = g.uids[static_cast<std::size_t>(v)];
    s.bestEcc = s.ecc;
    s.changed = true;
  }
  while (prog.any_changed()) {
    eng.scope([&] {
      eng.step(DpProgram::kStepMaxSend);
      eng.step(DpProgram::kStepMaxIngest);
    });
  }

  DpOutput out;
  out.leaderId.resize(static_cast<std::size_t>(n));
  out.isLeader.resize(static_cast<std::size_t>(n));
  out.diameter = prog.st[0].bestEcc;
  for (int v = 0; v < n; ++v) {
    out.leaderId[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].bestUid;
    out.isLeader[static_cast<std::size_t>(v)] =
        g.uids[static_cast<std::size_t>(v)] == prog.st[static_cast<std::size_t>(v)].bestUid ? 1 : 0;
  }

  RunResult res;
  res.output = KernelOutput{Kernel::DP, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(waves - 1);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
