#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Luby-style selection.  Each round the still-undecided nodes draw a value,
// fold (draw, uid) minima into their active neighbours' cells, and local
// minima join the set; joiners notify their neighbourhood, which retires and
// tells the survivors to shrink their active lists next round.
struct MisProgram {
  struct Message {
    int type = 0;
    int from = 0;
  };
  enum : int { kMsgJoined, kMsgRetired };
  enum : int { kStepInit, kStepDraw, kStepJoin, kStepNotify, kStepRetire };
  enum : int { kPackCell };

  struct State {
    bool decided = false;
    bool inSet = false;
    bool joinedNow = false;
    std::int64_t pack = kInf;
    std::vector<int> active;  // undecided neighbours, kept mutually exact
  };

  explicit MisProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)), packBase(4 * g.n + 1) {}

  static void drop(std::vector<int>& v, int x) {
    const auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    switch (tag) {
      case kStepInit:
        me.active.assign(ctx.neighbors().begin(), ctx.neighbors().end());
        break;
      case kStepDraw:
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgRetired) drop(me.active, m.from);
        if (me.decided) {
          ctx.vote_halt();
          break;
        }
        ctx.cell_reset(kPackCell);
        me.pack = static_cast<std::int64_t>(ctx.rng(0) & 0x7fffffff) * packBase +
                  ctx.graph().uids[static_cast<std::size_t>(ctx.id())];
        for (int u : me.active) ctx.atomic_min(u, kPackCell, me.pack);
        break;
      case kStepJoin:
        if (me.decided) {
          ctx.vote_halt();
          break;
        }
        if (me.active.empty() || me.pack < ctx.cell(kPackCell)) {
          me.decided = true;
          me.inSet = true;
          me.joinedNow = true;
        }
        break;
      case kStepNotify:
        if (me.joinedNow) {
          me.joinedNow = false;
          for (int u : me.active) ctx.send(u, Message{kMsgJoined, ctx.id()});
        }
        if (me.decided) ctx.vote_halt();
        break;
      case kStepRetire:
        if (!me.decided) {
          bool retire = false;
          for (const Message& m : ctx.inbox())
            if (m.type == kMsgJoined) {
              retire = true;
              drop(me.active, m.from);
            }
          if (retire) {
            me.decided = true;
            for (int u : me.active) ctx.send(u, Message{kMsgRetired, ctx.id()});
          }
        }
        if (me.decided) ctx.vote_halt();
        break;
    }
  }

  std::vector<State> st;
  std::int64_t packBase = 1;
};

}  // namespace

RunResult run_mis(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::MIS, g);
  const int n = g.n;

  MisProgram prog(g);
  typename Engine<MisProgram>::Options opt;
  opt.label = "mis";
  opt.hard_step_bound = 10 * (4 * static_cast<std::int64_t>(n) + 1) + 16;
  opt.cells = {CellSpec{CellOp::Min, kInf}};
  Engine<MisProgram> eng(prog, g, cfg, std::move(opt));

  eng.scope([&] { eng.step(MisProgram::kStepInit); });
  std::int64_t rounds = 0;
  do {
    eng.scope([&] {
      eng.step(MisProgram::kStepDraw);
      eng.step(MisProgram::kStepJoin);
      eng.step(MisProgram::kStepNotify);
      eng.step(MisProgram::kStepRetire);
    });
    ++rounds;
  } while (!eng.all_halted());

  MisOutput out;
  out.inSet.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    out.inSet[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].inSet ? 1 : 0;

  RunResult res;
  res.output = KernelOutput{Kernel::MIS, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(rounds);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
