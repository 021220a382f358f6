#include <cstdint>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

// Unidirectional ring election: every node forwards its current candidate to
// its successor every round, adopting any larger uid it hears.  After n rounds
// the maximum uid has made a full circle, so every node knows it and the owner
// has seen its own uid return.
struct LcrProgram {
  struct Message {
    std::int64_t value = 0;
  };
  enum : int { kInit, kTransmit, kProcess };

  struct State {
    std::int64_t send = 0;
    std::int64_t best = 0;
    bool isLeader = false;
  };

  explicit LcrProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)) {}

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    const std::int64_t uid = ctx.graph().uids[static_cast<std::size_t>(ctx.id())];
    switch (tag) {
      case kInit:
        me.send = uid;
        me.best = uid;
        break;
      case kTransmit:
        ctx.send(ctx.neighbors()[0], Message{me.send});
        break;
      case kProcess: {
        const std::int64_t x = ctx.inbox()[0].value;
        me.best = std::max(me.best, x);
        if (x > uid) me.send = x;
        if (x == uid) me.isLeader = true;
        break;
      }
    }
  }

  std::vector<State> st;
};

}  // namespace

RunResult run_lcr(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::LCR, g);
  const int n = g.n;

  LcrProgram prog(g);
  typename Engine<LcrProgram>::Options opt;
  opt.label = "lcr";
  opt.mailbox_capacity = 1;  // the successor link carries one value per round
  opt.hard_step_bound = 10 * (2 * static_cast<std::int64_t>(n) + 1) + 16;
  Engine<LcrProgram> eng(prog, g, cfg, std::move(opt));

  eng.scope([&] {
    eng.step(LcrProgram::kInit);
    eng.advance();
  });
  for (int r = 0; r < n; ++r) {
    eng.scope([&] {
      eng.step(LcrProgram::kTransmit);
      eng.step(LcrProgram::kProcess);
    });
  }

  LeaderOutput out;
  out.leaderId.resize(static_cast<std::size_t>(n));
  out.isLeader.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    out.leaderId[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].best;
    out.isLeader[static_cast<std::size_t>(v)] =
        prog.st[static_cast<std::size_t>(v)].isLeader ? 1 : 0;
  }

  RunResult res;
  res.output = KernelOutput{Kernel::LCR, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(n);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
