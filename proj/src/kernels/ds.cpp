#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

enum DsColor : int { kWhite = 0, kGrey = 1, kBlack = 2 };

// Greedy-randomized domination.  Every round (nine supersteps) the nodes
// count white coverage, spread the packed count two hops, the two-hop
// maximum (ties toward the higher uid) stands as candidate, each candidate
// joins the dominating set with probability 1/c where c counts candidates
// within two hops of it (itself included), and new members grey out their
// white neighbourhood.  The round closes with a colour echo.
struct DsProgram {
  struct Message {
    int type = 0;
    int value = 0;  // sender for candidacies, colour for echoes
    std::vector<int> set;
  };
  enum : int { kMsgCandidate, kMsgCandSet, kMsgBlackNote, kMsgEcho };
  enum : int {
    kStepWhiteCount,
    kStepSpreadPack,
    kStepForwardMax,
    kStepCandidacy,
    kStepCandForward,
    kStepJoin,
    kStepRecolor,
    kStepEchoSend,
    kStepEchoIngest,
  };
  enum : int { kWhiteCell, kPackCell, kFwdCell };

  struct State {
    int color = kWhite;
    std::int64_t pack = -1;
    std::int64_t hoodMax = -1;
    bool candidate = false;
    std::vector<int> cands;  // candidates within one hop of this node
  };

  explicit DsProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)), packBase(4 * g.n + 1) {}

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    switch (tag) {
      case kStepWhiteCount:
        ctx.cell_reset(kWhiteCell);
        if (me.color == kWhite)
          for (int nbr : ctx.neighbors()) ctx.atomic_add(nbr, kWhiteCell, 1);
        break;
      case kStepSpreadPack: {
        const std::int64_t w = ctx.cell(kWhiteCell) + (me.color == kWhite ? 1 : 0);
        me.pack = w > 0 ? w * packBase + ctx.graph().uids[static_cast<std::size_t>(ctx.id())]
                        : -1;
        ctx.cell_reset(kPackCell);
        if (me.pack >= 0)
          for (int nbr : ctx.neighbors()) ctx.atomic_max(nbr, kPackCell, me.pack);
        break;
      }
      case kStepForwardMax:
        me.hoodMax = std::max(me.pack, ctx.cell(kPackCell));
        ctx.cell_reset(kFwdCell);
        if (me.hoodMax >= 0)
          for (int nbr : ctx.neighbors()) ctx.atomic_max(nbr, kFwdCell, me.hoodMax);
        break;
      case kStepCandidacy:
        me.candidate =
            me.pack >= 0 && me.pack >= std::max(me.hoodMax, ctx.cell(kFwdCell));
        if (me.candidate)
          for (int nbr : ctx.neighbors())
            ctx.send(nbr, Message{kMsgCandidate, ctx.id(), {}});
        break;
      case kStepCandForward:
        me.cands.clear();
        if (me.candidate) me.cands.push_back(ctx.id());
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgCandidate) me.cands.push_back(m.value);
        if (!me.cands.empty())
          for (int nbr : ctx.neighbors()) ctx.send(nbr, Message{kMsgCandSet, 0, me.cands});
        break;
      case kStepJoin: {
        if (!me.candidate) break;
        std::vector<int> within2 = me.cands;
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgCandSet)
            within2.insert(within2.end(), m.set.begin(), m.set.end());
        std::sort(within2.begin(), within2.end());
        within2.erase(std::unique(within2.begin(), within2.end()), within2.end());
        const auto c = static_cast<std::uint64_t>(within2.size());
        if (ctx.rng(0) % c == 0) {
          me.color = kBlack;
          for (int nbr : ctx.neighbors()) ctx.send(nbr, Message{kMsgBlackNote, 0, {}});
        }
        break;
      }
      case kStepRecolor:
        if (me.color == kWhite)
          for (const Message& m : ctx.inbox())
            if (m.type == kMsgBlackNote) {
              me.color = kGrey;
              break;
            }
        break;
      case kStepEchoSend:
        for (int nbr : ctx.neighbors())
          ctx.send(nbr, Message{kMsgEcho, me.color, {}});
        break;
      case kStepEchoIngest:
        if (me.color != kWhite) ctx.vote_halt();
        break;
    }
  }

  bool any_white() const {
    for (const State& s : st)
      if (s.color == kWhite) return true;
    return false;
  }

  std::vector<State> st;
  std::int64_t packBase = 1;
};

}  // namespace

RunResult run_ds(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::DS, g);
  const int n = g.n;

  DsProgram prog(g);
  typename Engine<DsProgram>::Options opt;
  opt.label = "ds";
  opt.hard_step_bound = 90 * (static_cast<std::int64_t>(n) + 10);
  opt.cells = {CellSpec{CellOp::Sum, 0}, CellSpec{CellOp::Max, -1},
               CellSpec{CellOp::Max, -1}};
  Engine<DsProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t rounds = 0;
  while (prog.any_white()) {
    eng.scope([&] {
      for (int s = DsProgram::kStepWhiteCount; s <= DsProgram::kStepEchoIngest; ++s)
        eng.step(s);
    });
    ++rounds;
  }

  DsOutput out;
  out.color.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    out.color[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].color;

  RunResult res;
  res.output = KernelOutput{Kernel::DS, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(rounds);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
