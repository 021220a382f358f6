#include <cstdint>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

// Doubling-radius election on a bidirectional ring.  In phase p the surviving
// candidates probe 2^p hops both ways; probes are swallowed by any larger uid,
// turn around at the radius, and an echo from both sides keeps the candidate
// alive.  A probe that returns to its origin has circled the ring, and the
// winner closes with an announcement pass around the ring.
struct HsProgram {
  struct Message {
    int type = 0;
    std::int64_t uid = 0;
    int dir = 0;  // 0 = outward via succ, 1 = outward via pred
    std::int64_t rem = 0;
  };
  enum : int { kMsgProbe, kMsgEcho, kMsgAnnounce };
  enum : int { kStepLaunch, kStepPump, kStepAnnounceLaunch, kStepAnnouncePump };

  struct State {
    bool candidate = true;
    bool echoGot[2] = {false, false};
    bool isLeader = false;
    std::int64_t leaderId = -1;
  };

  explicit HsProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)),
        succ(static_cast<std::size_t>(g.n)),
        pred(static_cast<std::size_t>(g.n)) {
    // Orient the ring once by walking it from node 0.
    int prev = 0;
    int cur = g.adjacency[0][0];
    succ[0] = cur;
    while (cur != 0) {
      const auto& nbrs = g.adjacency[static_cast<std::size_t>(cur)];
      const int next = nbrs.size() == 1 ? nbrs[0] : (nbrs[0] == prev ? nbrs[1] : nbrs[0]);
      succ[static_cast<std::size_t>(cur)] = next;
      prev = cur;
      cur = next;
    }
    for (int v = 0; v < g.n; ++v) pred[static_cast<std::size_t>(succ[static_cast<std::size_t>(v)])] = v;
  }

  int out_link(int v, int dir) const {
    return dir == 0 ? succ[static_cast<std::size_t>(v)] : pred[static_cast<std::size_t>(v)];
  }
  int back_link(int v, int dir) const {
    return dir == 0 ? pred[static_cast<std::size_t>(v)] : succ[static_cast<std::size_t>(v)];
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    const int v = ctx.id();
    State& me = st[static_cast<std::size_t>(v)];
    const std::int64_t uid = ctx.graph().uids[static_cast<std::size_t>(v)];
    switch (tag) {
      case kStepLaunch: {
        if (!me.candidate) break;
        if (phase > 0 && !(me.echoGot[0] && me.echoGot[1])) {
          me.candidate = false;  // swallowed somewhere last phase
          break;
        }
        me.echoGot[0] = me.echoGot[1] = false;
        const std::int64_t rem = (std::int64_t{1} << phase) - 1;
        ctx.send(out_link(v, 0), Message{kMsgProbe, uid, 0, rem});
        ctx.send(out_link(v, 1), Message{kMsgProbe, uid, 1, rem});
        break;
      }
      case kStepPump:
        for (const Message& m : ctx.inbox()) {
          if (m.type == kMsgProbe) {
            if (m.uid == uid) {
              me.isLeader = true;  // full circle
              me.leaderId = uid;
            } else if (m.uid > uid) {
              if (m.rem > 0)
                ctx.send(out_link(v, m.dir), Message{kMsgProbe, m.uid, m.dir, m.rem - 1});
              else
                ctx.send(back_link(v, m.dir), Message{kMsgEcho, m.uid, m.dir, 0});
            }
          } else if (m.type == kMsgEcho) {
            if (m.uid == uid)
              me.echoGot[m.dir] = true;
            else
              ctx.send(back_link(v, m.dir), Message{kMsgEcho, m.uid, m.dir, 0});
          }
        }
        break;
      case kStepAnnounceLaunch:
        if (me.isLeader && ctx.n() > 1)
          ctx.send(succ[static_cast<std::size_t>(v)],
                   Message{kMsgAnnounce, uid, 0, ctx.n() - 2});
        break;
      case kStepAnnouncePump:
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgAnnounce) {
            me.leaderId = m.uid;
            if (m.rem > 0)
              ctx.send(succ[static_cast<std::size_t>(v)],
                       Message{kMsgAnnounce, m.uid, 0, m.rem - 1});
          }
        break;
    }
  }

  bool have_leader() const {
    for (const State& s : st)
      if (s.isLeader) return true;
    return false;
  }

  std::vector<State> st;
  std::vector<int> succ, pred;
  int phase = 0;
};

}  // namespace

RunResult run_hs(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::HS, g);
  const int n = g.n;

  HsProgram prog(g);
  std::int64_t lg = 0;
  while ((std::int64_t{1} << lg) < n) ++lg;
  typename Engine<HsProgram>::Options opt;
  opt.label = "hs";
  // Phases 0..ceil(log2 n), each 1 + 2*2^p supersteps, plus the announce pass.
  opt.hard_step_bound = 10 * (4 * (std::int64_t{1} << (lg + 1)) + lg + n + 2);
  Engine<HsProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t phases = 0;
  for (int p = 0; !prog.have_leader(); ++p) {
    prog.phase = p;
    eng.scope([&] {
      eng.step(HsProgram::kStepLaunch);
      const std::int64_t pumps = 2 * (std::int64_t{1} << p);
      for (std::int64_t s = 0; s < pumps; ++s) eng.step(HsProgram::kStepPump);
    });
    ++phases;
  }
  eng.scope([&] {
    eng.step(HsProgram::kStepAnnounceLaunch);
    for (int s = 0; s < n - 1; ++s) eng.step(HsProgram::kStepAnnouncePump);
  });

  LeaderOutput out;
  out.leaderId.resize(static_cast<std::size_t>(n));
  out.isLeader.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    out.leaderId[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].leaderId;
    out.isLeader[static_cast<std::size_t>(v)] =
        prog.st[static_cast<std::size_t>(v)].isLeader ? 1 : 0;
  }

  RunResult res;
  res.output = KernelOutput{Kernel::HS, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(phases);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
