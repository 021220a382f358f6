#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Committee formation in k phases of k rounds (five supersteps per round).
// Leaders and unattached nodes advertise their uid; adverts flood with a
// min-key fold and remember the reverse hop.  Unattached nodes route a join
// request toward the smallest key they know, one hop per round; the owner
// keeps the smallest requester uid and, once it is a leader, grants one
// membership per phase through its next advert.  Whoever is still unattached
// after k phases forms a singleton committee.
struct KcProgram {
  struct Message {
    int type = 0;
    int from = 0;
    std::int64_t key = 0;
    std::int64_t grant = -1;
    std::int64_t req = -1;
  };
  enum : int { kMsgAdvert, kMsgRequest };
  enum : int {
    kStepAdvertSend,
    kStepAdvertIngest,
    kStepRequestSend,
    kStepRequestIngest,
    kStepResolve,
  };

  struct State {
    bool committed = false;
    bool isLeader = false;
    std::int64_t committee = -1;
    std::int64_t grantNext = -1;   // leader: uid granted via this phase's advert
    // Per-phase flood view.
    std::int64_t bestKey = kInf;
    std::int64_t bestGrant = -1;
    int toward = -1;
    bool bestChanged = false;
    std::int64_t pendingMin = kInf;  // requests that reached their sink here
    std::int64_t relayMin = kInf;    // requests to pass along next round
  };

  explicit KcProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)) {}

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    const std::int64_t uid = ctx.graph().uids[static_cast<std::size_t>(ctx.id())];
    const bool adverts = !me.committed || me.isLeader;
    switch (tag) {
      case kStepAdvertSend:
        if (rj == 1) {
          me.bestKey = adverts ? uid : kInf;
          me.bestGrant = adverts ? me.grantNext : -1;
          me.toward = -1;
          me.bestChanged = false;
          me.pendingMin = kInf;
          me.relayMin = kInf;
          if (adverts)
            for (int nbr : ctx.neighbors())
              ctx.send(nbr, Message{kMsgAdvert, ctx.id(), uid, me.grantNext, -1});
        } else if (me.bestChanged) {
          for (int nbr : ctx.neighbors())
            ctx.send(nbr, Message{kMsgAdvert, ctx.id(), me.bestKey, me.bestGrant, -1});
        }
        break;
      case kStepAdvertIngest:
        me.bestChanged = false;
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgAdvert && m.key < me.bestKey) {
            me.bestKey = m.key;
            me.bestGrant = m.grant;
            me.toward = m.from;
            me.bestChanged = true;
          }
        break;
      case kStepRequestSend:
        if (me.toward >= 0) {
          if (!me.committed && me.bestKey < uid)
            ctx.send(me.toward, Message{kMsgRequest, ctx.id(), 0, -1, uid});
          if (me.relayMin < kInf)
            ctx.send(me.toward, Message{kMsgRequest, ctx.id(), 0, -1, me.relayMin});
        }
        me.relayMin = kInf;
        break;
      case kStepRequestIngest:
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgRequest) {
            if (me.bestKey == uid)
              me.pendingMin = std::min(me.pendingMin, m.req);
            else
              me.relayMin = std::min(me.relayMin, m.req);
          }
        break;
      case kStepResolve:
        if (rj != phaseRounds) break;
        if (!me.committed) {
          if (me.bestKey == uid) {
            me.committed = true;
            me.isLeader = true;
            me.committee = uid;
          } else if (me.bestGrant == uid) {
            me.committed = true;
            me.committee = me.bestKey;
          }
        }
        me.grantNext = me.isLeader && me.pendingMin < kInf ? me.pendingMin : -1;
        break;
    }
  }

  std::vector<State> st;
  int rj = 0;
  int phaseRounds = 0;
};

}  // namespace

RunResult run_kc(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::KC, g);
  const int n = g.n;
  const int k = *g.k;

  KcProgram prog(g);
  prog.phaseRounds = k;
  typename Engine<KcProgram>::Options opt;
  opt.label = "kc";
  opt.hard_step_bound = 10 * 5 * static_cast<std::int64_t>(k) * k + 16;
  Engine<KcProgram> eng(prog, g, cfg, std::move(opt));

  for (int phase = 1; phase <= k; ++phase) {
    for (int j = 1; j <= k; ++j) {
      prog.rj = j;
      eng.scope([&] {
        eng.step(KcProgram::kStepAdvertSend);
        eng.step(KcProgram::kStepAdvertIngest);
        eng.step(KcProgram::kStepRequestSend);
        eng.step(KcProgram::kStepRequestIngest);
        eng.step(KcProgram::kStepResolve);
      });
    }
  }

  KcOutput out;
  out.committee.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const KcProgram::State& s = prog.st[static_cast<std::size_t>(v)];
    // Leftover rule: whoever stayed unattached forms a singleton committee.
    out.committee[static_cast<std::size_t>(v)] =
        s.committed ? s.committee : g.uids[static_cast<std::size_t>(v)];
  }

  RunResult res;
  res.output = KernelOutput{Kernel::KC, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(k);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
