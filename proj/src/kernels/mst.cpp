#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Fragment merging over distinct weights.  Each phase the nodes swap fragment
// ids with their neighbours, agree on the fragment-wide lightest outgoing
// edge by flooding a min over the marked (tree) edges, mark that edge from
// its owning endpoint, and relabel the merged fragment to its smallest id.
// A phase that finds no outgoing edge anywhere ends the run.
struct MstProgram {
  struct Message {
    int type = 0;
    int from = 0;
    std::int64_t value = 0;
  };
  enum : int { kMsgFrag, kMsgMwoe, kMsgMark, kMsgRelabel };
  enum : int {
    kStepFragSend,
    kStepFragIngest,
    kStepMwoeSend,
    kStepMwoeIngest,
    kStepMark,
    kStepMarkIngest,
    kStepRelabelSend,
    kStepRelabelIngest,
  };

  struct State {
    std::int64_t frag = 0;
    std::vector<int> marked;        // tree neighbours, sorted
    std::vector<std::int64_t> nbrFrag;  // parallel to adjacency
    std::int64_t cand = kInf;       // my lightest outgoing edge (packed)
    std::int64_t best = kInf;       // fragment-wide minimum so far
    bool changed = false;
    bool rchanged = false;
  };

  explicit MstProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)), base(g.n) {
    for (int v = 0; v < g.n; ++v) {
      st[static_cast<std::size_t>(v)].frag = g.uids[static_cast<std::size_t>(v)];
      st[static_cast<std::size_t>(v)].nbrFrag.assign(
          g.adjacency[static_cast<std::size_t>(v)].size(), -1);
    }
  }

  std::int64_t pack(const GraphInstance& g, int a, int b) const {
    const int u = std::min(a, b);
    const int v = std::max(a, b);
    return (g.edge_weight(u, v) * base + u) * base + v;
  }

  static void add_sorted(std::vector<int>& v, int x) {
    const auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    const int v = ctx.id();
    State& me = st[static_cast<std::size_t>(v)];
    const auto& adj = ctx.graph().adjacency[static_cast<std::size_t>(v)];
    switch (tag) {
      case kStepFragSend:
        me.cand = kInf;
        me.best = kInf;
        for (int nbr : adj) ctx.send(nbr, Message{kMsgFrag, v, me.frag});
        break;
      case kStepFragIngest:
        for (const Message& m : ctx.inbox()) {
          const auto at = std::lower_bound(adj.begin(), adj.end(), m.from) - adj.begin();
          me.nbrFrag[static_cast<std::size_t>(at)] = m.value;
        }
        for (std::size_t i = 0; i < adj.size(); ++i)
          if (me.nbrFrag[i] != me.frag)
            me.cand = std::min(me.cand, pack(ctx.graph(), v, adj[i]));
        me.best = me.cand;
        me.changed = true;
        break;
      case kStepMwoeSend:
        if (me.changed)
          for (int nbr : me.marked) ctx.send(nbr, Message{kMsgMwoe, v, me.best});
        break;
      case kStepMwoeIngest: {
        std::int64_t incoming = kInf;
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgMwoe) incoming = std::min(incoming, m.value);
        me.changed = incoming < me.best;
        me.best = std::min(me.best, incoming);
        break;
      }
      case kStepMark:
        if (me.best < kInf && me.best == me.cand) {
          const int other = static_cast<int>(me.best % base);
          const int u = static_cast<int>((me.best / base) % base);
          const int peer = other == v ? u : other;
          add_sorted(me.marked, peer);
          ctx.send(peer, Message{kMsgMark, v, 0});
        }
        break;
      case kStepMarkIngest:
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgMark) add_sorted(me.marked, m.from);
        me.rchanged = true;
        break;
      case kStepRelabelSend:
        if (me.rchanged)
          for (int nbr : me.marked) ctx.send(nbr, Message{kMsgRelabel, v, me.frag});
        break;
      case kStepRelabelIngest: {
        std::int64_t incoming = kInf;
        for (const Message& m : ctx.inbox())
          if (m.type == kMsgRelabel) incoming = std::min(incoming, m.value);
        me.rchanged = incoming < me.frag;
        me.frag = std::min(me.frag, incoming);
        break;
      }
    }
  }

  bool all_isolated() const {
    for (const State& s : st)
      if (s.cand < kInf) return false;
    return true;
  }
  bool any_changed() const {
    for (const State& s : st)
      if (s.changed) return true;
    return false;
  }
  bool any_rchanged() const {
    for (const State& s : st)
      if (s.rchanged) return true;
    return false;
  }

  std::vector<State> st;
  std::int64_t base = 1;
};

}  // namespace

RunResult run_mst(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::MST, g);
  const int n = g.n;

  MstProgram prog(g);
  std::int64_t lg = 0;
  while ((std::int64_t{1} << lg) < n) ++lg;
  typename Engine<MstProgram>::Options opt;
  opt.label = "mst";
  opt.hard_step_bound = 10 * (lg + 2) * (4 * static_cast<std::int64_t>(n) + 12);
  Engine<MstProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t phases = 0;
  for (;;) {
    eng.scope([&] {
      eng.step(MstProgram::kStepFragSend);
      eng.step(MstProgram::kStepFragIngest);
    });
    if (prog.all_isolated()) break;
    do {
      eng.scope([&] {
        eng.step(MstProgram::kStepMwoeSend);
        eng.step(MstProgram::kStepMwoeIngest);
      });
    } while (prog.any_changed());
    eng.scope([&] {
      eng.step(MstProgram::kStepMark);
      eng.step(MstProgram::kStepMarkIngest);
    });
    do {
      eng.scope([&] {
        eng.step(MstProgram::kStepRelabelSend);
        eng.step(MstProgram::kStepRelabelIngest);
      });
    } while (prog.any_rchanged());
    ++phases;
  }

  MstOutput out;
  for (int v = 0; v < n; ++v)
    for (int u : prog.st[static_cast<std::size_t>(v)].marked)
      if (v < u) out.marked.emplace_back(v, u);
  std::sort(out.marked.begin(), out.marked.end());

  RunResult res;
  res.output = KernelOutput{Kernel::MST, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(phases);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
