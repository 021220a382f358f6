#include <algorithm>
#include <cstdint>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

// Layered BFS-tree construction.  Phase p grows the tree by one level: the
// depth p-1 frontier explores, joiners pick a parent (ties toward the smaller
// uid) and register in its child set, then the acknowledgement echoes uphill
// one level per step until the root ingests it.  The first phase that joins
// nobody ends the run, so a tree of depth D takes D+1 phases.
struct DstProgram {
  struct Message {
    int type = 0;  // kExplore or kEcho
    int from = 0;
  };
  enum : int { kExplore, kEcho };
  enum : int { kStepExplore, kStepJoin, kStepEchoUp };
  enum : int { kChildSet };

  struct State {
    bool inTree = false;
    int depth = -1;
    int parent = -1;
  };

  explicit DstProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)) {
    st[static_cast<std::size_t>(*g.root)] = {true, 0, -1};
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    const auto& uids = ctx.graph().uids;
    switch (tag) {
      case kStepExplore:
        if (me.inTree && me.depth == phase - 1)
          for (int nbr : ctx.neighbors()) ctx.send(nbr, Message{kExplore, ctx.id()});
        break;
      case kStepJoin: {
        if (me.inTree) break;
        int best = -1;
        for (const Message& m : ctx.inbox()) {
          if (m.type != kExplore) continue;
          if (best == -1 || uids[static_cast<std::size_t>(m.from)] <
                                uids[static_cast<std::size_t>(best)])
            best = m.from;
        }
        if (best == -1) break;
        me.inTree = true;
        me.depth = phase;
        me.parent = best;
        ctx.atomic_insert(best, kChildSet, ctx.id());
        ctx.send(best, Message{kEcho, ctx.id()});
        break;
      }
      case kStepEchoUp:
        // Acknowledgements ride one level per step; the root only absorbs.
        if (me.parent == -1) break;
        for (const Message& m : ctx.inbox())
          if (m.type == kEcho) {
            ctx.send(me.parent, Message{kEcho, ctx.id()});
            break;
          }
        break;
    }
  }

  bool joined_at(int p) const {
    for (const State& s : st)
      if (s.depth == p) return true;
    return false;
  }

  std::vector<State> st;
  int phase = 0;
};

}  // namespace

RunResult run_dst(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::DST, g);
  const int n = g.n;

  DstProgram prog(g);
  typename Engine<DstProgram>::Options opt;
  opt.label = "dst";
  opt.hard_step_bound =
      10 * (static_cast<std::int64_t>(n) + 2) * (static_cast<std::int64_t>(n) + 2);
  opt.cells = {CellSpec{CellOp::Union, 0}};
  Engine<DstProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t phases = 0;
  for (int p = 1;; ++p) {
    prog.phase = p;
    eng.scope([&] {
      eng.step(DstProgram::kStepExplore);
      eng.step(DstProgram::kStepJoin);
      for (int e = 0; e < p && prog.joined_at(p); ++e) eng.step(DstProgram::kStepEchoUp);
    });
    ++phases;
    if (!prog.joined_at(p)) break;
  }

  DstOutput out;
  out.parent.resize(static_cast<std::size_t>(n));
  out.children.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    out.parent[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].parent;
    const auto kids = eng.cell_set_values(v, DstProgram::kChildSet);
    out.children[static_cast<std::size_t>(v)].assign(kids.begin(), kids.end());
  }

  RunResult res;
  res.output = KernelOutput{Kernel::DST, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(phases);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
