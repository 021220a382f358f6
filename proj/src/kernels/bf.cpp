#include <cstdint>
#include <limits>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"

namespace imsim::kernels {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Hop-count relaxation from the root.  Each round is a transmit step (nodes
// whose distance just improved push dist+1 into their neighbours' min cells)
// followed by a relax step (each node folds its cell into its distance).  In
// round r exactly the nodes at distance r settle, so the loop runs for
// eccentricity(root) rounds before every distance is finite.
struct BfProgram {
  struct Message {};
  enum : int { kTransmit, kRelax };
  enum : int { kDistCell };

  struct State {
    std::int64_t dist = kInf;
    bool changed = false;
  };

  explicit BfProgram(const GraphInstance& g)
      : st(static_cast<std::size_t>(g.n)) {
    st[static_cast<std::size_t>(*g.root)] = {0, true};
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    State& me = st[static_cast<std::size_t>(ctx.id())];
    if (tag == kTransmit) {
      if (me.changed)
        for (int nbr : ctx.neighbors()) ctx.atomic_min(nbr, kDistCell, me.dist + 1);
    } else {
      const std::int64_t best = ctx.cell(kDistCell);
      if (best < me.dist) {
        me.dist = best;
        me.changed = true;
      } else {
        me.changed = false;
      }
    }
  }

  bool all_finite() const {
    for (const State& s : st)
      if (s.dist >= kInf) return false;
    return true;
  }

  std::vector<State> st;
};

}  // namespace

RunResult run_bf(const GraphInstance& g, const EngineConfig& cfg) {
  check_applicable(Kernel::BF, g);
  const int n = g.n;

  BfProgram prog(g);
  typename Engine<BfProgram>::Options opt;
  opt.label = "bf";
  opt.hard_step_bound = 10 * (2 * static_cast<std::int64_t>(n) + 2) + 16;
  opt.cells = {CellSpec{CellOp::Min, kInf}};
  Engine<BfProgram> eng(prog, g, cfg, std::move(opt));

  std::int64_t rounds = 0;
  while (!prog.all_finite()) {
    eng.scope([&] {
      eng.step(BfProgram::kTransmit);
      eng.step(BfProgram::kRelax);
    });
    ++rounds;
  }

  BfOutput out;
  out.dist.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    out.dist[static_cast<std::size_t>(v)] = prog.st[static_cast<std::size_t>(v)].dist;

  RunResult res;
  res.output = KernelOutput{Kernel::BF, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(rounds);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
