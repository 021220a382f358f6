#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "imsim/engine.hpp"
#include "imsim/kernels.hpp"
#include "imsim/rng.hpp"

namespace imsim::kernels {
namespace {

// Draw-space layout for the agreement kernel (all through node_rng):
//   (seed, v,  -7,        0)    initial vote of node v
//   (seed, -1, phase,     0)    common coin: threshold pick (0 -> low, 1 -> high)
//   (seed, -1, phase,     1)    common coin: fallback vote
//   (seed, w,  -100-phase, nbr) per-receiver lie of faulty node w
constexpr std::int64_t kVoteRound = -7;

int flood_diameter(const GraphInstance& g) {
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(g.n));
  for (int s = 0; s < g.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : g.adjacency[static_cast<std::size_t>(u)])
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          best = std::max(best, dist[static_cast<std::size_t>(w)]);
          q.push(w);
        }
    }
  }
  return best;
}

// Authenticated-free agreement in t+1 phases.  Every phase floods all initial
// claims for D hops (good nodes honestly, faulty nodes lying per receiver
// about their own claim only), then each good node tallies the majority and
// keeps it when the count clears a coin-chosen threshold, otherwise adopts the
// phase's common fallback bit.
struct ByProgram {
  struct Message {
    std::vector<std::pair<int, std::uint8_t>> entries;  // (origin, claimed bit)
  };
  enum : int { kStepSend, kStepIngest, kStepDecide };

  struct State {
    std::uint8_t vote = 0;
    std::vector<std::int8_t> table;                       // -1 = unknown
    std::vector<std::pair<int, std::uint8_t>> newEntries;  // forward next hop
  };

  ByProgram(const GraphInstance& g, const ByOptions& o, std::uint64_t seed)
      : opt(o), seed(seed), st(static_cast<std::size_t>(g.n)) {
    for (int v = 0; v < g.n; ++v) {
      auto& s = st[static_cast<std::size_t>(v)];
      s.table.assign(static_cast<std::size_t>(g.n), -1);
      if (g.is_faulty(v)) continue;
      switch (opt.votes) {
        case ByVotes::AllZero: s.vote = 0; break;
        case ByVotes::AllOne: s.vote = 1; break;
        case ByVotes::Random:
          s.vote = static_cast<std::uint8_t>(node_rng(seed, v, kVoteRound, 0) & 1);
          break;
      }
    }
  }

  std::uint8_t lie(int w, int nbr) const {
    switch (opt.adversary) {
      case ByAdversary::ConstZero: return 0;
      case ByAdversary::ConstOne: return 1;
      case ByAdversary::Random:
        return static_cast<std::uint8_t>(node_rng(seed, w, -100 - phase, static_cast<std::uint64_t>(nbr)) & 1);
    }
    return 0;
  }

  template <typename Ctx>
  void on_step(Ctx& ctx, int tag) {
    const int v = ctx.id();
    State& me = st[static_cast<std::size_t>(v)];
    const bool faulty = ctx.graph().is_faulty(v);
    switch (tag) {
      case kStepSend:
        if (hop == 1) {
          std::fill(me.table.begin(), me.table.end(), std::int8_t{-1});
          me.newEntries.clear();
          me.table[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(me.vote);
          for (int nbr : ctx.neighbors()) {
            const std::uint8_t bit = faulty ? lie(v, nbr) : me.vote;
            ctx.send(nbr, Message{{{v, bit}}});
          }
        } else if (!me.newEntries.empty()) {
          for (int nbr : ctx.neighbors()) ctx.send(nbr, Message{me.newEntries});
        }
        break;
      case kStepIngest: {
        std::vector<std::pair<int, std::uint8_t>> fresh;
        for (const Message& m : ctx.inbox())
          for (const auto& [origin, bit] : m.entries)
            if (me.table[static_cast<std::size_t>(origin)] < 0) {
              me.table[static_cast<std::size_t>(origin)] = static_cast<std::int8_t>(bit);
              fresh.emplace_back(origin, bit);
            }
        me.newEntries = std::move(fresh);
        break;
      }
      case kStepDecide: {
        if (faulty) break;
        std::int64_t ones = 0;
        for (std::int8_t b : me.table)
          if (b == 1) ++ones;
        const auto n = static_cast<std::int64_t>(me.table.size());
        const std::uint8_t maj = 2 * ones > n ? 1 : 0;
        const std::int64_t tally = maj ? ones : n - ones;
        const std::int64_t threshold = (node_rng(seed, -1, phase, 0) & 1) ? high : low;
        if (tally >= threshold)
          me.vote = maj;
        else
          me.vote = static_cast<std::uint8_t>(node_rng(seed, -1, phase, 1) & 1);
        break;
      }
    }
  }

  ByOptions opt;
  std::uint64_t seed = 0;
  std::vector<State> st;
  std::int64_t low = 0;
  std::int64_t high = 0;
  int phase = 0;
  int hop = 0;
};

}  // namespace

RunResult run_by(const GraphInstance& g, const EngineConfig& cfg,
                 const ByOptions& opt) {
  check_applicable(Kernel::BY, g);
  const int n = g.n;
  const int t = static_cast<int>(g.faulty.size());
  const int diam = flood_diameter(g);

  ByProgram prog(g, opt, cfg.seed);
  // Classic threshold placement: any keeper drags every good majority with
  // it (low > n/2 + t), and unanimous good inputs always clear the high bar.
  prog.low = n / 2 + t + 1;
  prog.high = n - t;

  typename Engine<ByProgram>::Options eopt;
  eopt.label = "by";
  eopt.hard_step_bound =
      10 * (static_cast<std::int64_t>(t) + 1) * (2 * static_cast<std::int64_t>(diam) + 1) + 16;
  Engine<ByProgram> eng(prog, g, cfg, std::move(eopt));

  for (int p = 0; p <= t; ++p) {
    prog.phase = p;
    for (int h = 1; h <= diam; ++h) {
      prog.hop = h;
      eng.scope([&] {
        eng.step(ByProgram::kStepSend);
        eng.step(ByProgram::kStepIngest);
      });
    }
    eng.scope([&] { eng.step(ByProgram::kStepDecide); });
  }

  ByOutput out;
  out.initialVote.resize(static_cast<std::size_t>(n));
  out.decision.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const bool faulty = g.is_faulty(v);
    std::uint8_t initial = 0;
    if (!faulty) {
      switch (opt.votes) {
        case ByVotes::AllZero: initial = 0; break;
        case ByVotes::AllOne: initial = 1; break;
        case ByVotes::Random:
          initial = static_cast<std::uint8_t>(node_rng(cfg.seed, v, kVoteRound, 0) & 1);
          break;
      }
    }
    out.initialVote[static_cast<std::size_t>(v)] = initial;
    out.decision[static_cast<std::size_t>(v)] =
        faulty ? 0 : prog.st[static_cast<std::size_t>(v)].vote;
  }

  RunResult res;
  res.output = KernelOutput{Kernel::BY, eng.checksum(), std::move(out)};
  res.metrics = eng.metrics(diam);
  res.trace = eng.trace();
  return res;
}

}  // namespace imsim::kernels
