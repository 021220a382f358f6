#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "imsim/graph.hpp"
#include "imsim/metrics.hpp"
#include "imsim/rng.hpp"

// Round-based superstep engine.
//
// A kernel is an orchestrator (host-side control flow) plus a per-node
// handler. The orchestrator opens clocked scopes and issues supersteps; the
// engine runs the handler once per node per superstep on up to `workers`
// lanes, then merges all buffered effects deterministically:
//
//   * messages sent in superstep r become visible in r+1, delivered per
//     receiver in (sender asc, per-sender send order) order;
//   * shared-cell updates (the mutex events) fold through their declared
//     commutative-associative reducer at the same boundary;
//   * a node's halt vote counts only for the superstep it was cast in.
//
// Accounting: under FA every superstep is its own finish (1 finish, n
// asyncs). Under FAC a scope contributes 1 finish and n asyncs, and every
// superstep boundary inside the scope contributes 1 barrier; `advance()`
// records an extra trailing barrier. Outputs never depend on the strategy,
// the worker count, or the cluster map.

namespace imsim {

enum class Strategy { FA, FAC };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct EngineConfig {
  Strategy strategy = Strategy::FA;
  int clusters = 1;
  int workers = 1;
  std::int64_t loadValue = 0;
  std::uint64_t seed = kDefaultSeed;
};

// The synthetic per-activation load: `loadValue` unit increments that feed
// the returned value, immune to constant folding.
std::int64_t workload(std::int64_t param, std::int64_t loadValue);

// Reducers available for shared cells.
enum class CellOp { Min, Max, Sum, Union };

struct CellSpec {
  CellOp op = CellOp::Min;
  std::int64_t init = 0;  // reset value (ignored by Union)
};

namespace detail {

struct CellUpdate {
  int to;
  int slot;
  std::int64_t value;
};

constexpr std::int64_t reduce(CellOp op, std::int64_t acc, std::int64_t v) {
  switch (op) {
    case CellOp::Min: return std::min(acc, v);
    case CellOp::Max: return std::max(acc, v);
    case CellOp::Sum: return acc + v;
    case CellOp::Union: return acc;  // handled separately
  }
  return acc;
}

}  // namespace detail

template <typename Program>
class Engine {
 public:
  using Message = typename Program::Message;
  using Mailbox = std::vector<Message>;  // FIFO, drained every superstep

  struct Options {
    std::string label = "kernel";
    std::int64_t mailbox_capacity = -1;  // -1 = unbounded
    std::int64_t hard_step_bound = 1 << 20;
    std::vector<CellSpec> cells;
  };

  Engine(Program& prog, const GraphInstance& g, const EngineConfig& cfg,
         Options opt)
      : prog_(prog), g_(g), cfg_(cfg), opt_(std::move(opt)) {
    if (g_.n < 1) throw SpecError("engine: empty graph");
    if (cfg_.workers < 1) throw SpecError("engine: workers must be >= 1");
    if (cfg_.loadValue < 0) throw SpecError("engine: loadValue must be >= 0");
    if (cfg_.clusters < 1 || cfg_.clusters > g_.n)
      throw SpecError("engine: clusters must lie in [1, n]");
    const auto n = static_cast<std::size_t>(g_.n);
    cluster_.resize(n);
    for (int v = 0; v < g_.n; ++v)
      cluster_[static_cast<std::size_t>(v)] = map_cluster(v, g_.n, cfg_.clusters);
    inbox_.assign(n, {});
    outbox_.assign(n, {});
    cellups_.assign(n, {});
    halt_.assign(n, 0);
    resets_.assign(n, 0);
    nval_.assign(n, 0);
    values_.assign(opt_.cells.size(), std::vector<std::int64_t>(n));
    sets_.assign(opt_.cells.size(), std::vector<std::vector<std::int64_t>>(n));
    for (std::size_t s = 0; s < opt_.cells.size(); ++s)
      std::fill(values_[s].begin(), values_[s].end(), opt_.cells[s].init);
  }

  // ---- per-node view handed to the handler -------------------------------

  class NodeContext {
   public:
    NodeContext(Engine& e, int id) : e_(e), id_(id) {}

    int id() const { return id_; }
    int n() const { return e_.g_.n; }
    const GraphInstance& graph() const { return e_.g_; }
    std::span<const int> neighbors() const {
      return e_.g_.adjacency[static_cast<std::size_t>(id_)];
    }
    std::span<const Message> inbox() const {
      return e_.inbox_[static_cast<std::size_t>(id_)];
    }

    void send(int to, Message m) {
      e_.check_peer(to, id_);
      e_.outbox_[static_cast<std::size_t>(id_)].emplace_back(to, std::move(m));
    }

    std::int64_t cell(int slot) const {
      return e_.values_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(id_)];
    }
    std::span<const std::int64_t> cell_set(int slot) const {
      return e_.sets_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(id_)];
    }
    // Reset own cell to its init value at the next boundary, before folds.
    void cell_reset(int slot) {
      e_.resets_[static_cast<std::size_t>(id_)] |= std::uint32_t{1} << slot;
    }
    void atomic_min(int to, int slot, std::int64_t v) { update(to, slot, v, CellOp::Min); }
    void atomic_max(int to, int slot, std::int64_t v) { update(to, slot, v, CellOp::Max); }
    void atomic_add(int to, int slot, std::int64_t v) { update(to, slot, v, CellOp::Sum); }
    void atomic_insert(int to, int slot, std::int64_t v) { update(to, slot, v, CellOp::Union); }

    std::uint64_t rng(std::uint64_t draw) const {
      return node_rng(cfg().seed, id_, e_.steps_, draw);
    }
    std::int64_t round() const { return e_.steps_; }
    const EngineConfig& cfg() const { return e_.cfg_; }
    void vote_halt() { e_.halt_[static_cast<std::size_t>(id_)] = 1; }

   private:
    void update(int to, int slot, std::int64_t v, CellOp op) {
      if (to != id_) e_.check_peer(to, id_);
      if (slot < 0 || slot >= static_cast<int>(e_.opt_.cells.size()) ||
          e_.opt_.cells[static_cast<std::size_t>(slot)].op != op)
        throw RuntimeAbort(e_.opt_.label + ": cell/op mismatch on slot " +
                           std::to_string(slot));
      e_.cellups_[static_cast<std::size_t>(id_)].push_back({to, slot, v});
    }

    Engine& e_;
    int id_;
  };

  // ---- orchestration ------------------------------------------------------

  template <typename Fn>
  void scope(Fn&& body) {
    if (scope_open_) throw RuntimeAbort(opt_.label + ": nested scope");
    scope_open_ = true;
    scope_stepped_ = false;
    body();
    scope_open_ = false;
  }

  // Explicit trailing clock advance inside the current scope (FAC barrier).
  void advance() {
    if (!scope_open_ || !scope_stepped_)
      throw RuntimeAbort(opt_.label + ": advance outside a stepped scope");
    if (cfg_.strategy == Strategy::FAC) {
      trace_.back().barriers += 1;
      metrics_.barriers += 1;
    }
  }

  void step(int tag) {
    if (!scope_open_) throw RuntimeAbort(opt_.label + ": step outside scope");
    if (steps_ >= opt_.hard_step_bound)
      throw RuntimeAbort(opt_.label + ": superstep bound " +
                         std::to_string(opt_.hard_step_bound) + " exceeded");

    TraceRecord rec;
    rec.round = steps_;
    if (cfg_.strategy == Strategy::FA) {
      rec.finishes = 1;
      rec.asyncs = g_.n;
    } else if (!scope_stepped_) {
      rec.finishes = 1;  // the clocked finish of this scope
      rec.asyncs = g_.n;
    } else {
      // Boundary inside the scope: the advance happens at the end of the
      // previous superstep, so the barrier is charged there.
      trace_.back().barriers += 1;
      metrics_.barriers += 1;
    }
    scope_stepped_ = true;
    metrics_.finishes += rec.finishes;
    metrics_.asyncs += rec.asyncs;
    trace_.push_back(rec);

    run_handlers(tag);
    merge_boundary();
    ++steps_;
    metrics_.supersteps = steps_;
  }

  bool all_halted() const { return all_halted_; }
  std::int64_t supersteps() const { return steps_; }

  // Orchestrator-side cell reads (outside supersteps, e.g. output assembly).
  std::int64_t cell_value(int node, int slot) const {
    return values_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(node)];
  }
  std::span<const std::int64_t> cell_set_values(int node, int slot) const {
    return sets_[static_cast<std::size_t>(slot)][static_cast<std::size_t>(node)];
  }

  std::int64_t checksum() const {
    std::int64_t sum = 0;
    for (std::int64_t v : nval_) sum += v;
    return sum;
  }

  Metrics metrics(std::int64_t measured_rounds) const {
    Metrics m = metrics_;
    m.measuredRounds = measured_rounds;
    return m;
  }
  const Trace& trace() const { return trace_; }

 private:
  friend class NodeContext;

  void check_peer(int to, int from) const {
    if (to < 0 || to >= g_.n || to == from)
      throw RuntimeAbort(opt_.label + ": bad target node " + std::to_string(to) +
                         " from " + std::to_string(from));
  }

  void run_handlers(int tag) {
    const int n = g_.n;
    auto body = [&](int begin, int end) {
      for (int v = begin; v < end; ++v) {
        nval_[static_cast<std::size_t>(v)] =
            workload(nval_[static_cast<std::size_t>(v)] + v, cfg_.loadValue);
        NodeContext ctx(*this, v);
        prog_.on_step(ctx, tag);
      }
    };
    const int lanes = std::min(cfg_.workers, n);
    if (lanes <= 1) {
      body(0, n);
      return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(lanes));
      const int chunk = (n + lanes - 1) / lanes;
      for (int lane = 0; lane < lanes; ++lane) {
        const int begin = lane * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
          try {
            body(begin, end);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        });
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  }

  void merge_boundary() {
    const auto n = static_cast<std::size_t>(g_.n);
    TraceRecord& rec = trace_.back();

    // Messages: fold sender-ascending so each receiver sees (sender asc,
    // send order) regardless of how the lanes interleaved.
    std::vector<Mailbox> next(n);
    for (std::size_t from = 0; from < n; ++from) {
      for (auto& [to, msg] : outbox_[from]) {
        count_message(static_cast<int>(from), to, rec);
        next[static_cast<std::size_t>(to)].push_back(std::move(msg));
      }
      outbox_[from].clear();
    }
    if (opt_.mailbox_capacity >= 0)
      for (std::size_t v = 0; v < n; ++v)
        if (static_cast<std::int64_t>(next[v].size()) > opt_.mailbox_capacity)
          throw RuntimeAbort(
              opt_.label + ": mailbox overflow at node " + std::to_string(v) +
              " in superstep " + std::to_string(steps_) + " (capacity " +
              std::to_string(opt_.mailbox_capacity) + ", got " +
              std::to_string(next[v].size()) + ")");
    inbox_ = std::move(next);

    // Cell resets apply before this superstep's updates fold in.
    for (std::size_t v = 0; v < n; ++v) {
      if (!resets_[v]) continue;
      for (std::size_t s = 0; s < opt_.cells.size(); ++s)
        if (resets_[v] & (std::uint32_t{1} << s)) {
          values_[s][v] = opt_.cells[s].init;
          sets_[s][v].clear();
        }
      resets_[v] = 0;
    }

    // Mutex events: commutative-associative folds, counted one op each; a
    // cross-node update is also a communication.
    std::vector<std::vector<std::int64_t>*> touched_sets;
    for (std::size_t from = 0; from < n; ++from) {
      for (const detail::CellUpdate& up : cellups_[from]) {
        metrics_.mutexOps += 1;
        rec.mutexOps += 1;
        if (up.to != static_cast<int>(from))
          count_message(static_cast<int>(from), up.to, rec);
        const auto slot = static_cast<std::size_t>(up.slot);
        const auto to = static_cast<std::size_t>(up.to);
        if (opt_.cells[slot].op == CellOp::Union) {
          sets_[slot][to].push_back(up.value);
          touched_sets.push_back(&sets_[slot][to]);
        } else {
          values_[slot][to] =
              detail::reduce(opt_.cells[slot].op, values_[slot][to], up.value);
        }
      }
      cellups_[from].clear();
    }
    for (auto* set : touched_sets) {
      std::sort(set->begin(), set->end());
      set->erase(std::unique(set->begin(), set->end()), set->end());
    }

    bool all = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (!halt_[v]) all = false;
      halt_[v] = 0;
    }
    all_halted_ = all;

    metrics_.messagesTotal += rec.messagesTotal;
    metrics_.messagesRemote += rec.messagesRemote;
  }

  void count_message(int from, int to, TraceRecord& rec) {
    rec.messagesTotal += 1;
    if (cluster_[static_cast<std::size_t>(from)] != cluster_[static_cast<std::size_t>(to)])
      rec.messagesRemote += 1;
  }

  Program& prog_;
  const GraphInstance& g_;
  EngineConfig cfg_;
  Options opt_;

  std::vector<int> cluster_;
  std::vector<Mailbox> inbox_;
  std::vector<std::vector<std::pair<int, Message>>> outbox_;
  std::vector<std::vector<detail::CellUpdate>> cellups_;
  std::vector<char> halt_;
  std::vector<std::uint32_t> resets_;
  std::vector<std::int64_t> nval_;
  std::vector<std::vector<std::int64_t>> values_;              // [slot][node]
  std::vector<std::vector<std::vector<std::int64_t>>> sets_;   // [slot][node]

  Metrics metrics_;
  Trace trace_;
  std::int64_t steps_ = 0;
  bool scope_open_ = false;
  bool scope_stepped_ = false;
  bool all_halted_ = false;
};

}  // namespace imsim
