#pragma once

#include <cstdint>
#include <vector>

#include "imsim/graph.hpp"

namespace imsim {

// Task- and communication-accounting totals for one run.
struct Metrics {
  std::int64_t finishes = 0;
  std::int64_t asyncs = 0;
  std::int64_t barriers = 0;
  std::int64_t mutexOps = 0;
  std::int64_t messagesTotal = 0;
  std::int64_t messagesRemote = 0;
  std::int64_t supersteps = 0;
  std::int64_t measuredRounds = 0;  // kernel-specific: D, R, L, phases, ...

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// Per-superstep deltas; column sums over a trace equal the run totals.
struct TraceRecord {
  std::int64_t round = 0;
  std::int64_t messagesTotal = 0;
  std::int64_t messagesRemote = 0;
  std::int64_t finishes = 0;
  std::int64_t asyncs = 0;
  std::int64_t barriers = 0;
  std::int64_t mutexOps = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using Trace = std::vector<TraceRecord>;

// Node -> cluster (place) assignment: floor(node * clusters / n). Contiguous
// blocks, every cluster non-empty, sizes differing by at most one.
inline int map_cluster(int node, int n, int clusters) {
  if (n < 1) throw SpecError("map_cluster: n must be >= 1");
  if (clusters < 1 || clusters > n)
    throw SpecError("map_cluster: clusters must lie in [1, n]");
  if (node < 0 || node >= n) throw SpecError("map_cluster: node out of range");
  return static_cast<int>((static_cast<std::int64_t>(node) * clusters) / n);
}

}  // namespace imsim
