#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "imsim/rng.hpp"

namespace imsim {

// Base class for everything the simulator can reject or abort on.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad generator spec, malformed graph file, kernel/graph incompatibility.
struct SpecError : Error {
  using Error::Error;
};

// Engine-detected runtime problems: mailbox overflow, superstep bound, I/O.
struct RuntimeAbort : Error {
  using Error::Error;
};

enum class GraphKind {
  RingUni,
  RingBi,
  TreeStar,
  TreeChain,
  TreeRandom,
  Complete,
  Random,
  SpMin,
  SpMax,
};

const char* to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& name);

inline bool is_tree_kind(GraphKind k) {
  return k == GraphKind::TreeStar || k == GraphKind::TreeChain ||
         k == GraphKind::TreeRandom;
}

struct Edge {
  int u = 0;
  int v = 0;
  std::int64_t w = 0;  // meaningful only when the instance is weighted

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class RootPolicy { None, FixedZero, Random };

// Everything needed to reproduce an instance.
struct GeneratorSpec {
  GraphKind kind = GraphKind::SpMin;
  int n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> maxDegree;   // tree-random only
  std::optional<int> k;           // committee bound (KC)
  int faultyCount = 0;            // byzantine instances
  bool weighted = false;
  RootPolicy rootPolicy = RootPolicy::FixedZero;
};

// A concrete network instance. `adjacency` is derived state rebuilt from the
// edge list; it is symmetric for every kind except ring-uni, whose entries
// are directed successor links.
struct GraphInstance {
  GraphKind kind = GraphKind::SpMin;
  int n = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> maxDegree;
  std::optional<int> k;
  bool weighted = false;
  std::vector<std::int64_t> uids;  // distinct, drawn from [1, 4n]
  std::optional<int> root;
  std::vector<int> faulty;         // sorted node indices, never contains root
  std::vector<Edge> edges;         // canonical: sorted, u < v except ring-uni

  std::vector<std::vector<int>> adjacency;  // derived from `edges`

  bool is_faulty(int node) const;
  std::int64_t edge_weight(int u, int v) const;  // weighted instances only
};

// Rebuilds `adjacency` from `edges` (neighbor lists sorted ascending).
void build_adjacency(GraphInstance& g);

// Checks every structural invariant of the instance; throws SpecError naming
// the first violated one. Covers: node/edge index ranges, canonical edge
// order, duplicate edges, uid distinctness and range, kind-specific shape
// (cycle / tree / completeness / edge counts / degree bounds), connectivity,
// weight distinctness, root range, and the faulty-set rules.
void validate_instance(const GraphInstance& g);

}  // namespace imsim
