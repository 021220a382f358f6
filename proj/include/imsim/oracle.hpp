#pragma once

#include <cstdint>
#include <vector>

#include "imsim/graph.hpp"

// Reference answers computed by direct textbook algorithms. These share no
// code with the kernels: plain BFS, Floyd-Warshall and Kruskal over the raw
// edge list, used by the validators and by tests as ground truth.

namespace imsim::oracle {

inline constexpr std::int64_t kUnreachable = -1;

// Hop distances from src over the instance adjacency (directed for ring-uni).
std::vector<std::int64_t> bfs_distances(const GraphInstance& g, int src);

// Eccentricity of src: max hop distance to any node.
std::int64_t eccentricity(const GraphInstance& g, int src);

// Max eccentricity over all nodes (all-pairs BFS).
std::int64_t diameter(const GraphInstance& g);

// Weighted all-pairs shortest path costs; kUnreachable marks no path.
std::vector<std::vector<std::int64_t>> floyd_warshall(const GraphInstance& g);

// The unique minimum spanning tree (weights are distinct), as a sorted list
// of (u, v) pairs with u < v.
std::vector<std::pair<int, int>> kruskal(const GraphInstance& g);

std::int64_t max_uid(const GraphInstance& g);

}  // namespace imsim::oracle
