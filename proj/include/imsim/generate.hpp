#pragma once

#include "imsim/graph.hpp"

namespace imsim {

// Deterministically builds an instance from the spec. Throws SpecError for
// infeasible specs (bad n for the kind, missing maxDegree, oversized faulty
// set, sp-max targets that exceed the complete graph, ...). The returned
// instance has passed validate_instance and carries a built adjacency.
GraphInstance generate(const GeneratorSpec& spec);

// Edge-count target for sp-max: n * ceil(log2 n).
std::int64_t sp_max_target(int n);

}  // namespace imsim
