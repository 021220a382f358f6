#pragma once

#include <string>

#include "imsim/graph.hpp"

namespace imsim {

// Canonical JSON text for an instance. Field order, spacing and edge order
// are fixed, so equal instances always serialize to identical bytes.
std::string graph_to_json(const GraphInstance& g);

// Inverse of graph_to_json. Throws SpecError on schema violations (bad
// version, unknown kind, unknown fields, mixed edge arity) and defers all
// structural checks to validate_instance, so a loaded instance satisfies
// exactly the invariants a generated one does.
GraphInstance graph_from_json(const std::string& text);

void save_graph(const GraphInstance& g, const std::string& path);
GraphInstance load_graph(const std::string& path);

}  // namespace imsim
