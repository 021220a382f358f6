#pragma once

#include <optional>
#include <string>

#include "imsim/graph.hpp"
#include "imsim/kernel_output.hpp"

namespace imsim {

// Outcome of a serial output check. A failing verdict always names the rule
// that broke and a concrete counterexample (node, edge, or pair).
struct Verdict {
  bool pass = true;
  std::optional<std::string> failedRule;
  std::optional<std::string> witness;
};

// Checks `out` against the independent reference answers for `kernel` on
// `g`. Throws Error when the kernel tag does not match the payload (or the
// tag recorded in `out`). Never mutates its arguments.
Verdict validate(Kernel kernel, const GraphInstance& g, const KernelOutput& out);

}  // namespace imsim
