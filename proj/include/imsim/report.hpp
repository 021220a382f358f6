#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "imsim/engine.hpp"
#include "imsim/graph.hpp"
#include "imsim/kernel_output.hpp"
#include "imsim/metrics.hpp"
#include "imsim/validators.hpp"

namespace imsim {

// One run report: generator spec, engine config, kernel tag, the output
// (payload + workload checksum + stable digest), metrics and verdict, plus
// the trace path when a trace was written. Deterministic runs produce
// byte-identical reports.
nlohmann::ordered_json make_report(const GraphInstance& g, const EngineConfig& cfg,
                                   const KernelOutput& out, const Metrics& metrics,
                                   const Verdict& verdict,
                                   const std::optional<std::string>& tracePath);

void save_report(const nlohmann::ordered_json& report, const std::string& path);
nlohmann::ordered_json load_report(const std::string& path);

// Field accessors used when re-checking a stored report. Throw SpecError on
// schema violations.
KernelOutput output_from_report(const nlohmann::ordered_json& report);
std::string digest_from_report(const nlohmann::ordered_json& report);
Kernel kernel_from_report(const nlohmann::ordered_json& report);

// Writes the per-superstep trace. `format` is "csv" (header row
// round,messagesTotal,messagesRemote,finishes,asyncs,barriers,mutexOps) or
// "json" (array of objects); anything else throws SpecError.
void emit_trace(const Trace& trace, const std::string& path, const std::string& format);

}  // namespace imsim
