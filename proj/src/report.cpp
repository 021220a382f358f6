#include "imsim/report.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace imsim {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json spec_json(const GraphInstance& g) {
  ordered_json spec;
  spec["kind"] = to_string(g.kind);
  spec["n"] = g.n;
  spec["seed"] = g.seed;
  spec["maxDegree"] = g.maxDegree ? ordered_json(*g.maxDegree) : ordered_json(nullptr);
  spec["k"] = g.k ? ordered_json(*g.k) : ordered_json(nullptr);
  spec["faultyCount"] = static_cast<int>(g.faulty.size());
  spec["weighted"] = g.weighted;
  spec["root"] = g.root ? ordered_json(*g.root) : ordered_json(nullptr);
  return spec;
}

ordered_json config_json(const EngineConfig& cfg) {
  ordered_json c;
  c["strategy"] = to_string(cfg.strategy);
  c["clusters"] = cfg.clusters;
  c["workers"] = cfg.workers;
  c["loadValue"] = cfg.loadValue;
  c["seed"] = cfg.seed;
  return c;
}

ordered_json metrics_json(const Metrics& m) {
  ordered_json j;
  j["finishes"] = m.finishes;
  j["asyncs"] = m.asyncs;
  j["barriers"] = m.barriers;
  j["mutexOps"] = m.mutexOps;
  j["messagesTotal"] = m.messagesTotal;
  j["messagesRemote"] = m.messagesRemote;
  j["supersteps"] = m.supersteps;
  j["measuredRounds"] = m.measuredRounds;
  return j;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["pass"] = v.pass;
  j["failedRule"] = v.failedRule ? ordered_json(*v.failedRule) : ordered_json(nullptr);
  j["witness"] = v.witness ? ordered_json(*v.witness) : ordered_json(nullptr);
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeAbort("cannot open for writing: " + path);
  out << text;
  if (!out) throw RuntimeAbort("write failed: " + path);
}

}  // namespace

ordered_json make_report(const GraphInstance& g, const EngineConfig& cfg,
                         const KernelOutput& out, const Metrics& metrics,
                         const Verdict& verdict,
                         const std::optional<std::string>& tracePath) {
  ordered_json r;
  r["spec"] = spec_json(g);
  r["config"] = config_json(cfg);
  r["kernel"] = to_string(out.kernel);
  r["output"] = output_to_json(out);
  r["output-digest"] = output_digest(out);
  r["checksum"] = out.checksum;
  r["metrics"] = metrics_json(metrics);
  r["verdict"] = verdict_json(verdict);
  if (tracePath) r["trace-path"] = *tracePath;
  return r;
}

void save_report(const ordered_json& report, const std::string& path) {
  write_text(path, report.dump(2) + "\n");
}

ordered_json load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open report: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ordered_json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw SpecError("report is not valid JSON: " + std::string(e.what()));
  }
}

KernelOutput output_from_report(const ordered_json& report) {
  if (!report.contains("output")) throw SpecError("report has no output field");
  return output_from_json(report.at("output"));
}

std::string digest_from_report(const ordered_json& report) {
  if (!report.contains("output-digest") || !report.at("output-digest").is_string())
    throw SpecError("report has no output-digest field");
  return report.at("output-digest").get<std::string>();
}

Kernel kernel_from_report(const ordered_json& report) {
  if (!report.contains("kernel") || !report.at("kernel").is_string())
    throw SpecError("report has no kernel field");
  return kernel_from_string(report.at("kernel").get<std::string>());
}

void emit_trace(const Trace& trace, const std::string& path, const std::string& format) {
  if (format == "csv") {
    std::string text = "round,messagesTotal,messagesRemote,finishes,asyncs,barriers,mutexOps\n";
    for (const TraceRecord& r : trace) {
      text += std::to_string(r.round) + ',' + std::to_string(r.messagesTotal) + ',' +
              std::to_string(r.messagesRemote) + ',' + std::to_string(r.finishes) + ',' +
              std::to_string(r.asyncs) + ',' + std::to_string(r.barriers) + ',' +
              std::to_string(r.mutexOps) + '\n';
    }
    write_text(path, text);
    return;
  }
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const TraceRecord& r : trace) {
      ordered_json row;
      row["round"] = r.round;
      row["messagesTotal"] = r.messagesTotal;
      row["messagesRemote"] = r.messagesRemote;
      row["finishes"] = r.finishes;
      row["asyncs"] = r.asyncs;
      row["barriers"] = r.barriers;
      row["mutexOps"] = r.mutexOps;
      arr.push_back(std::move(row));
    }
    write_text(path, arr.dump(2) + "\n");
    return;
  }
  throw SpecError("unknown trace format: " + format);
}

}  // namespace imsim
