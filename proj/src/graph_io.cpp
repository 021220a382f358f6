#include "imsim/graph_io.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace imsim {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) {
  throw SpecError("malformed graph file: " + what);
}

}  // namespace

std::string graph_to_json(const GraphInstance& g) {
  ordered_json j;
  j["version"] = 1;
  j["kind"] = to_string(g.kind);
  j["n"] = g.n;
  j["seed"] = g.seed;
  ordered_json params = ordered_json::object();
  if (g.maxDegree) params["maxDegree"] = *g.maxDegree;
  if (g.k) params["k"] = *g.k;
  if (!g.faulty.empty()) params["faultyCount"] = g.faulty.size();
  j["params"] = params;
  j["uids"] = g.uids;
  if (g.root) j["root"] = *g.root;
  if (!g.faulty.empty()) j["faulty"] = g.faulty;
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges) {
    if (g.weighted)
      edges.push_back({e.u, e.v, e.w});
    else
      edges.push_back({e.u, e.v});
  }
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

GraphInstance graph_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
  if (!j.is_object()) bad("top level must be an object");

  static const std::set<std::string> known = {
      "version", "kind", "n", "seed", "params", "uids", "root", "faulty", "edges"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) bad("unknown field: " + key);
  for (const char* required : {"version", "kind", "n", "seed", "params", "uids", "edges"})
    if (!j.contains(required)) bad(std::string("missing field: ") + required);

  GraphInstance g;
  try {
    if (j["version"].get<int>() != 1)
      bad("unsupported version " + j["version"].dump());
    g.kind = graph_kind_from_string(j["kind"].get<std::string>());
    g.n = j["n"].get<int>();
    g.seed = j["seed"].get<std::uint64_t>();

    const auto& params = j["params"];
    if (!params.is_object()) bad("params must be an object");
    for (const auto& [key, value] : params.items()) {
      if (key == "maxDegree")
        g.maxDegree = value.get<int>();
      else if (key == "k")
        g.k = value.get<int>();
      else if (key == "faultyCount")
        ;  // cross-checked against the faulty list below
      else
        bad("unknown param: " + key);
    }

    g.uids = j["uids"].get<std::vector<std::int64_t>>();
    if (j.contains("root")) g.root = j["root"].get<int>();
    if (j.contains("faulty")) g.faulty = j["faulty"].get<std::vector<int>>();

    const std::size_t declared_faulty =
        params.contains("faultyCount") ? params["faultyCount"].get<std::size_t>() : 0;
    if (declared_faulty != g.faulty.size())
      bad("faultyCount does not match the faulty list");

    const auto& edges = j["edges"];
    if (!edges.is_array()) bad("edges must be an array");
    std::size_t arity = 0;
    for (const auto& e : edges) {
      if (!e.is_array() || (e.size() != 2 && e.size() != 3))
        bad("edge entries must be [u, v] or [u, v, weight]");
      if (arity == 0) arity = e.size();
      if (e.size() != arity) bad("mixed weighted and unweighted edges");
      Edge edge;
      edge.u = e[0].get<int>();
      edge.v = e[1].get<int>();
      if (arity == 3) edge.w = e[2].get<std::int64_t>();
      g.edges.push_back(edge);
    }
    g.weighted = arity == 3;
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }

  build_adjacency(g);
  validate_instance(g);
  return g;
}

void save_graph(const GraphInstance& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeAbort("cannot open for writing: " + path);
  out << graph_to_json(g);
  if (!out) throw RuntimeAbort("write failed: " + path);
}

GraphInstance load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeAbort("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return graph_from_json(text);
}

}  // namespace imsim
