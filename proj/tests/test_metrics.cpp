#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "imsim/generate.hpp"
#include "imsim/kernels.hpp"
#include "imsim/metrics.hpp"
#include "imsim/report.hpp"
#include "imsim/validators.hpp"

using namespace imsim;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphInstance sample_graph() {
  GeneratorSpec spec;
  spec.kind = GraphKind::Random;
  spec.n = 12;
  spec.seed = 77;
  return generate(spec);
}

}  // namespace

TEST_CASE("map_cluster covers every cluster with balanced contiguous blocks") {
  for (int n : {1, 2, 7, 16, 100}) {
    for (int clusters = 1; clusters <= n; ++clusters) {
      std::vector<int> sizes(static_cast<std::size_t>(clusters), 0);
      int prev = 0;
      for (int v = 0; v < n; ++v) {
        int c = map_cluster(v, n, clusters);
        REQUIRE(c >= 0);
        REQUIRE(c < clusters);
        REQUIRE(c >= prev);  // contiguous, monotone blocks
        prev = c;
        sizes[static_cast<std::size_t>(c)] += 1;
      }
      const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
      CHECK(*lo >= 1);
      CHECK(*hi - *lo <= 1);
    }
  }
  CHECK(map_cluster(0, 8, 1) == 0);
  CHECK(map_cluster(7, 8, 8) == 7);
}

TEST_CASE("map_cluster rejects out-of-range arguments") {
  CHECK_THROWS_AS(map_cluster(0, 0, 1), SpecError);
  CHECK_THROWS_AS(map_cluster(0, 4, 0), SpecError);
  CHECK_THROWS_AS(map_cluster(0, 4, 5), SpecError);
  CHECK_THROWS_AS(map_cluster(-1, 4, 2), SpecError);
  CHECK_THROWS_AS(map_cluster(4, 4, 2), SpecError);
}

TEST_CASE("emit_trace writes the documented csv layout") {
  Trace tr;
  tr.push_back({0, 5, 2, 1, 12, 0, 3});
  tr.push_back({1, 0, 0, 1, 12, 1, 0});
  const auto path = temp_path("imsim_trace_test.csv");
  emit_trace(tr, path, "csv");

  std::istringstream in(slurp(path));
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "round,messagesTotal,messagesRemote,finishes,asyncs,barriers,mutexOps");
  REQUIRE(std::getline(in, line));
  CHECK(line == "0,5,2,1,12,0,3");
  REQUIRE(std::getline(in, line));
  CHECK(line == "1,0,0,1,12,1,0");
  CHECK_FALSE(std::getline(in, line));
  std::remove(path.c_str());
}

TEST_CASE("emit_trace json round-trips the records") {
  Trace tr;
  tr.push_back({0, 5, 2, 1, 12, 0, 3});
  tr.push_back({1, 7, 7, 0, 0, 2, 1});
  const auto path = temp_path("imsim_trace_test.json");
  emit_trace(tr, path, "json");

  auto j = nlohmann::json::parse(slurp(path));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["round"] == 0);
  CHECK(j[0]["messagesTotal"] == 5);
  CHECK(j[0]["messagesRemote"] == 2);
  CHECK(j[0]["finishes"] == 1);
  CHECK(j[0]["asyncs"] == 12);
  CHECK(j[0]["barriers"] == 0);
  CHECK(j[0]["mutexOps"] == 3);
  CHECK(j[1]["barriers"] == 2);
  std::remove(path.c_str());
}

TEST_CASE("emit_trace rejects unknown formats") {
  Trace tr;
  CHECK_THROWS_AS(emit_trace(tr, temp_path("x.bin"), "xml"), SpecError);
}

TEST_CASE("reports carry every field and reload losslessly") {
  auto g = sample_graph();
  EngineConfig cfg;
  cfg.strategy = Strategy::FAC;
  cfg.clusters = 3;
  cfg.workers = 2;
  cfg.loadValue = 5;
  cfg.seed = g.seed;
  auto run = run_kernel(Kernel::BF, g, cfg);
  auto verdict = validate(Kernel::BF, g, run.output);

  auto rep = make_report(g, cfg, run.output, run.metrics, verdict,
                         std::nullopt);
  CHECK(rep["spec"]["kind"] == "random");
  CHECK(rep["spec"]["n"] == 12);
  CHECK(rep["config"]["strategy"] == "fac");
  CHECK(rep["config"]["clusters"] == 3);
  CHECK(rep["config"]["workers"] == 2);
  CHECK(rep["config"]["loadValue"] == 5);
  CHECK(rep["kernel"] == "bf");
  CHECK(rep["verdict"]["pass"] == true);
  CHECK(rep.contains("output"));
  CHECK(rep.contains("output-digest"));
  CHECK(rep.contains("checksum"));
  CHECK(rep["metrics"]["finishes"] == run.metrics.finishes);
  CHECK(rep["metrics"]["messagesTotal"] == run.metrics.messagesTotal);
  CHECK_FALSE(rep.contains("trace-path"));

  const auto path = temp_path("imsim_report_test.json");
  save_report(rep, path);
  auto back = load_report(path);
  CHECK(back == rep);

  CHECK(kernel_from_report(back) == Kernel::BF);
  CHECK(output_from_report(back) == run.output);
  CHECK(digest_from_report(back) == output_digest(run.output));
  std::remove(path.c_str());
}

TEST_CASE("identical runs serialize to byte-identical reports") {
  auto g = sample_graph();
  EngineConfig cfg;
  auto make_bytes = [&] {
    auto run = run_kernel(Kernel::MIS, g, cfg);
    auto verdict = validate(Kernel::MIS, g, run.output);
    auto rep = make_report(g, cfg, run.output, run.metrics, verdict,
                           std::nullopt);
    const auto path = temp_path("imsim_report_bytes.json");
    save_report(rep, path);
    auto bytes = slurp(path);
    std::remove(path.c_str());
    return bytes;
  };
  const auto a = make_bytes();
  const auto b = make_bytes();
  CHECK(a == b);
  CHECK_FALSE(a.empty());
  CHECK(a.back() == '\n');
}

TEST_CASE("trace-path is recorded when a trace file is written") {
  auto g = sample_graph();
  EngineConfig cfg;
  auto run = run_kernel(Kernel::BF, g, cfg);
  auto verdict = validate(Kernel::BF, g, run.output);
  auto rep = make_report(g, cfg, run.output, run.metrics, verdict,
                         std::string("/tmp/tr.csv"));
  CHECK(rep["trace-path"] == "/tmp/tr.csv");
}

TEST_CASE("load_report rejects malformed files") {
  const auto path = temp_path("imsim_report_bad.json");
  {
    std::ofstream out(path, std::ios::binary);
    out << "this is not json";
  }
  CHECK_THROWS_AS(load_report(path), SpecError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_report(temp_path("imsim_no_such_file.json")), Error);
}

TEST_CASE("report accessors validate their schema") {
  nlohmann::ordered_json empty = nlohmann::ordered_json::object();
  CHECK_THROWS_AS(kernel_from_report(empty), SpecError);
  CHECK_THROWS_AS(output_from_report(empty), SpecError);
  CHECK_THROWS_AS(digest_from_report(empty), SpecError);
}
