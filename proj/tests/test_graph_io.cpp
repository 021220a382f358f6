#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "imsim/generate.hpp"
#include "imsim/graph_io.hpp"

using namespace imsim;

namespace {

GraphInstance sample(GraphKind kind, int n, bool weighted = false) {
  GeneratorSpec s;
  s.kind = kind;
  s.n = n;
  if (kind == GraphKind::TreeRandom) s.maxDegree = 4;
  s.weighted = weighted;
  s.faultyCount = n >= 16 ? 2 : 0;
  return generate(s);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("json round-trip preserves every field") {
  for (GraphKind kind : {GraphKind::RingUni, GraphKind::TreeRandom, GraphKind::Random,
                         GraphKind::SpMax}) {
    const GraphInstance g = sample(kind, 16, kind == GraphKind::SpMax);
    const GraphInstance back = graph_from_json(graph_to_json(g));
    CHECK(back.kind == g.kind);
    CHECK(back.n == g.n);
    CHECK(back.seed == g.seed);
    CHECK(back.uids == g.uids);
    CHECK(back.root == g.root);
    CHECK(back.faulty == g.faulty);
    CHECK(back.edges == g.edges);
    CHECK(back.weighted == g.weighted);
    CHECK(back.maxDegree == g.maxDegree);
    CHECK(back.adjacency == g.adjacency);
  }
}

TEST_CASE("serialization is canonical (byte-identical)") {
  const GraphInstance g = sample(GraphKind::Random, 24);
  CHECK(graph_to_json(g) == graph_to_json(g));
  const GraphInstance h = sample(GraphKind::Random, 24);
  CHECK(graph_to_json(g) == graph_to_json(h));
}

TEST_CASE("save and load through files") {
  const auto path = std::filesystem::temp_directory_path() / "imsim_io_test.json";
  const GraphInstance g = sample(GraphKind::SpMin, 12);
  save_graph(g, path.string());
  const GraphInstance back = load_graph(path.string());
  CHECK(back.edges == g.edges);
  save_graph(g, path.string());
  const std::string once = slurp(path.string());
  save_graph(g, path.string());
  CHECK(slurp(path.string()) == once);
  std::filesystem::remove(path);
}

TEST_CASE("duplicate uids are rejected on load") {
  GraphInstance g = sample(GraphKind::Random, 8);
  g.uids[2] = g.uids[5];
  const std::string text = graph_to_json(g);
  CHECK_THROWS_WITH_AS(graph_from_json(text), doctest::Contains("uid"), SpecError);
}

TEST_CASE("a complete graph with a missing edge is rejected") {
  GraphInstance g = sample(GraphKind::Complete, 6);
  g.edges.pop_back();
  build_adjacency(g);
  CHECK_THROWS_AS(graph_from_json(graph_to_json(g)), SpecError);
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(graph_from_json("not json"), SpecError);
  CHECK_THROWS_AS(graph_from_json("{}"), SpecError);
  const GraphInstance g = sample(GraphKind::Random, 8);
  std::string text = graph_to_json(g);
  const auto pos = text.find("random");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "banana");
  CHECK_THROWS_AS(graph_from_json(text), SpecError);
}

TEST_CASE("loading a missing file fails cleanly") {
  CHECK_THROWS_AS(load_graph("/nonexistent/imsim.json"), Error);
}
