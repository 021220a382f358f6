#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "imsim/rng.hpp"

using namespace imsim;

TEST_CASE("splitmix64 streams are deterministic") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("below is in range and covers small bounds") {
  SplitMix64 rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng.below(5);
    CHECK(v < 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("substreams with different purposes do not collide") {
  SplitMix64 edges = substream(101, Stream::Edges);
  SplitMix64 uids = substream(101, Stream::Uids);
  int equal = 0;
  for (int i = 0; i < 100; ++i)
    if (edges.next() == uids.next()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("substream draws are independent of other purposes") {
  // Drawing a different amount from one purpose must not change another.
  SplitMix64 w1 = substream(5, Stream::Weights);
  SplitMix64 e = substream(5, Stream::Edges);
  (void)e.next();
  SplitMix64 w2 = substream(5, Stream::Weights);
  for (int i = 0; i < 50; ++i) CHECK(w1.next() == w2.next());
}

TEST_CASE("node_rng is a pure function of its coordinates") {
  CHECK(node_rng(101, 3, 7, 0) == node_rng(101, 3, 7, 0));
  CHECK(node_rng(101, 3, 7, 0) != node_rng(102, 3, 7, 0));
  CHECK(node_rng(101, 3, 7, 0) != node_rng(101, 4, 7, 0));
  CHECK(node_rng(101, 3, 8, 0) != node_rng(101, 3, 7, 0));
  CHECK(node_rng(101, 3, 7, 1) != node_rng(101, 3, 7, 0));
}

TEST_CASE("node_rng has no collisions over a dense coordinate scan") {
  std::set<std::uint64_t> seen;
  int draws = 0;
  for (std::int64_t node = -2; node < 23; ++node)
    for (std::int64_t round = 0; round < 20; ++round)
      for (std::uint64_t draw = 0; draw < 20; ++draw) {
        seen.insert(node_rng(kDefaultSeed, node, round, draw));
        ++draws;
      }
  CHECK(draws == 10000);
  CHECK(seen.size() == static_cast<std::size_t>(draws));
}

TEST_CASE("shuffle is deterministic and a permutation") {
  std::vector<int> v1{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> v2 = v1;
  SplitMix64 r1(13), r2(13);
  shuffle(v1, r1);
  shuffle(v2, r2);
  CHECK(v1 == v2);
  std::set<int> s(v1.begin(), v1.end());
  CHECK(s.size() == 10);
}
