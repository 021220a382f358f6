#pragma once

#include <cstdint>

// Deterministic randomness for the whole simulator.
//
// Everything is built on SplitMix64. Topology generation draws from named
// substreams (one per purpose) so adding a draw to one purpose never shifts
// another. Node-level randomness is a pure keyed function of
// (seed, node, round, draw), which makes results independent of worker count
// and execution order.

namespace imsim {

inline constexpr std::uint64_t kDefaultSeed = 101;

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace detail

// Sequential SplitMix64 stream.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // Unbiased draw in [0, bound) via rejection sampling. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0} / bound));
    for (;;) {
      const std::uint64_t v = next();
      if (v < limit) return v % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Purposes for topology substreams. Each purpose gets an independent stream
// derived from (seed, purpose), so the draw order inside one purpose cannot
// perturb the others.
enum class Stream : std::uint64_t {
  Edges = 1,
  Uids = 2,
  Weights = 3,
  Root = 4,
  Faulty = 5,
};

inline SplitMix64 substream(std::uint64_t seed, Stream purpose) {
  const auto tag = static_cast<std::uint64_t>(purpose);
  return SplitMix64(detail::mix64(seed + detail::kGolden * tag));
}

// Keyed per-node randomness: a pure function of all four coordinates.
// Kernels address it as (run seed, node id, superstep/phase index, draw
// index); negative node ids are reserved for shared "common coin" draws.
inline std::uint64_t node_rng(std::uint64_t seed, std::int64_t node,
                              std::int64_t round, std::uint64_t draw) {
  using detail::kGolden;
  using detail::mix64;
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (static_cast<std::uint64_t>(node) + kGolden * 0x10001ULL));
  h = mix64(h ^ (static_cast<std::uint64_t>(round) + kGolden * 0x20003ULL));
  h = mix64(h ^ (draw + kGolden * 0x40005ULL));
  return h;
}

// Fisher-Yates shuffle driven by a SplitMix64 stream.
template <typename Vec>
void shuffle(Vec& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace imsim
