#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace imsim {

enum class Kernel { BF, DST, BY, DR, DS, KC, MIS, LCR, HS, DP, MST, VC };

const char* to_string(Kernel k);
Kernel kernel_from_string(const std::string& name);

// ---- per-kernel result payloads -------------------------------------------

struct BfOutput {
  std::vector<std::int64_t> dist;  // hop distance from the root
  friend bool operator==(const BfOutput&, const BfOutput&) = default;
};

struct DstOutput {
  std::vector<int> parent;                 // -1 at the root
  std::vector<std::vector<int>> children;  // sorted child lists
  friend bool operator==(const DstOutput&, const DstOutput&) = default;
};

struct ByOutput {
  std::vector<std::uint8_t> initialVote;  // faulty entries are 0 placeholders
  std::vector<std::uint8_t> decision;     // meaningful for good nodes
  friend bool operator==(const ByOutput&, const ByOutput&) = default;
};

struct RouteEntry {
  std::int64_t cost = 0;
  int nextHop = -1;  // -1 on the diagonal
  std::int64_t hops = 0;
  friend bool operator==(const RouteEntry&, const RouteEntry&) = default;
};

struct DrOutput {
  std::vector<std::vector<RouteEntry>> table;  // [source][destination]
  friend bool operator==(const DrOutput&, const DrOutput&) = default;
};

// 0 = White, 1 = Grey, 2 = Black.
struct DsOutput {
  std::vector<int> color;
  friend bool operator==(const DsOutput&, const DsOutput&) = default;
};

struct KcOutput {
  std::vector<std::int64_t> committee;  // committee id = leader uid
  friend bool operator==(const KcOutput&, const KcOutput&) = default;
};

struct MisOutput {
  std::vector<std::uint8_t> inSet;
  friend bool operator==(const MisOutput&, const MisOutput&) = default;
};

struct LeaderOutput {  // LCR and HS
  std::vector<std::int64_t> leaderId;
  std::vector<std::uint8_t> isLeader;
  friend bool operator==(const LeaderOutput&, const LeaderOutput&) = default;
};

struct DpOutput {
  std::vector<std::int64_t> leaderId;
  std::vector<std::uint8_t> isLeader;
  std::int64_t diameter = 0;
  friend bool operator==(const DpOutput&, const DpOutput&) = default;
};

struct MstOutput {
  std::vector<std::pair<int, int>> marked;  // sorted, u < v
  friend bool operator==(const MstOutput&, const MstOutput&) = default;
};

struct VcOutput {
  std::vector<int> color;  // final colors in {0, 1, 2}
  friend bool operator==(const VcOutput&, const VcOutput&) = default;
};

using KernelPayload =
    std::variant<BfOutput, DstOutput, ByOutput, DrOutput, DsOutput, KcOutput,
                 MisOutput, LeaderOutput, DpOutput, MstOutput, VcOutput>;

struct KernelOutput {
  Kernel kernel = Kernel::LCR;
  std::int64_t checksum = 0;
  KernelPayload payload;

  friend bool operator==(const KernelOutput&, const KernelOutput&) = default;
};

// Canonical JSON for the payload+checksum and the stable digest over it
// (FNV-1a 64 of the canonical bytes, rendered as 16 hex digits).
nlohmann::ordered_json output_to_json(const KernelOutput& out);
KernelOutput output_from_json(const nlohmann::ordered_json& j);
std::string output_digest(const KernelOutput& out);

}  // namespace imsim
