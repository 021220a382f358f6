#include "imsim/kernel_output.hpp"

#include "imsim/graph.hpp"

namespace imsim {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
  ordered_json arr = ordered_json::array();
  for (const auto& [a, b] : pairs) arr.push_back({a, b});
  return arr;
}

std::vector<std::pair<int, int>> pairs_from_json(const ordered_json& arr) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : arr) out.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return out;
}

}  // namespace

const char* to_string(Kernel k) {
  switch (k) {
    case Kernel::BF: return "bf";
    case Kernel::DST: return "dst";
    case Kernel::BY: return "by";
    case Kernel::DR: return "dr";
    case Kernel::DS: return "ds";
    case Kernel::KC: return "kc";
    case Kernel::MIS: return "mis";
    case Kernel::LCR: return "lcr";
    case Kernel::HS: return "hs";
    case Kernel::DP: return "dp";
    case Kernel::MST: return "mst";
    case Kernel::VC: return "vc";
  }
  return "?";
}

Kernel kernel_from_string(const std::string& name) {
  static const std::pair<const char*, Kernel> table[] = {
      {"bf", Kernel::BF},   {"dst", Kernel::DST}, {"by", Kernel::BY},
      {"dr", Kernel::DR},   {"ds", Kernel::DS},   {"kc", Kernel::KC},
      {"mis", Kernel::MIS}, {"lcr", Kernel::LCR}, {"hs", Kernel::HS},
      {"dp", Kernel::DP},   {"mst", Kernel::MST}, {"vc", Kernel::VC},
  };
  for (const auto& [text, kernel] : table)
    if (name == text) return kernel;
  throw SpecError("unknown kernel: " + name);
}

nlohmann::ordered_json output_to_json(const KernelOutput& out) {
  ordered_json j;
  j["kernel"] = to_string(out.kernel);
  j["checksum"] = out.checksum;
  ordered_json p = ordered_json::object();
  switch (out.kernel) {
    case Kernel::BF:
      p["dist"] = std::get<BfOutput>(out.payload).dist;
      break;
    case Kernel::DST: {
      const auto& o = std::get<DstOutput>(out.payload);
      p["parent"] = o.parent;
      p["children"] = o.children;
      break;
    }
    case Kernel::BY: {
      const auto& o = std::get<ByOutput>(out.payload);
      p["initialVote"] = o.initialVote;
      p["decision"] = o.decision;
      break;
    }
    case Kernel::DR: {
      const auto& o = std::get<DrOutput>(out.payload);
      ordered_json rows = ordered_json::array();
      for (const auto& row : o.table) {
        ordered_json cells = ordered_json::array();
        for (const RouteEntry& e : row)
          cells.push_back({e.cost, e.nextHop, e.hops});
        rows.push_back(cells);
      }
      p["table"] = rows;
      break;
    }
    case Kernel::DS:
      p["color"] = std::get<DsOutput>(out.payload).color;
      break;
    case Kernel::KC:
      p["committee"] = std::get<KcOutput>(out.payload).committee;
      break;
    case Kernel::MIS:
      p["inSet"] = std::get<MisOutput>(out.payload).inSet;
      break;
    case Kernel::LCR:
    case Kernel::HS: {
      const auto& o = std::get<LeaderOutput>(out.payload);
      p["leaderId"] = o.leaderId;
      p["isLeader"] = o.isLeader;
      break;
    }
    case Kernel::DP: {
      const auto& o = std::get<DpOutput>(out.payload);
      p["leaderId"] = o.leaderId;
      p["isLeader"] = o.isLeader;
      p["diameter"] = o.diameter;
      break;
    }
    case Kernel::MST:
      p["marked"] = pairs_to_json(std::get<MstOutput>(out.payload).marked);
      break;
    case Kernel::VC:
      p["color"] = std::get<VcOutput>(out.payload).color;
      break;
  }
  j["payload"] = p;
  return j;
}

KernelOutput output_from_json(const nlohmann::ordered_json& j) {
  KernelOutput out;
  try {
    out.kernel = kernel_from_string(j.at("kernel").get<std::string>());
    out.checksum = j.at("checksum").get<std::int64_t>();
    const auto& p = j.at("payload");
    switch (out.kernel) {
      case Kernel::BF:
        out.payload = BfOutput{p.at("dist").get<std::vector<std::int64_t>>()};
        break;
      case Kernel::DST:
        out.payload = DstOutput{p.at("parent").get<std::vector<int>>(),
                                p.at("children").get<std::vector<std::vector<int>>>()};
        break;
      case Kernel::BY:
        out.payload = ByOutput{p.at("initialVote").get<std::vector<std::uint8_t>>(),
                               p.at("decision").get<std::vector<std::uint8_t>>()};
        break;
      case Kernel::DR: {
        DrOutput o;
        for (const auto& row : p.at("table")) {
          std::vector<RouteEntry> cells;
          for (const auto& e : row)
            cells.push_back({e.at(0).get<std::int64_t>(), e.at(1).get<int>(),
                             e.at(2).get<std::int64_t>()});
          o.table.push_back(std::move(cells));
        }
        out.payload = std::move(o);
        break;
      }
      case Kernel::DS:
        out.payload = DsOutput{p.at("color").get<std::vector<int>>()};
        break;
      case Kernel::KC:
        out.payload = KcOutput{p.at("committee").get<std::vector<std::int64_t>>()};
        break;
      case Kernel::MIS:
        out.payload = MisOutput{p.at("inSet").get<std::vector<std::uint8_t>>()};
        break;
      case Kernel::LCR:
      case Kernel::HS:
        out.payload = LeaderOutput{p.at("leaderId").get<std::vector<std::int64_t>>(),
                                   p.at("isLeader").get<std::vector<std::uint8_t>>()};
        break;
      case Kernel::DP:
        out.payload = DpOutput{p.at("leaderId").get<std::vector<std::int64_t>>(),
                               p.at("isLeader").get<std::vector<std::uint8_t>>(),
                               p.at("diameter").get<std::int64_t>()};
        break;
      case Kernel::MST:
        out.payload = MstOutput{pairs_from_json(p.at("marked"))};
        break;
      case Kernel::VC:
        out.payload = VcOutput{p.at("color").get<std::vector<int>>()};
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed kernel output: ") + e.what());
  }
  return out;
}

std::string output_digest(const KernelOutput& out) {
  const std::string bytes = output_to_json(out).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string text(16, '0');
  for (int i = 15; i >= 0; --i) {
    text[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return text;
}

}  // namespace imsim
