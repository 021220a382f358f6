#include <string>

#include "imsim/graph.hpp"
#include "imsim/kernels.hpp"

namespace imsim {
namespace {

void require(bool ok, Kernel k, const std::string& what) {
  if (!ok)
    throw SpecError(std::string("kernel ") + to_string(k) +
                    " not applicable: " + what);
}

}  // namespace

void check_applicable(Kernel k, const GraphInstance& g) {
  const bool symmetric = g.kind != GraphKind::RingUni;
  switch (k) {
    case Kernel::LCR:
      require(g.kind == GraphKind::RingUni, k, "needs a unidirectional ring");
      break;
    case Kernel::HS:
      require(g.kind == GraphKind::RingBi, k, "needs a bidirectional ring");
      break;
    case Kernel::VC:
      require(is_tree_kind(g.kind), k, "needs a rooted tree topology");
      require(g.root.has_value(), k, "needs a root");
      break;
    case Kernel::BF:
    case Kernel::DST:
      require(symmetric, k, "needs a symmetric topology");
      require(g.root.has_value(), k, "needs a root");
      break;
    case Kernel::DP:
    case Kernel::MIS:
    case Kernel::DS:
      require(symmetric, k, "needs a symmetric topology");
      break;
    case Kernel::BY:
      require(symmetric, k, "needs a symmetric topology");
      break;
    case Kernel::KC:
      require(symmetric, k, "needs a symmetric topology");
      require(g.k.has_value() && *g.k >= 1, k, "needs committee size k");
      break;
    case Kernel::MST:
    case Kernel::DR:
      require(symmetric, k, "needs a symmetric topology");
      require(g.weighted, k, "needs edge weights");
      break;
  }
}

std::vector<GraphKind> applicable_kinds(Kernel k) {
  static const std::vector<GraphKind> kSymmetric = {
      GraphKind::RingBi,  GraphKind::TreeStar, GraphKind::TreeChain,
      GraphKind::TreeRandom, GraphKind::Complete, GraphKind::Random,
      GraphKind::SpMin,   GraphKind::SpMax};
  switch (k) {
    case Kernel::LCR: return {GraphKind::RingUni};
    case Kernel::HS: return {GraphKind::RingBi};
    case Kernel::VC:
      return {GraphKind::TreeStar, GraphKind::TreeChain, GraphKind::TreeRandom};
    default: return kSymmetric;
  }
}

bool needs_weights(Kernel k) { return k == Kernel::MST || k == Kernel::DR; }

RunResult run_kernel(Kernel k, const GraphInstance& g, const EngineConfig& cfg,
                     const ByOptions& by_opt) {
  check_applicable(k, g);
  switch (k) {
    case Kernel::BF: return kernels::run_bf(g, cfg);
    case Kernel::DST: return kernels::run_dst(g, cfg);
    case Kernel::BY: return kernels::run_by(g, cfg, by_opt);
    case Kernel::DR: return kernels::run_dr(g, cfg);
    case Kernel::DS: return kernels::run_ds(g, cfg);
    case Kernel::KC: return kernels::run_kc(g, cfg);
    case Kernel::MIS: return kernels::run_mis(g, cfg);
    case Kernel::LCR: return kernels::run_lcr(g, cfg);
    case Kernel::HS: return kernels::run_hs(g, cfg);
    case Kernel::DP: return kernels::run_dp(g, cfg);
    case Kernel::MST: return kernels::run_mst(g, cfg);
    case Kernel::VC: return kernels::run_vc(g, cfg);
  }
  throw SpecError("unknown kernel tag");
}

}  // namespace imsim
