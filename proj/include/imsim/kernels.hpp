#pragma once

#include "imsim/engine.hpp"
#include "imsim/graph.hpp"
#include "imsim/kernel_output.hpp"
#include "imsim/metrics.hpp"

namespace imsim {

struct RunResult {
  KernelOutput output;
  Metrics metrics;
  Trace trace;
};

// Byzantine-agreement test knobs: how good nodes vote initially and how the
// faulty nodes lie.  Defaults reproduce the seeded pseudo-random behaviour.
enum class ByVotes { Random, AllZero, AllOne };
enum class ByAdversary { Random, ConstZero, ConstOne };
struct ByOptions {
  ByVotes votes = ByVotes::Random;
  ByAdversary adversary = ByAdversary::Random;
};

namespace kernels {

RunResult run_bf(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_dst(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_by(const GraphInstance& g, const EngineConfig& cfg,
                 const ByOptions& opt = {});
RunResult run_dr(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_ds(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_kc(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_mis(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_lcr(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_hs(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_dp(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_mst(const GraphInstance& g, const EngineConfig& cfg);
RunResult run_vc(const GraphInstance& g, const EngineConfig& cfg);

}  // namespace kernels

// Throws SpecError when the instance does not satisfy the kernel's input
// contract (wrong topology family, missing root/weights/faulty set, ...).
void check_applicable(Kernel k, const GraphInstance& g);

// The graph kinds a kernel accepts (sweep defaults).
std::vector<GraphKind> applicable_kinds(Kernel k);

// True for kernels whose instances must carry edge weights (DR, MST).
bool needs_weights(Kernel k);

// Dispatch by tag; applies check_applicable first.
RunResult run_kernel(Kernel k, const GraphInstance& g, const EngineConfig& cfg,
                     const ByOptions& by_opt = {});

}  // namespace imsim
