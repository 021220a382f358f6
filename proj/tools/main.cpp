#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "imsim/engine.hpp"
#include "imsim/generate.hpp"
#include "imsim/graph_io.hpp"
#include "imsim/kernels.hpp"
#include "imsim/report.hpp"
#include "imsim/validators.hpp"

namespace {

using namespace imsim;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::uint64_t default_seed() {
  const char* env = std::getenv("IMSIM_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t value = 0;
  std::size_t pos = 0;
  try {
    value = std::stoull(env, &pos);
  } catch (const std::exception&) {
    throw SpecError(std::string("IMSIM_SEED is not a number: ") + env);
  }
  if (env[pos] != '\0')
    throw SpecError(std::string("IMSIM_SEED is not a number: ") + env);
  return value;
}

// Generator flags shared by `gen` and inline-spec `run`.
struct SpecFlags {
  std::string kind;
  int n = 0;
  int maxDegree = -1;
  int k = -1;
  int faulty = 0;
  bool weighted = false;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f, bool required) {
  auto* kind = cmd->add_option("--kind", f.kind,
                               "graph kind: ring-uni|ring-bi|tree-star|tree-chain|"
                               "tree-random|complete|random|sp-min|sp-max");
  auto* n = cmd->add_option("--n", f.n, "node count");
  if (required) {
    kind->required();
    n->required();
  }
  cmd->add_option("--max-degree", f.maxDegree, "degree bound (tree-random)");
  cmd->add_option("--k", f.k, "committee size bound (kc)");
  cmd->add_option("--faulty", f.faulty, "faulty node count (by)");
  cmd->add_flag("--weighted", f.weighted, "draw distinct edge weights");
}

GeneratorSpec to_spec(const SpecFlags& f, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = graph_kind_from_string(f.kind);
  spec.n = f.n;
  spec.seed = seed;
  if (f.maxDegree >= 0) spec.maxDegree = f.maxDegree;
  if (f.k >= 0) spec.k = f.k;
  spec.faultyCount = f.faulty;
  spec.weighted = f.weighted;
  return spec;
}

int default_k(int n) {
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
}

// Fills the kernel-required spec fields a user did not pin down explicitly.
void complete_spec_for_kernel(GeneratorSpec& spec, Kernel kernel) {
  if (needs_weights(kernel)) spec.weighted = true;
  if (kernel == Kernel::KC && !spec.k) spec.k = default_k(spec.n);
  if (spec.kind == GraphKind::TreeRandom && !spec.maxDegree) spec.maxDegree = 4;
}

std::string trace_format_for(const std::string& path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? "json" : "csv";
}

ByOptions parse_by_options(const std::string& votes, const std::string& adversary) {
  ByOptions opt;
  if (votes == "random") opt.votes = ByVotes::Random;
  else if (votes == "zero") opt.votes = ByVotes::AllZero;
  else if (votes == "one") opt.votes = ByVotes::AllOne;
  else throw SpecError("unknown --by-votes value: " + votes);
  if (adversary == "random") opt.adversary = ByAdversary::Random;
  else if (adversary == "const0") opt.adversary = ByAdversary::ConstZero;
  else if (adversary == "const1") opt.adversary = ByAdversary::ConstOne;
  else throw SpecError("unknown --by-adversary value: " + adversary);
  return opt;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw SpecError(std::string("bad ") + what + " entry: " + item);
    }
  }
  if (out.empty()) throw SpecError(std::string("empty ") + what + " list");
  return out;
}

std::vector<std::string> parse_str_list(const std::string& text, const char* what) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw SpecError(std::string("empty ") + what + " list");
  return out;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  SpecFlags spec;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const std::uint64_t seed = a.seedGiven ? a.seed : default_seed();
  const GeneratorSpec spec = to_spec(a.spec, seed);
  const GraphInstance g = generate(spec);
  save_graph(g, a.out);
  std::cout << "kind=" << to_string(g.kind) << " n=" << g.n << " m=" << g.edges.size()
            << " seed=" << g.seed << "\n";
  if (g.kind == GraphKind::SpMin)
    std::cout << "sparse guarantee: edges = n-1 ("
              << (static_cast<int>(g.edges.size()) == g.n - 1 ? "yes" : "NO") << ")\n";
  if (g.kind == GraphKind::SpMax) {
    GeneratorSpec minSpec = spec;
    minSpec.kind = GraphKind::SpMin;
    minSpec.weighted = false;
    const GraphInstance mn = generate(minSpec);
    bool superset = true;
    for (const Edge& e : mn.edges) {
      const bool found = std::any_of(g.edges.begin(), g.edges.end(), [&](const Edge& ge) {
        return ge.u == e.u && ge.v == e.v;
      });
      if (!found) {
        superset = false;
        break;
      }
    }
    std::cout << "sparse guarantee: superset of sp-min at equal seed ("
              << (superset ? "yes" : "NO") << ")\n";
  }
  return kExitOk;
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  std::string kernel;
  std::string graphPath;
  SpecFlags spec;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  std::string variant = "fa";
  int clusters = 1;
  int workers = 1;
  std::int64_t load = 0;
  std::string reportPath;
  std::string tracePath;
  bool verify = false;
  std::string byVotes = "random";
  std::string byAdversary = "random";
};

int cmd_run(const RunArgs& a) {
  const Kernel kernel = kernel_from_string(a.kernel);
  const std::uint64_t seed = a.seedGiven ? a.seed : default_seed();
  const bool inline_spec = !a.spec.kind.empty() || a.spec.n != 0;
  if (a.graphPath.empty() == !inline_spec)
    throw SpecError("pass exactly one of --graph or an inline --kind/--n spec");

  GraphInstance g;
  if (!a.graphPath.empty()) {
    g = load_graph(a.graphPath);
  } else {
    if (a.spec.kind.empty() || a.spec.n == 0)
      throw SpecError("inline spec needs both --kind and --n");
    GeneratorSpec spec = to_spec(a.spec, seed);
    complete_spec_for_kernel(spec, kernel);
    g = generate(spec);
  }

  EngineConfig cfg;
  cfg.strategy = strategy_from_string(a.variant);
  cfg.clusters = a.clusters;
  cfg.workers = a.workers;
  cfg.loadValue = a.load;
  cfg.seed = seed;

  const ByOptions byOpt = parse_by_options(a.byVotes, a.byAdversary);
  const RunResult res = run_kernel(kernel, g, cfg, byOpt);
  const Verdict verdict = validate(kernel, g, res.output);

  std::optional<std::string> tracePath;
  if (!a.tracePath.empty()) {
    emit_trace(res.trace, a.tracePath, trace_format_for(a.tracePath));
    tracePath = a.tracePath;
  }
  if (!a.reportPath.empty())
    save_report(make_report(g, cfg, res.output, res.metrics, verdict, tracePath),
                a.reportPath);

  std::cout << "kernel=" << to_string(kernel) << " kind=" << to_string(g.kind)
            << " n=" << g.n << " seed=" << seed << " variant=" << to_string(cfg.strategy)
            << " supersteps=" << res.metrics.supersteps
            << " finishes=" << res.metrics.finishes
            << " messages=" << res.metrics.messagesTotal
            << " digest=" << output_digest(res.output) << "\n";
  if (verdict.pass) {
    std::cout << "verdict: pass\n";
  } else {
    std::cout << "verdict: FAIL rule=" << *verdict.failedRule
              << " witness=" << *verdict.witness << "\n";
    if (a.verify) return kExitValidation;
  }
  return kExitOk;
}

// ---- validate ---------------------------------------------------------------

struct ValidateArgs {
  std::string kernel;
  std::string graphPath;
  std::string reportPath;
};

int cmd_validate(const ValidateArgs& a) {
  const Kernel kernel = kernel_from_string(a.kernel);
  const GraphInstance g = load_graph(a.graphPath);
  const nlohmann::ordered_json report = load_report(a.reportPath);
  const Kernel reported = kernel_from_report(report);
  if (reported != kernel)
    throw SpecError(std::string("report was produced by kernel ") + to_string(reported) +
                    ", not " + to_string(kernel));
  const KernelOutput out = output_from_report(report);
  const Verdict verdict = validate(kernel, g, out);
  if (!verdict.pass) {
    std::cout << "verdict: FAIL rule=" << *verdict.failedRule
              << " witness=" << *verdict.witness << "\n";
    return kExitValidation;
  }
  const std::string digest = output_digest(out);
  if (digest != digest_from_report(report)) {
    std::cout << "verdict: FAIL rule=digest witness=stored "
              << digest_from_report(report) << " != recomputed " << digest << "\n";
    return kExitValidation;
  }
  std::cout << "verdict: pass\n";
  return kExitOk;
}

// ---- sweep -------------------------------------------------------------------

struct SweepArgs {
  std::string kernel;
  std::string sizes = "8,16,32,64,128,256,512";
  std::string kinds;  // empty = all applicable
  std::string variants = "fa,fac";
  std::string clustersPolicy = "one,n";
  int seeds = 30;
  std::uint64_t seed = 0;
  bool seedGiven = false;
  int workers = 1;
  std::int64_t load = 0;
  int faulty = 0;
  std::string outDir;
};

std::string csv_field(const std::optional<std::string>& s) { return s ? *s : ""; }

int cmd_sweep(const SweepArgs& a) {
  const Kernel kernel = kernel_from_string(a.kernel);
  const std::uint64_t baseSeed = a.seedGiven ? a.seed : default_seed();
  const std::vector<int> sizes = parse_int_list(a.sizes, "--sizes");
  const std::vector<std::string> variants = parse_str_list(a.variants, "--variants");
  const std::vector<std::string> policies = parse_str_list(a.clustersPolicy, "--clusters-policy");
  if (a.seeds < 1) throw SpecError("--seeds must be >= 1");

  std::vector<GraphKind> kinds;
  if (a.kinds.empty()) {
    kinds = applicable_kinds(kernel);
  } else {
    for (const std::string& name : parse_str_list(a.kinds, "--kinds"))
      kinds.push_back(graph_kind_from_string(name));
  }

  std::filesystem::create_directories(a.outDir);
  std::string summary =
      "kernel,kind,n,seed,variant,clusters,status,failedRule,finishes,asyncs,barriers,"
      "mutexOps,messagesTotal,messagesRemote,supersteps,measuredRounds,digest\n";
  int failures = 0;

  for (GraphKind kind : kinds) {
    for (int n : sizes) {
      for (int s = 0; s < a.seeds; ++s) {
        const std::uint64_t seed = baseSeed + static_cast<std::uint64_t>(s);
        for (const std::string& variant : variants) {
          for (const std::string& policy : policies) {
            const int clusters = policy == "n" ? n : 1;
            const std::string config_key =
                std::string(to_string(kernel)) + "," + to_string(kind) + "," +
                std::to_string(n) + "," + std::to_string(seed) + "," + variant + "," +
                std::to_string(clusters);
            try {
              GeneratorSpec spec;
              spec.kind = kind;
              spec.n = n;
              spec.seed = seed;
              spec.faultyCount = kernel == Kernel::BY ? a.faulty : 0;
              complete_spec_for_kernel(spec, kernel);
              const GraphInstance g = generate(spec);

              EngineConfig cfg;
              cfg.strategy = strategy_from_string(variant);
              cfg.clusters = clusters;
              cfg.workers = a.workers;
              cfg.loadValue = a.load;
              cfg.seed = seed;

              const RunResult res = run_kernel(kernel, g, cfg);
              const Verdict verdict = validate(kernel, g, res.output);
              if (res.metrics.messagesRemote >
                      res.metrics.messagesTotal ||
                  (clusters == 1 && res.metrics.messagesRemote != 0) ||
                  (clusters == n && res.metrics.messagesRemote != res.metrics.messagesTotal))
                throw RuntimeAbort("cluster accounting violated for " + config_key);

              const std::string name =
                  std::string(to_string(kernel)) + "_" + to_string(kind) + "_n" +
                  std::to_string(n) + "_s" + std::to_string(seed) + "_" + variant + "_c" +
                  std::to_string(clusters) + ".json";
              save_report(make_report(g, cfg, res.output, res.metrics, verdict, {}),
                          (std::filesystem::path(a.outDir) / name).string());

              const Metrics& m = res.metrics;
              summary += config_key + "," + (verdict.pass ? "ok" : "fail") + "," +
                         csv_field(verdict.failedRule) + "," + std::to_string(m.finishes) +
                         "," + std::to_string(m.asyncs) + "," + std::to_string(m.barriers) +
                         "," + std::to_string(m.mutexOps) + "," +
                         std::to_string(m.messagesTotal) + "," +
                         std::to_string(m.messagesRemote) + "," +
                         std::to_string(m.supersteps) + "," +
                         std::to_string(m.measuredRounds) + "," +
                         output_digest(res.output) + "\n";
              if (!verdict.pass) ++failures;
            } catch (const Error& e) {
              std::string why = e.what();
              std::replace(why.begin(), why.end(), ',', ';');
              summary += config_key + ",abort," + why + ",,,,,,,,,\n";
              ++failures;
            }
          }
        }
      }
    }
  }

  const std::string summaryPath = (std::filesystem::path(a.outDir) / "summary.csv").string();
  std::ofstream out(summaryPath, std::ios::binary);
  if (!out) throw RuntimeAbort("cannot open for writing: " + summaryPath);
  out << summary;
  out.close();
  std::cout << "sweep complete: " << summaryPath << (failures ? " (failures recorded)" : "")
            << "\n";
  return failures == 0 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  // The verify flag is accepted under both spellings.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "-ver") arg = "--verify";
    args.push_back(std::move(arg));
  }

  CLI::App app{"round-based simulator for classical distributed kernels"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* genCmd = app.add_subcommand("gen", "generate a graph instance");
  add_spec_flags(genCmd, gen.spec, /*required=*/true);
  genCmd->add_option("--seed", gen.seed, "generator seed")->each([&](const std::string&) {
    gen.seedGiven = true;
  });
  genCmd->add_option("--graph", gen.out, "output path")->required();

  RunArgs run;
  CLI::App* runCmd = app.add_subcommand("run", "run one kernel");
  runCmd->add_option("--kernel", run.kernel, "kernel tag")->required();
  runCmd->add_option("--graph", run.graphPath, "graph file (alternative to inline spec)");
  add_spec_flags(runCmd, run.spec, /*required=*/false);
  runCmd->add_option("--seed", run.seed, "engine + generator seed")
      ->each([&](const std::string&) { run.seedGiven = true; });
  runCmd->add_option("--variant", run.variant, "fa|fac");
  runCmd->add_option("--clusters", run.clusters, "cluster count (1..n)");
  runCmd->add_option("--workers", run.workers, "worker lanes");
  runCmd->add_option("--load", run.load, "workload loadValue");
  runCmd->add_option("--report", run.reportPath, "write run report JSON");
  runCmd->add_option("--trace", run.tracePath, "write per-superstep trace (.csv/.json)");
  runCmd->add_flag("--verify", run.verify, "exit 1 when validation fails");
  runCmd->add_option("--by-votes", run.byVotes, "by initial votes: random|zero|one");
  runCmd->add_option("--by-adversary", run.byAdversary,
                     "by adversary: random|const0|const1");

  ValidateArgs val;
  CLI::App* valCmd = app.add_subcommand("validate", "re-check a stored report");
  valCmd->add_option("--kernel", val.kernel, "kernel tag")->required();
  valCmd->add_option("--graph", val.graphPath, "graph file")->required();
  valCmd->add_option("--report", val.reportPath, "report file")->required();

  SweepArgs sweep;
  CLI::App* sweepCmd = app.add_subcommand("sweep", "run a seeded cross-product");
  sweepCmd->add_option("--kernel", sweep.kernel, "kernel tag")->required();
  sweepCmd->add_option("--sizes", sweep.sizes, "comma list of node counts");
  sweepCmd->add_option("--kinds", sweep.kinds, "comma list of graph kinds");
  sweepCmd->add_option("--variants", sweep.variants, "comma list of fa|fac");
  sweepCmd->add_option("--clusters-policy", sweep.clustersPolicy,
                       "comma list of one|n cluster policies");
  sweepCmd->add_option("--seeds", sweep.seeds, "seeds per configuration");
  sweepCmd->add_option("--seed", sweep.seed, "base seed")->each([&](const std::string&) {
    sweep.seedGiven = true;
  });
  sweepCmd->add_option("--workers", sweep.workers, "worker lanes");
  sweepCmd->add_option("--load", sweep.load, "workload loadValue");
  sweepCmd->add_option("--faulty", sweep.faulty, "faulty count for by");
  sweepCmd->add_option("--out", sweep.outDir, "output directory")->required();

  std::reverse(args.begin(), args.end());  // CLI11's vector overload wants this
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (genCmd->parsed()) return cmd_gen(gen);
    if (runCmd->parsed()) return cmd_run(run);
    if (valCmd->parsed()) return cmd_validate(val);
    if (sweepCmd->parsed()) return cmd_sweep(sweep);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RuntimeAbort& e) {
    std::cerr << "abort: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "abort: " << e.what() << "\n";
    return kExitRuntime;
  }
}
