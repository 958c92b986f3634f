// Command-line front end: one-shot allocation, Monte Carlo sweeps, and a
// coding round-trip demo. Data goes to stdout or the requested file; logs
// go to stderr. All randomness is derived from the seed and structural
// indices, so identical invocations produce identical bytes.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fogstore/allocator.hpp"
#include "fogstore/config.hpp"
#include "fogstore/output.hpp"
#include "fogstore/rlnc.hpp"
#include "fogstore/rng.hpp"
#include "fogstore/scenario.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitWriteFailure = 4;

// "0..10" or "1,2,5.5".
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  const auto range_sep = text.find("..");
  if (range_sep != std::string::npos) {
    const long lo = std::stol(text.substr(0, range_sep));
    const long hi = std::stol(text.substr(range_sep + 2));
    if (hi < lo) throw std::domain_error("range upper bound below lower bound");
    for (long v = lo; v <= hi; ++v) values.push_back(static_cast<double>(v));
    return values;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::domain_error("bad value: " + item);
    values.push_back(v);
  }
  if (values.empty()) throw std::domain_error("no sweep values given");
  return values;
}

struct OptimizeArgs {
  std::string config_path;
  std::string strategy = "all";
  bool msr = false;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t run = 0;
};

int cmd_optimize(const OptimizeArgs& args) {
  fogstore::ScenarioConfig config = fogstore::load_scenario_config(args.config_path);
  if (args.seed_given) config.seed = args.seed;
  const fogstore::Snapshot snapshot = fogstore::sample_snapshot(config, {}, args.run);
  const fogstore::AllocConstraints constraints{args.msr};

  std::vector<fogstore::AllocationReport> reports;
  auto add = [&](const std::string& name) {
    if (name == "eq") {
      reports.push_back(fogstore::make_report(snapshot, fogstore::alloc_equal(snapshot)));
    } else if (name == "rb") {
      reports.push_back(fogstore::make_report(snapshot, fogstore::alloc_rate(snapshot)));
    } else if (name == "opt") {
      const fogstore::OptSolution solution = fogstore::alloc_opt(snapshot, constraints);
      reports.push_back(fogstore::make_report(snapshot, solution.allocation));
    } else {
      reports.push_back(fogstore::make_report(snapshot, fogstore::single_best_node(snapshot)));
    }
  };
  if (args.strategy == "all") {
    for (const char* name : {"eq", "rb", "opt", "single"}) add(name);
  } else {
    add(args.strategy);
  }

  if (args.format == "json")
    fogstore::write_allocation_json(std::cout, reports);
  else
    fogstore::write_allocation_csv(std::cout, reports);
  return 0;
}

struct SweepArgs {
  std::string config_path;
  std::string param;
  std::string values;
  std::size_t runs = 200;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  std::string format = "csv";
  unsigned jobs = 1;
};

int cmd_sweep(const SweepArgs& args) {
  fogstore::SweepSpec spec;
  if (args.param == "fogs") {
    spec.parameter = fogstore::SweepParameter::FogCount;
  } else if (args.param == "clouds") {
    spec.parameter = fogstore::SweepParameter::CloudCount;
  } else if (args.param == "fog-load") {
    spec.parameter = fogstore::SweepParameter::FogLoadInterval;
  } else if (args.param == "cloud-load") {
    spec.parameter = fogstore::SweepParameter::CloudLoadInterval;
  } else if (args.param == "gensize") {
    spec.parameter = fogstore::SweepParameter::GenerationSize;
  } else if (args.param == "latency-nodes") {
    spec.parameter = fogstore::SweepParameter::InjectionCount;
    spec.injection_kind = fogstore::InjectionKind::HighLatency;
  } else if (args.param == "load-nodes") {
    spec.parameter = fogstore::SweepParameter::InjectionCount;
    spec.injection_kind = fogstore::InjectionKind::HighLoad;
  } else if (args.param == "outage-nodes") {
    spec.parameter = fogstore::SweepParameter::InjectionCount;
    spec.injection_kind = fogstore::InjectionKind::Outage;
  } else {
    throw std::domain_error("unknown sweep parameter: " + args.param);
  }

  spec.base = fogstore::load_scenario_config(args.config_path);
  if (args.seed_given) spec.base.seed = args.seed;
  spec.values = parse_values(args.values);
  spec.runs_per_value = args.runs;

  const auto started = std::chrono::steady_clock::now();
  const fogstore::SweepResult result = fogstore::run_sweep(
      spec, {fogstore::Strategy::Eq, fogstore::Strategy::Rb, fogstore::Strategy::Opt},
      args.jobs);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write output file: " << args.out_path << "\n";
    return kExitWriteFailure;
  }
  if (args.format == "json")
    fogstore::write_sweep_json(out, result);
  else
    fogstore::write_sweep_csv(out, result);
  out.flush();
  if (!out) {
    std::cerr << "cannot write output file: " << args.out_path << "\n";
    return kExitWriteFailure;
  }
  std::cerr << args.out_path << " written in " << fogstore::format_number(elapsed) << " s\n";
  return 0;
}

struct RlncArgs {
  std::size_t packets = 0;
  std::size_t size = 1024;
  unsigned field = 256;
  std::size_t extra = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

int cmd_rlnc(const RlncArgs& args) {
  unsigned q = 0;
  switch (args.field) {
    case 2: q = 1; break;
    case 16: q = 4; break;
    case 256: q = 8; break;
    default: throw std::domain_error("field must be one of 2, 16, 256");
  }
  if (args.packets == 0) throw std::domain_error("packets must be at least 1");
  if (args.size == 0) throw std::domain_error("size must be at least 1");

  fogstore::SplitMix64 rng(fogstore::derive_stream({args.seed, 0}));
  const fogstore::Generation generation =
      fogstore::random_generation(args.packets, args.size, q, rng);
  const std::vector<fogstore::CodedPacket> coded =
      fogstore::encode(generation, args.packets + args.extra, rng);
  const fogstore::DecodeResult decoded = fogstore::decode(coded, args.packets, q);
  const bool recovered =
      decoded.generation && decoded.generation->packets == generation.packets;

  std::cout << "{\"packets\":" << args.packets << ",\"field\":" << args.field
            << ",\"packet_bytes\":" << args.size << ",\"extra\":" << args.extra
            << ",\"seed\":" << args.seed << ",\"rank\":" << decoded.rank
            << ",\"full_rank\":" << (decoded.generation ? "true" : "false")
            << ",\"decode_ok\":" << (recovered ? "true" : "false");
  if (args.trials > 0) {
    std::size_t successes = 0;
    for (std::size_t trial = 0; trial < args.trials; ++trial) {
      fogstore::SplitMix64 trial_rng(fogstore::derive_stream({args.seed, 1, trial}));
      const fogstore::Generation g =
          fogstore::random_generation(args.packets, args.size, q, trial_rng);
      const auto packets = fogstore::encode(g, args.packets, trial_rng);
      const auto result = fogstore::decode(packets, args.packets, q);
      if (result.generation && result.generation->packets == g.packets) ++successes;
    }
    const double empirical =
        static_cast<double>(successes) / static_cast<double>(args.trials);
    std::cout << ",\"trials\":" << args.trials
              << ",\"empirical_rate\":" << fogstore::format_number(empirical)
              << ",\"analytic_rate\":"
              << fogstore::format_number(fogstore::full_rank_probability(args.packets, q));
  }
  std::cout << "}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"download-time-optimal data placement for fog/cloud coded storage"};
  app.require_subcommand(1);

  OptimizeArgs optimize;
  CLI::App* opt_cmd =
      app.add_subcommand("optimize", "allocate one snapshot under the chosen strategies");
  opt_cmd->add_option("--config", optimize.config_path, "scenario config (JSON)")->required();
  opt_cmd->add_option("--strategy", optimize.strategy, "eq|rb|opt|single|all")
      ->check(CLI::IsMember({"eq", "rb", "opt", "single", "all"}));
  opt_cmd->add_flag("--msr", optimize.msr, "enforce the one-failure storage lower bound");
  opt_cmd->add_option("--format", optimize.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  opt_cmd->add_option("--seed", optimize.seed, "override the config seed");
  opt_cmd->add_option("--run", optimize.run, "run index used to derive the snapshot");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over one parameter");
  sweep_cmd->add_option("--config", sweep.config_path, "scenario config (JSON)")->required();
  sweep_cmd
      ->add_option("--param", sweep.param,
                   "fogs|clouds|fog-load|cloud-load|gensize|latency-nodes|load-nodes|outage-nodes")
      ->required();
  sweep_cmd->add_option("--values", sweep.values, "comma list or lo..hi range")->required();
  sweep_cmd->add_option("--runs", sweep.runs, "snapshots per value")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep.seed, "override the config seed");
  sweep_cmd->add_option("--out", sweep.out_path, "output file")->required();
  sweep_cmd->add_option("--format", sweep.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads")->check(CLI::PositiveNumber);

  RlncArgs rlnc;
  CLI::App* rlnc_cmd = app.add_subcommand("rlnc", "encode/decode round trip and rank report");
  rlnc_cmd->add_option("--packets", rlnc.packets, "generation size M")->required();
  rlnc_cmd->add_option("--size", rlnc.size, "packet size in bytes");
  rlnc_cmd->add_option("--field", rlnc.field, "field size: 2, 16 or 256");
  rlnc_cmd->add_option("--extra", rlnc.extra, "coded packets beyond M");
  rlnc_cmd->add_option("--seed", rlnc.seed, "rng seed");
  rlnc_cmd->add_option("--trials", rlnc.trials, "Monte Carlo full-rank trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  optimize.seed_given = opt_cmd->count("--seed") > 0;
  sweep.seed_given = sweep_cmd->count("--seed") > 0;

  try {
    if (*opt_cmd) return cmd_optimize(optimize);
    if (*sweep_cmd) return cmd_sweep(sweep);
    return cmd_rlnc(rlnc);
  } catch (const fogstore::InfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
}
