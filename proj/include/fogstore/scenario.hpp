#ifndef FOGSTORE_SCENARIO_HPP
#define FOGSTORE_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fogstore/model.hpp"
#include "fogstore/stats.hpp"

namespace fogstore {

// Parameters of the randomized system generator. Defaults reproduce the
// reference setup: 5 clouds, 3 fogs, one plain BS, a 100 MB download,
// 4G-style rates and access delays, cloud links paying twice the access
// delay. Plain BSs only relay, so they add no storage node.
struct ScenarioConfig {
  std::size_t n_cloud = 5;
  std::size_t n_fog = 3;
  std::size_t n_plain_bs = 1;
  double data_mb = 100.0;
  double cloud_ts_ms = 20.0;
  double fog_ts_ms = 50.0;
  std::array<double, 2> cloud_load_range{0.4, 0.9};
  std::array<double, 2> fog_load_range{0.2, 0.7};
  std::array<double, 2> access_link_ms_range{30.0, 100.0};
  double cloud_link_multiplier = 2.0;
  std::array<double, 2> rate_mbps_range{15.0, 72.0};
  std::uint64_t seed = 0;
};

// Throws std::domain_error naming the offending field.
void validate_config(const ScenarioConfig& config);

enum class InjectionKind { HighLatency, HighLoad, Outage };

// Degrades `count` uniformly chosen nodes. The replacement values are
// fixed by kind: link delay in [0.5, 1] s, load in [0.8, 0.95], or load
// pinned to 0.99 for an outage stand-in.
struct Injection {
  InjectionKind kind = InjectionKind::Outage;
  std::size_t count = 0;
};

// One frozen draw of the whole system. Cloud nodes come first, then fog
// nodes. Every node draws (load, link, rate) from its own substream keyed
// by (seed, run_index, tier, index-within-tier), so growing either tier
// leaves all other draws untouched; injections draw from separate
// substreams after the nodes exist.
Snapshot sample_snapshot(const ScenarioConfig& config, const std::vector<Injection>& injections,
                         std::uint64_t run_index);

// Puts everything on the node that would finish a full download first.
Allocation single_best_node(const Snapshot& snapshot);

enum class SweepParameter {
  FogCount,
  CloudCount,
  FogLoadInterval,
  CloudLoadInterval,
  GenerationSize,
  InjectionCount,
};

// Lower bounds of the preset load intervals; each spans 0.2.
inline constexpr std::array<double, 4> kLoadIntervalPresets{0.1, 0.3, 0.5, 0.7};

// Data volume of one generation packet.
inline constexpr double kPacketMb = 1.0;

struct SweepSpec {
  SweepParameter parameter = SweepParameter::FogCount;
  InjectionKind injection_kind = InjectionKind::Outage;  // used by InjectionCount only
  std::vector<double> values;
  std::size_t runs_per_value = 1;
  ScenarioConfig base;
};

struct SweepRow {
  double sweep_value = 0.0;
  Strategy strategy = Strategy::Eq;
  FiveNumberSummary stats;
  bool ok = true;
  std::string error;
};

struct SweepResult {
  SweepSpec provenance;
  std::vector<SweepRow> rows;
};

// Runs every (value, run) snapshot, scores the requested strategies, and
// aggregates per value. Rows are ordered by ascending value, then by
// strategy (Eq, Rb, Opt, Single). A value that cannot produce snapshots
// (say, zero nodes) yields error rows instead of aborting the sweep.
// Workers only split the independent runs; results do not depend on
// `workers`.
SweepResult run_sweep(const SweepSpec& spec, const std::vector<Strategy>& strategies,
                      unsigned workers = 1);

}  // namespace fogstore

#endif
