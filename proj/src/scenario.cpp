#include "fogstore/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fogstore/allocator.hpp"
#include "fogstore/rng.hpp"

namespace fogstore {

namespace {

constexpr std::uint64_t kCloudTag = 1;
constexpr std::uint64_t kFogTag = 2;
constexpr std::uint64_t kInjectTag = 3;

constexpr double kMbToBits = 8e6;

void check_range(const std::array<double, 2>& range, const char* name) {
  if (!(range[0] <= range[1]))
    throw std::domain_error(std::string(name) + ": lo must not exceed hi");
}

void check_load_range(const std::array<double, 2>& range, const char* name) {
  check_range(range, name);
  if (!(range[0] >= 0.0 && range[1] < 1.0))
    throw std::domain_error(std::string(name) + ": loads must stay in [0,1)");
}

}  // namespace

void validate_config(const ScenarioConfig& config) {
  if (!(config.data_mb > 0.0)) throw std::domain_error("data_mb must be positive");
  if (!(config.cloud_ts_ms > 0.0)) throw std::domain_error("cloud_ts_ms must be positive");
  if (!(config.fog_ts_ms > 0.0)) throw std::domain_error("fog_ts_ms must be positive");
  if (!(config.cloud_link_multiplier > 0.0))
    throw std::domain_error("cloud_link_multiplier must be positive");
  check_load_range(config.cloud_load_range, "cloud_load_range");
  check_load_range(config.fog_load_range, "fog_load_range");
  check_range(config.access_link_ms_range, "access_link_ms_range");
  if (!(config.access_link_ms_range[0] >= 0.0))
    throw std::domain_error("access_link_ms_range: delays must be non-negative");
  check_range(config.rate_mbps_range, "rate_mbps_range");
  if (!(config.rate_mbps_range[0] > 0.0))
    throw std::domain_error("rate_mbps_range: rates must be positive");
}

Snapshot sample_snapshot(const ScenarioConfig& config, const std::vector<Injection>& injections,
                         std::uint64_t run_index) {
  validate_config(config);
  const std::size_t n = config.n_cloud + config.n_fog;
  if (n == 0) throw std::domain_error("n_cloud + n_fog must be at least 1");

  std::vector<NodeSpec> specs;
  specs.reserve(n);
  for (std::size_t tier_index = 0; tier_index < n; ++tier_index) {
    const bool cloud = tier_index < config.n_cloud;
    const std::size_t within = cloud ? tier_index : tier_index - config.n_cloud;
    SplitMix64 rng(derive_stream(
        {config.seed, run_index, cloud ? kCloudTag : kFogTag, within}));
    NodeSpec spec;
    spec.tier = cloud ? NodeTier::Cloud : NodeTier::Fog;
    const auto& load_range = cloud ? config.cloud_load_range : config.fog_load_range;
    spec.load = rng.uniform(load_range[0], load_range[1]);
    const double access_ms =
        rng.uniform(config.access_link_ms_range[0], config.access_link_ms_range[1]);
    spec.link_delay_s = access_ms / 1e3 * (cloud ? config.cloud_link_multiplier : 1.0);
    spec.rate_bps = rng.uniform(config.rate_mbps_range[0], config.rate_mbps_range[1]) * 1e6;
    spec.mean_service_time_s = (cloud ? config.cloud_ts_ms : config.fog_ts_ms) / 1e3;
    specs.push_back(spec);
  }

  for (std::size_t j = 0; j < injections.size(); ++j) {
    const Injection& injection = injections[j];
    if (injection.count > n) throw std::domain_error("injection count exceeds node count");
    if (injection.count == 0) continue;
    SplitMix64 rng(derive_stream({config.seed, run_index, kInjectTag, j}));
    // Partial Fisher-Yates over the node indices picks the targets.
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    for (std::size_t i = 0; i < injection.count; ++i)
      std::swap(indices[i], indices[i + rng.below(n - i)]);
    std::vector<std::size_t> targets(indices.begin(), indices.begin() + injection.count);
    std::sort(targets.begin(), targets.end());
    for (std::size_t target : targets) {
      switch (injection.kind) {
        case InjectionKind::HighLatency:
          specs[target].link_delay_s = rng.uniform(0.5, 1.0);
          break;
        case InjectionKind::HighLoad:
          specs[target].load = rng.uniform(0.8, 0.95);
          break;
        case InjectionKind::Outage:
          specs[target].load = 0.99;
          break;
      }
    }
  }

  return make_snapshot(specs, config.data_mb * kMbToBits);
}

Allocation single_best_node(const Snapshot& snapshot) {
  if (snapshot.nodes.empty()) throw std::domain_error("snapshot has no nodes");
  std::size_t best = 0;
  double best_time = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    const double full = download_time(snapshot.nodes[i], 1.0, snapshot.data_bits);
    if (full < best_time) {
      best_time = full;
      best = i;
    }
  }
  std::vector<double> alphas(snapshot.size(), 0.0);
  alphas[best] = 1.0;
  return make_allocation(snapshot, std::move(alphas), Strategy::Single);
}

namespace {

struct ResolvedValue {
  ScenarioConfig config;
  std::vector<Injection> injections;
  bool ok = true;
  std::string error;
};

bool integral_value(double value, std::size_t& out) {
  if (!(value >= 0.0) || value != std::floor(value) || value > 1e9) return false;
  out = static_cast<std::size_t>(value);
  return true;
}

ResolvedValue resolve_sweep_value(const SweepSpec& spec, double value) {
  ResolvedValue resolved;
  resolved.config = spec.base;
  switch (spec.parameter) {
    case SweepParameter::FogCount: {
      std::size_t count = 0;
      if (!integral_value(value, count)) return {spec.base, {}, false, "fog count must be a non-negative integer"};
      resolved.config.n_fog = count;
      break;
    }
    case SweepParameter::CloudCount: {
      std::size_t count = 0;
      if (!integral_value(value, count)) return {spec.base, {}, false, "cloud count must be a non-negative integer"};
      resolved.config.n_cloud = count;
      break;
    }
    case SweepParameter::FogLoadInterval:
    case SweepParameter::CloudLoadInterval: {
      const bool preset =
          std::any_of(kLoadIntervalPresets.begin(), kLoadIntervalPresets.end(),
                      [&](double lo) { return std::abs(lo - value) < 1e-9; });
      if (!preset)
        return {spec.base, {}, false, "load interval must start at one of 0.1, 0.3, 0.5, 0.7"};
      const std::array<double, 2> range{value, value + 0.2};
      if (spec.parameter == SweepParameter::FogLoadInterval)
        resolved.config.fog_load_range = range;
      else
        resolved.config.cloud_load_range = range;
      break;
    }
    case SweepParameter::GenerationSize: {
      std::size_t packets = 0;
      if (!integral_value(value, packets) || packets == 0)
        return {spec.base, {}, false, "generation size must be a positive integer"};
      resolved.config.data_mb = static_cast<double>(packets) * kPacketMb;
      break;
    }
    case SweepParameter::InjectionCount: {
      std::size_t count = 0;
      if (!integral_value(value, count))
        return {spec.base, {}, false, "injection count must be a non-negative integer"};
      resolved.injections.push_back({spec.injection_kind, count});
      break;
    }
  }
  if (resolved.config.n_cloud + resolved.config.n_fog == 0)
    return {spec.base, {}, false, "n_cloud + n_fog must be at least 1"};
  for (const Injection& injection : resolved.injections) {
    if (injection.count > resolved.config.n_cloud + resolved.config.n_fog)
      return {spec.base, {}, false, "injection count exceeds node count"};
  }
  resolved.ok = true;
  return resolved;
}

double strategy_time(const Snapshot& snapshot, Strategy strategy) {
  switch (strategy) {
    case Strategy::Eq: return alloc_equal(snapshot).total_time_s;
    case Strategy::Rb: return alloc_rate(snapshot).total_time_s;
    case Strategy::Opt: return alloc_opt(snapshot).allocation.total_time_s;
    case Strategy::Single: return single_best_node(snapshot).total_time_s;
  }
  throw std::logic_error("unknown strategy");
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const std::vector<Strategy>& strategies,
                      unsigned workers) {
  if (spec.values.empty()) throw std::domain_error("sweep needs at least one value");
  if (spec.runs_per_value == 0) throw std::domain_error("runs_per_value must be at least 1");
  if (strategies.empty()) throw std::domain_error("sweep needs at least one strategy");
  validate_config(spec.base);
  if (workers == 0) workers = 1;

  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());

  std::vector<Strategy> ordered;
  for (Strategy s : {Strategy::Eq, Strategy::Rb, Strategy::Opt, Strategy::Single})
    if (std::find(strategies.begin(), strategies.end(), s) != strategies.end())
      ordered.push_back(s);

  std::vector<ResolvedValue> resolved;
  resolved.reserve(values.size());
  for (double value : values) resolved.push_back(resolve_sweep_value(spec, value));

  // samples[value][strategy][run]; filled by index so worker count and
  // scheduling cannot change the result.
  const std::size_t runs = spec.runs_per_value;
  std::vector<std::vector<std::vector<double>>> samples(
      values.size(),
      std::vector<std::vector<double>>(ordered.size(), std::vector<double>(runs, 0.0)));

  std::vector<std::size_t> live;
  for (std::size_t v = 0; v < values.size(); ++v)
    if (resolved[v].ok) live.push_back(v);

  const std::size_t total_jobs = live.size() * runs;
  std::atomic<std::size_t> next_job{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  auto work = [&]() {
    for (;;) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= total_jobs || failed.load()) break;
      const std::size_t v = live[job / runs];
      const std::size_t run = job % runs;
      try {
        const Snapshot snapshot =
            sample_snapshot(resolved[v].config, resolved[v].injections, run);
        for (std::size_t s = 0; s < ordered.size(); ++s)
          samples[v][s][run] = strategy_time(snapshot, ordered[s]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure_message = e.what();
        failed.store(true);
      }
    }
  };

  if (workers == 1 || total_jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const unsigned count = std::min<std::size_t>(workers, total_jobs);
    pool.reserve(count);
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
  }
  if (failed.load()) throw std::runtime_error("sweep run failed: " + failure_message);

  SweepResult result;
  result.provenance = spec;
  result.provenance.values = values;
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t s = 0; s < ordered.size(); ++s) {
      SweepRow row;
      row.sweep_value = values[v];
      row.strategy = ordered[s];
      if (resolved[v].ok) {
        row.stats = summarize(samples[v][s]);
      } else {
        row.ok = false;
        row.error = resolved[v].error;
        row.stats = FiveNumberSummary{};
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.stats.min = row.stats.q1 = row.stats.median = row.stats.q3 = row.stats.max = nan;
        row.stats.mean = row.stats.variance = nan;
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace fogstore
