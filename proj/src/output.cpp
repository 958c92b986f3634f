#include "fogstore/output.hpp"

#include <cmath>
#include <cstdio>

namespace fogstore {

namespace {

const char* kAllocationHeader =
    "node_index,tier,rate_mbps,link_ms,load,d_request_ms,alpha,t_download_s";
const char* kSweepHeader = "sweep_value,strategy,n,min,q1,median,q3,max,mean,variance";

// nan for CSV, null for JSON.
std::string json_number(double value) {
  return std::isnan(value) ? "null" : format_number(value);
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

AllocationReport make_report(const Snapshot& snapshot, const Allocation& allocation) {
  AllocationReport report;
  report.strategy = allocation.strategy;
  report.total_time_s = allocation.total_time_s;
  report.rows.reserve(snapshot.size());
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    const DerivedNode& node = snapshot.nodes[i];
    AllocationRow row;
    row.node_index = i;
    row.tier = node.spec.tier;
    row.rate_mbps = node.spec.rate_bps / 1e6;
    row.link_ms = node.spec.link_delay_s * 1e3;
    row.load = node.spec.load;
    row.d_request_ms = node.request_delay_s * 1e3;
    row.alpha = allocation.alphas[i];
    row.t_download_s = download_time(node, allocation.alphas[i], snapshot.data_bits);
    report.rows.push_back(row);
  }
  return report;
}

void write_allocation_csv(std::ostream& out, const std::vector<AllocationReport>& reports) {
  bool first = true;
  for (const AllocationReport& report : reports) {
    if (!first) out << "\n";
    first = false;
    out << "# strategy=" << to_string(report.strategy)
        << " total_time_s=" << format_number(report.total_time_s) << "\n";
    out << kAllocationHeader << "\n";
    for (const AllocationRow& row : report.rows) {
      out << row.node_index << ',' << to_string(row.tier) << ','
          << format_number(row.rate_mbps) << ',' << format_number(row.link_ms) << ','
          << format_number(row.load) << ',' << format_number(row.d_request_ms) << ','
          << format_number(row.alpha) << ',' << format_number(row.t_download_s) << "\n";
    }
  }
}

void write_allocation_json(std::ostream& out, const std::vector<AllocationReport>& reports) {
  out << "{\"blocks\":[";
  for (std::size_t b = 0; b < reports.size(); ++b) {
    const AllocationReport& report = reports[b];
    if (b) out << ',';
    out << "{\"strategy\":\"" << to_string(report.strategy) << "\",\"total_time_s\":"
        << format_number(report.total_time_s) << ",\"nodes\":[";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const AllocationRow& row = report.rows[i];
      if (i) out << ',';
      out << "{\"node_index\":" << row.node_index << ",\"tier\":\"" << to_string(row.tier)
          << "\",\"rate_mbps\":" << format_number(row.rate_mbps)
          << ",\"link_ms\":" << format_number(row.link_ms)
          << ",\"load\":" << format_number(row.load)
          << ",\"d_request_ms\":" << format_number(row.d_request_ms)
          << ",\"alpha\":" << format_number(row.alpha)
          << ",\"t_download_s\":" << format_number(row.t_download_s) << '}';
    }
    out << "]}";
  }
  out << "]}\n";
}

std::string sweep_parameter_name(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::FogCount: return "fogs";
    case SweepParameter::CloudCount: return "clouds";
    case SweepParameter::FogLoadInterval: return "fog-load";
    case SweepParameter::CloudLoadInterval: return "cloud-load";
    case SweepParameter::GenerationSize: return "gensize";
    case SweepParameter::InjectionCount: return "injection-count";
  }
  return "?";
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepHeader << "\n";
  for (const SweepRow& row : result.rows) {
    out << format_number(row.sweep_value) << ',' << to_string(row.strategy) << ','
        << row.stats.n << ',' << format_number(row.stats.min) << ','
        << format_number(row.stats.q1) << ',' << format_number(row.stats.median) << ','
        << format_number(row.stats.q3) << ',' << format_number(row.stats.max) << ','
        << format_number(row.stats.mean) << ',' << format_number(row.stats.variance) << "\n";
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& result) {
  const SweepSpec& spec = result.provenance;
  out << "{\"provenance\":{\"param\":\"" << sweep_parameter_name(spec.parameter)
      << "\",\"runs_per_value\":" << spec.runs_per_value << ",\"seed\":" << spec.base.seed
      << ",\"values\":[";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    if (i) out << ',';
    out << format_number(spec.values[i]);
  }
  out << "]},\"rows\":[";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (i) out << ',';
    out << "{\"sweep_value\":" << format_number(row.sweep_value) << ",\"strategy\":\""
        << to_string(row.strategy) << "\",\"n\":" << row.stats.n
        << ",\"min\":" << json_number(row.stats.min) << ",\"q1\":" << json_number(row.stats.q1)
        << ",\"median\":" << json_number(row.stats.median)
        << ",\"q3\":" << json_number(row.stats.q3) << ",\"max\":" << json_number(row.stats.max)
        << ",\"mean\":" << json_number(row.stats.mean)
        << ",\"variance\":" << json_number(row.stats.variance);
    if (!row.ok) out << ",\"error\":\"" << row.error << "\"";
    out << '}';
  }
  out << "]}\n";
}

}  // namespace fogstore
