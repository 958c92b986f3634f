#ifndef FOGSTORE_OUTPUT_HPP
#define FOGSTORE_OUTPUT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "fogstore/model.hpp"
#include "fogstore/scenario.hpp"

namespace fogstore {

// Fixed row schema for allocation listings; one row per node. Rates in
// Mbps and delays in ms to match the configuration units, times in
// seconds. t_download_s is the per-node request-plus-transfer time at the
// listed alpha, so an idle node shows just its request delay (which is
// why it can exceed the block total when the optimizer dropped it).
struct AllocationRow {
  std::size_t node_index = 0;
  NodeTier tier = NodeTier::Cloud;
  double rate_mbps = 0.0;
  double link_ms = 0.0;
  double load = 0.0;
  double d_request_ms = 0.0;
  double alpha = 0.0;
  double t_download_s = 0.0;
};

struct AllocationReport {
  Strategy strategy = Strategy::Eq;
  double total_time_s = 0.0;
  std::vector<AllocationRow> rows;
};

AllocationReport make_report(const Snapshot& snapshot, const Allocation& allocation);

// Numbers are printed with 6 significant digits ("%.6g") in both formats
// so the two encodings of one run carry identical values.
std::string format_number(double value);

// One block per report: a '# strategy=... total_time_s=...' comment line,
// the fixed header, then the rows.
void write_allocation_csv(std::ostream& out, const std::vector<AllocationReport>& reports);
void write_allocation_json(std::ostream& out, const std::vector<AllocationReport>& reports);

// Sweep rows: sweep_value,strategy,n,min,q1,median,q3,max,mean,variance.
// Error rows keep the schema with nan statistics (null in JSON).
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_json(std::ostream& out, const SweepResult& result);

std::string sweep_parameter_name(SweepParameter parameter);

}  // namespace fogstore

#endif
