#ifndef FOGSTORE_MODEL_HPP
#define FOGSTORE_MODEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fogstore {

enum class NodeTier { Cloud, Fog };

std::string to_string(NodeTier tier);

// Raw parameters of one storage node. Times in seconds, rate in bits/s,
// load is the M/M/1 occupation rho = lambda/mu in [0, 1).
struct NodeSpec {
  NodeTier tier = NodeTier::Cloud;
  double rate_bps = 0.0;
  double link_delay_s = 0.0;
  double mean_service_time_s = 0.0;
  double load = 0.0;
};

// M/M/1 mean time to serve a request: t_s / (1 - rho).
// Throws std::domain_error outside the model's domain; load == 1 is
// rejected rather than mapped to an infinite delay.
double service_delay(double mean_service_time_s, double load);

// Link delay plus service delay: the fixed per-node overhead paid before
// payload bytes start flowing.
double request_delay(const NodeSpec& node);

// Node with its delays evaluated once at construction.
struct DerivedNode {
  NodeSpec spec;
  double service_delay_s = 0.0;
  double request_delay_s = 0.0;
};

// Validates `spec` and evaluates its delays.
DerivedNode derive_node(const NodeSpec& spec);

// One frozen system instance: the nodes and the data volume to retrieve.
// Node order is stable; alpha vectors index into it.
struct Snapshot {
  std::vector<DerivedNode> nodes;
  double data_bits = 0.0;

  std::size_t size() const { return nodes.size(); }
};

Snapshot make_snapshot(const std::vector<NodeSpec>& specs, double data_bits);

// Time node `i` needs to deliver its share: request delay plus
// alpha * data / rate.
double download_time(const DerivedNode& node, double alpha, double data_bits);

// Total download time: all nodes transmit in parallel, so the slowest
// contacted node decides. Nodes with alpha == 0 are never contacted and
// contribute nothing (an all-zero vector yields 0).
double total_download_time(const Snapshot& snapshot, std::span<const double> alphas);

enum class Strategy { Eq, Rb, Opt, Single };

std::string to_string(Strategy strategy);

// A share vector with its predicted total time. Produced by the allocator
// strategies; shares sum to 1.
struct Allocation {
  std::vector<double> alphas;
  double total_time_s = 0.0;
  Strategy strategy = Strategy::Eq;
};

// Validates the share vector against `snapshot` and fills in the total.
Allocation make_allocation(const Snapshot& snapshot, std::vector<double> alphas,
                           Strategy strategy);

}  // namespace fogstore

#endif
