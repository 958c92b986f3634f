#include "fogstore/model.hpp"

#include <cmath>
#include <stdexcept>

namespace fogstore {

std::string to_string(NodeTier tier) {
  return tier == NodeTier::Cloud ? "cloud" : "fog";
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Eq: return "Eq";
    case Strategy::Rb: return "Rb";
    case Strategy::Opt: return "Opt";
    case Strategy::Single: return "Single";
  }
  return "?";
}

double service_delay(double mean_service_time_s, double load) {
  if (!(mean_service_time_s > 0.0))
    throw std::domain_error("mean_service_time_s must be positive");
  if (!(load >= 0.0 && load < 1.0))
    throw std::domain_error("load outside [0,1)");
  return mean_service_time_s / (1.0 - load);
}

double request_delay(const NodeSpec& node) {
  if (!(node.link_delay_s >= 0.0))
    throw std::domain_error("link_delay_s must be non-negative");
  return node.link_delay_s + service_delay(node.mean_service_time_s, node.load);
}

DerivedNode derive_node(const NodeSpec& spec) {
  if (!(spec.rate_bps > 0.0)) throw std::domain_error("rate_bps must be positive");
  DerivedNode node;
  node.spec = spec;
  node.service_delay_s = service_delay(spec.mean_service_time_s, spec.load);
  node.request_delay_s = spec.link_delay_s + node.service_delay_s;
  return node;
}

Snapshot make_snapshot(const std::vector<NodeSpec>& specs, double data_bits) {
  if (specs.empty()) throw std::domain_error("snapshot needs at least one node");
  if (!(data_bits > 0.0)) throw std::domain_error("data_bits must be positive");
  Snapshot snapshot;
  snapshot.nodes.reserve(specs.size());
  for (const NodeSpec& spec : specs) snapshot.nodes.push_back(derive_node(spec));
  snapshot.data_bits = data_bits;
  return snapshot;
}

double download_time(const DerivedNode& node, double alpha, double data_bits) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("alpha outside [0,1]");
  if (!(data_bits > 0.0)) throw std::domain_error("data_bits must be positive");
  return node.request_delay_s + alpha * data_bits / node.spec.rate_bps;
}

double total_download_time(const Snapshot& snapshot, std::span<const double> alphas) {
  if (alphas.size() != snapshot.nodes.size())
    throw std::domain_error("alpha vector length does not match node count");
  double total = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] == 0.0) continue;
    total = std::max(total, download_time(snapshot.nodes[i], alphas[i], snapshot.data_bits));
  }
  return total;
}

Allocation make_allocation(const Snapshot& snapshot, std::vector<double> alphas,
                           Strategy strategy) {
  if (alphas.size() != snapshot.nodes.size())
    throw std::domain_error("alpha vector length does not match node count");
  double sum = 0.0;
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("alpha outside [0,1]");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("alphas must sum to 1");
  Allocation allocation;
  allocation.total_time_s = total_download_time(snapshot, alphas);
  allocation.alphas = std::move(alphas);
  allocation.strategy = strategy;
  return allocation;
}

}  // namespace fogstore
