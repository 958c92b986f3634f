#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fogstore/allocator.hpp"
#include "fogstore/rng.hpp"
#include "test_util.hpp"

using namespace fogstore;

namespace {

// Full lattice enumeration, no shortcuts. Validates oracle_opt itself on
// small grids; everything is scored through total_download_time.
Allocation enumerate_grid(const Snapshot& snapshot, int grid_steps) {
  const std::size_t n = snapshot.size();
  const double g = grid_steps;
  std::vector<long> units(n, 0);
  std::vector<double> alphas(n, 0.0);
  std::vector<double> best_alphas;
  double best = std::numeric_limits<double>::infinity();

  auto visit = [&](auto&& self, std::size_t depth, long budget) -> void {
    if (depth + 1 == n) {
      units[depth] = budget;
      for (std::size_t i = 0; i < n; ++i) alphas[i] = static_cast<double>(units[i]) / g;
      const double value = total_download_time(snapshot, alphas);
      if (value < best) {
        best = value;
        best_alphas = alphas;
      }
      return;
    }
    for (long k = 0; k <= budget; ++k) {
      units[depth] = k;
      self(self, depth + 1, budget - k);
    }
  };
  visit(visit, 0, grid_steps);
  return make_allocation(snapshot, best_alphas, Strategy::Opt);
}

Snapshot two_node_instance() {
  // b = [0.1, 0.5] s and a = 1 s for both (10e6 bits at 10e6 bps).
  return make_snapshot({testutil::node_with_delay(0.1, 10e6),
                        testutil::node_with_delay(0.5, 10e6)},
                       10e6);
}

}  // namespace

TEST_CASE("alloc_equal splits evenly") {
  SplitMix64 rng(1);
  const Snapshot eight = testutil::random_snapshot(rng, 8);
  const Allocation a8 = alloc_equal(eight);
  for (double alpha : a8.alphas) CHECK(alpha == 0.125);
  CHECK(a8.strategy == Strategy::Eq);
  CHECK(a8.total_time_s ==
        doctest::Approx(total_download_time(eight, a8.alphas)).epsilon(1e-12));

  const Snapshot one = testutil::random_snapshot(rng, 1);
  CHECK(alloc_equal(one).alphas == std::vector<double>{1.0});

  const Snapshot four = testutil::random_snapshot(rng, 4);
  for (double alpha : alloc_equal(four).alphas) CHECK(alpha == 0.25);
}

TEST_CASE("alloc_rate normalizes by rate") {
  const Snapshot snapshot = make_snapshot({testutil::node_with_delay(0.1, 30e6),
                                           testutil::node_with_delay(0.1, 10e6)},
                                          10e6);
  const Allocation allocation = alloc_rate(snapshot);
  CHECK(allocation.alphas[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(allocation.alphas[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(allocation.strategy == Strategy::Rb);
}

TEST_CASE("alloc_rate with equal rates reduces to alloc_equal exactly") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 7;
    const double rate = rng.uniform(15e6, 72e6);
    std::vector<NodeSpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
      NodeSpec spec = testutil::random_node(rng);
      spec.rate_bps = rate;
      specs.push_back(spec);
    }
    const Snapshot snapshot = make_snapshot(specs, 8e8);
    CHECK(alloc_rate(snapshot).alphas == alloc_equal(snapshot).alphas);
  }
}

TEST_CASE("alloc_rate ordering follows the rate ordering") {
  SplitMix64 rng(3);
  const Snapshot snapshot = testutil::random_snapshot(rng, 8);
  const Allocation allocation = alloc_rate(snapshot);
  double sum = 0.0;
  for (double a : allocation.alphas) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (snapshot.nodes[i].spec.rate_bps > snapshot.nodes[j].spec.rate_bps)
        CHECK(allocation.alphas[i] > allocation.alphas[j]);
}

TEST_CASE("alloc_opt equalizes two identical nodes") {
  const Snapshot snapshot = make_snapshot({testutil::node_with_delay(0.2, 20e6),
                                           testutil::node_with_delay(0.2, 20e6)},
                                          10e6);
  const OptSolution solution = alloc_opt(snapshot);
  CHECK(solution.allocation.alphas[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(solution.allocation.alphas[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("alloc_opt solves the two-node instance exactly") {
  const OptSolution solution = alloc_opt(two_node_instance());
  CHECK(solution.t_star == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(solution.allocation.alphas[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(solution.allocation.alphas[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(solution.allocation.total_time_s == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(solution.active_set == std::vector<std::size_t>{0, 1});
  CHECK(solution.kkt_residual <= 1e-9);
}

TEST_CASE("alloc_opt drops a node that is too slow to help") {
  std::vector<NodeSpec> specs;
  SplitMix64 rng(5);
  for (int i = 0; i < 7; ++i) {
    NodeSpec spec = testutil::random_node(rng);
    spec.load = std::min(spec.load, 0.7);
    // Keep the healthy nodes fast enough that the water level stays
    // below the slow node's request delay.
    spec.rate_bps = rng.uniform(40e6, 72e6);
    specs.push_back(spec);
  }
  NodeSpec outage;
  outage.tier = NodeTier::Fog;
  outage.rate_bps = 40e6;
  outage.link_delay_s = 0.05;
  outage.mean_service_time_s = 0.05;
  outage.load = 0.99;  // 5 s service delay
  specs.insert(specs.begin() + 3, outage);

  const Snapshot snapshot = make_snapshot(specs, 8e8);
  const OptSolution solution = alloc_opt(snapshot);
  REQUIRE(solution.t_star < 5.0);
  CHECK(solution.allocation.alphas[3] == 0.0);
  CHECK(std::find(solution.excluded_set.begin(), solution.excluded_set.end(), 3) !=
        solution.excluded_set.end());
}

TEST_CASE("alloc_opt index sets partition the nodes") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 10;
    const Snapshot snapshot = testutil::random_snapshot(rng, n, rng.uniform(1e6, 2e9));
    const OptSolution solution = alloc_opt(snapshot);
    std::vector<bool> seen(n, false);
    for (const auto& set :
         {solution.active_set, solution.saturated_set, solution.excluded_set}) {
      for (std::size_t index : set) {
        CHECK_FALSE(seen[index]);
        seen[index] = true;
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("optimum dominates the other strategies") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 10;
    const Snapshot snapshot = testutil::random_snapshot(rng, n);
    const double opt = alloc_opt(snapshot).allocation.total_time_s;
    CHECK(opt <= alloc_rate(snapshot).total_time_s + 1e-9);
    CHECK(opt <= alloc_equal(snapshot).total_time_s + 1e-9);
  }
}

TEST_CASE("active nodes equalize and excluded nodes are too slow") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 10;
    const Snapshot snapshot = testutil::random_snapshot(rng, n, rng.uniform(1e7, 2e9));
    const OptSolution solution = alloc_opt(snapshot);
    for (std::size_t i : solution.active_set) {
      const double finish =
          download_time(snapshot.nodes[i], solution.allocation.alphas[i], snapshot.data_bits);
      CHECK(std::abs(finish - solution.t_star) <= 1e-9);
    }
    for (std::size_t i : solution.excluded_set)
      CHECK(snapshot.nodes[i].request_delay_s >= solution.t_star - 1e-9);
    for (std::size_t i : solution.saturated_set)
      CHECK(download_time(snapshot.nodes[i], 1.0, snapshot.data_bits) <=
            solution.t_star + 1e-9);
  }
}

TEST_CASE("appending a node never increases the optimum") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 8;
    std::vector<NodeSpec> specs;
    for (std::size_t i = 0; i < n; ++i) specs.push_back(testutil::random_node(rng));
    const Snapshot before = make_snapshot(specs, 8e8);
    specs.push_back(testutil::random_node(rng));
    const Snapshot after = make_snapshot(specs, 8e8);
    CHECK(alloc_opt(after).t_star <= alloc_opt(before).t_star + 1e-12);
  }
}

TEST_CASE("equal request delays make shares scale-invariant") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 6;
    std::vector<NodeSpec> specs;
    for (std::size_t i = 0; i < n; ++i) {
      NodeSpec spec = testutil::node_with_delay(0.1, rng.uniform(15e6, 72e6));
      specs.push_back(spec);
    }
    const double data = rng.uniform(1e7, 1e9);
    const double factor = rng.uniform(1.5, 10.0);
    const OptSolution base = alloc_opt(make_snapshot(specs, data));
    const OptSolution scaled = alloc_opt(make_snapshot(specs, data * factor));
    for (std::size_t i = 0; i < n; ++i)
      CHECK(scaled.allocation.alphas[i] ==
            doctest::Approx(base.allocation.alphas[i]).epsilon(1e-9));
  }
}

TEST_CASE("scaling the data volume preserves dominance and the certificate") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 6;
    Snapshot snapshot = testutil::random_snapshot(rng, n, rng.uniform(1e7, 5e8));
    const Snapshot scaled = make_snapshot(
        [&] {
          std::vector<NodeSpec> specs;
          for (const auto& node : snapshot.nodes) specs.push_back(node.spec);
          return specs;
        }(),
        snapshot.data_bits * 3.0);
    const OptSolution solution = alloc_opt(scaled);
    CHECK(solution.kkt_residual <= 1e-9);
    CHECK(solution.allocation.total_time_s <= alloc_rate(scaled).total_time_s + 1e-9);
    CHECK(solution.allocation.total_time_s <= alloc_equal(scaled).total_time_s + 1e-9);
  }
}

TEST_CASE("kkt_residuals certifies the exact solution and flags others") {
  const Snapshot snapshot = two_node_instance();
  const OptSolution solution = alloc_opt(snapshot);
  CHECK(kkt_residuals(snapshot, solution.allocation.alphas, solution.t_star) <= 1e-12);

  // Equal split on an asymmetric instance cannot equalize.
  const std::vector<double> equal{0.5, 0.5};
  const double t_equal = total_download_time(snapshot, equal);
  CHECK(kkt_residuals(snapshot, equal, t_equal) > 1e-6);

  const Snapshot single = make_snapshot({testutil::node_with_delay(0.1, 10e6)}, 10e6);
  const std::vector<double> full{1.0};
  CHECK(kkt_residuals(single, full, total_download_time(single, full)) <= 1e-12);
}

TEST_CASE("kkt_residuals validates its inputs") {
  const Snapshot snapshot = two_node_instance();
  const std::vector<double> short_vector{1.0};
  CHECK_THROWS_AS(kkt_residuals(snapshot, short_vector, 1.0), std::domain_error);
  const std::vector<double> bad_sum{0.9, 0.9};
  CHECK_THROWS_AS(kkt_residuals(snapshot, bad_sum, 1.0), std::domain_error);
}

TEST_CASE("water-filling stays exact on wide systems") {
  SplitMix64 rng(47);
  const Snapshot snapshot = testutil::random_snapshot(rng, 200, 4e9);
  const OptSolution solution = alloc_opt(snapshot);
  CHECK(solution.kkt_residual <= 1e-9);
  CHECK(solution.allocation.total_time_s <= alloc_rate(snapshot).total_time_s + 1e-9);
  CHECK(solution.allocation.total_time_s <= alloc_equal(snapshot).total_time_s + 1e-9);
  double sum = 0.0;
  for (double a : solution.allocation.alphas) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strategies reject a node-less snapshot") {
  const Snapshot empty;
  CHECK_THROWS_AS(alloc_equal(empty), std::domain_error);
  CHECK_THROWS_AS(alloc_rate(empty), std::domain_error);
  CHECK_THROWS_AS(alloc_opt(empty), std::domain_error);
  CHECK_THROWS_AS(oracle_opt(empty, 1000), std::domain_error);
}

TEST_CASE("msr lower bound is infeasible under a unit total share") {
  SplitMix64 rng(29);
  const AllocConstraints msr{true};
  CHECK_THROWS_AS(alloc_opt(testutil::random_snapshot(rng, 1), msr), std::domain_error);
  // 1/(N-1) per node sums to N/(N-1) > 1 for every N >= 2.
  for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{8}})
    CHECK_THROWS_AS(alloc_opt(testutil::random_snapshot(rng, n), msr), InfeasibleError);
}

TEST_CASE("oracle_opt matches a blind full enumeration on small grids") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 4;
    const Snapshot snapshot = testutil::random_snapshot(rng, n, rng.uniform(1e7, 1e9));
    const Allocation fast = oracle_opt(snapshot, 100);
    const Allocation blind = enumerate_grid(snapshot, 100);
    CHECK(fast.total_time_s == doctest::Approx(blind.total_time_s).epsilon(1e-12));
  }
}

TEST_CASE("oracle_opt brackets the two-node optimum at grid resolution") {
  const Snapshot snapshot = two_node_instance();
  const Allocation oracle = oracle_opt(snapshot, 1000);
  CHECK(std::abs(oracle.total_time_s - 0.8) <= 1e-3);

  const Snapshot symmetric = make_snapshot({testutil::node_with_delay(0.2, 20e6),
                                            testutil::node_with_delay(0.2, 20e6)},
                                           10e6);
  const Allocation pair = oracle_opt(symmetric, 1000);
  CHECK(std::abs(pair.alphas[0] - 0.5) <= 1e-3);

  SplitMix64 rng(37);
  const Allocation one = oracle_opt(testutil::random_snapshot(rng, 1), 1000);
  CHECK(one.alphas == std::vector<double>{1.0});
}

TEST_CASE("oracle_opt refuses what it cannot enumerate") {
  SplitMix64 rng(41);
  CHECK_THROWS_AS(oracle_opt(testutil::random_snapshot(rng, 5), 1000), std::domain_error);
  CHECK_THROWS_AS(oracle_opt(testutil::random_snapshot(rng, 2), 99), std::domain_error);
}

TEST_CASE("oracle and water-filling agree within the grid resolution") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 4;
    const Snapshot snapshot = testutil::random_snapshot(rng, n, rng.uniform(1e7, 1e9));
    const OptSolution exact = alloc_opt(snapshot);
    const Allocation grid = oracle_opt(snapshot, 1000);
    double max_slope = 0.0;
    for (const auto& node : snapshot.nodes)
      max_slope = std::max(max_slope, snapshot.data_bits / node.spec.rate_bps);
    CHECK(grid.total_time_s >= exact.t_star - 1e-9);
    CHECK(grid.total_time_s - exact.t_star <= max_slope / 1000.0 + 1e-9);
  }
}
