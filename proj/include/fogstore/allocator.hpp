#ifndef FOGSTORE_ALLOCATOR_HPP
#define FOGSTORE_ALLOCATOR_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fogstore/model.hpp"

namespace fogstore {

// Raised when the requested constraints admit no share vector summing to 1.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optional side constraints for alloc_opt. The MSR bound requires every
// node to hold at least 1/(N-1) of the data so the system survives one
// node failure; it is off by default because the download problem itself
// does not impose it.
struct AllocConstraints {
  bool msr_lower_bound = false;
};

// Exact minimizer of the min-max download problem, with the certificate
// material needed to audit it.
struct OptSolution {
  Allocation allocation;
  double t_star = 0.0;                      // the equalized time level
  std::vector<std::size_t> active_set;      // lower bound < alpha < 1
  std::vector<std::size_t> saturated_set;   // alpha == 1
  std::vector<std::size_t> excluded_set;    // alpha == lower bound
  double kkt_residual = 0.0;
};

// Even split: alpha_i = 1/N.
Allocation alloc_equal(const Snapshot& snapshot);

// Rate-proportional split: alpha_i = Rb_i / sum(Rb). Normalization goes
// through ratios against the fastest node so equal rates reduce to
// alloc_equal bit-exactly.
Allocation alloc_rate(const Snapshot& snapshot);

// Solves min over alpha of max_i (d_request_i + alpha_i * k / Rb_i)
// subject to sum(alpha) = 1, lower_i <= alpha_i <= 1, by water-filling:
// raise a common time level T, let alpha_i(T) = clamp((T - b_i)/a_i,
// lower_i, 1) with b_i = d_request_i and a_i = k/Rb_i, and find the
// smallest T with sum_i alpha_i(T) = 1. The sum is continuous, piecewise
// linear and non-decreasing in T, so scanning its breakpoints brackets
// the crossing and the bracketing segment is solved in closed form.
//
// Throws InfeasibleError when the lower bounds alone exceed 1 (the MSR
// bound does for every N, since N/(N-1) > 1), and std::domain_error for
// the MSR flag on a single-node snapshot.
OptSolution alloc_opt(const Snapshot& snapshot, const AllocConstraints& constraints = {});

// Maximum violation of the optimality conditions for (alphas, t_star),
// specialized from the KKT system of the equivalent LP:
//   - feasibility: bounds and sum(alpha) = 1;
//   - nodes strictly between their bounds finish exactly at t_star;
//   - nodes pinned at the lower bound are already too slow to help
//     (b_i + lower_i * a_i >= t_star);
//   - saturated nodes finish no later than t_star.
// Returns 0 (up to rounding) exactly at the optimum.
double kkt_residuals(const Snapshot& snapshot, std::span<const double> alphas,
                     double t_star, const AllocConstraints& constraints = {});

// Test oracle: exhaustive search over the lattice { k/grid_steps } of the
// simplex, N <= 4 only. Returns the best lattice point; its total time is
// within max_i(k/Rb_i)/grid_steps of the true optimum. Independent of the
// water-filling path: every candidate is scored by directly evaluating
// the download-time maximum. The innermost lattice coordinate is resolved
// through the convexity of the restricted objective instead of a full
// scan, which changes nothing about which point wins.
Allocation oracle_opt(const Snapshot& snapshot, int grid_steps);

}  // namespace fogstore

#endif
