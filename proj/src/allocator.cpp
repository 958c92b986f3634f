#include "fogstore/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fogstore {

namespace {

constexpr double kCertTol = 1e-9;

struct Terms {
  std::vector<double> a;      // seconds per unit share: data_bits / rate
  std::vector<double> b;      // request delay
  std::vector<double> lower;  // per-node lower bound on the share
};

Terms make_terms(const Snapshot& snapshot, const AllocConstraints& constraints) {
  const std::size_t n = snapshot.size();
  if (n == 0) throw std::domain_error("snapshot has no nodes");
  Terms t;
  t.a.reserve(n);
  t.b.reserve(n);
  for (const DerivedNode& node : snapshot.nodes) {
    t.a.push_back(snapshot.data_bits / node.spec.rate_bps);
    t.b.push_back(node.request_delay_s);
  }
  if (constraints.msr_lower_bound) {
    if (n < 2) throw std::domain_error("msr bound requires at least 2 nodes");
    t.lower.assign(n, 1.0 / static_cast<double>(n - 1));
  } else {
    t.lower.assign(n, 0.0);
  }
  return t;
}

double share_at_level(const Terms& t, std::size_t i, double level) {
  return std::clamp((level - t.b[i]) / t.a[i], t.lower[i], 1.0);
}

double share_sum(const Terms& t, double level) {
  double sum = 0.0;
  for (std::size_t i = 0; i < t.a.size(); ++i) sum += share_at_level(t, i, level);
  return sum;
}

}  // namespace

Allocation alloc_equal(const Snapshot& snapshot) {
  const std::size_t n = snapshot.size();
  if (n == 0) throw std::domain_error("snapshot has no nodes");
  std::vector<double> alphas(n, 1.0 / static_cast<double>(n));
  return make_allocation(snapshot, std::move(alphas), Strategy::Eq);
}

Allocation alloc_rate(const Snapshot& snapshot) {
  const std::size_t n = snapshot.size();
  if (n == 0) throw std::domain_error("snapshot has no nodes");
  double max_rate = 0.0;
  for (const DerivedNode& node : snapshot.nodes)
    max_rate = std::max(max_rate, node.spec.rate_bps);
  std::vector<double> alphas(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    alphas[i] = snapshot.nodes[i].spec.rate_bps / max_rate;
    sum += alphas[i];
  }
  for (double& a : alphas) a /= sum;
  return make_allocation(snapshot, std::move(alphas), Strategy::Rb);
}

OptSolution alloc_opt(const Snapshot& snapshot, const AllocConstraints& constraints) {
  const std::size_t n = snapshot.size();
  const Terms t = make_terms(snapshot, constraints);

  double lower_sum = 0.0;
  for (double lo : t.lower) lower_sum += lo;
  if (lower_sum > 1.0 + 1e-12) throw InfeasibleError("infeasible constraints");

  // Breakpoints of the share sum: where node i starts growing and where
  // it saturates.
  std::vector<double> points;
  points.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(t.b[i] + t.lower[i] * t.a[i]);
    points.push_back(t.b[i] + t.a[i]);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  double level = points.front();
  if (share_sum(t, level) < 1.0) {
    bool bracketed = false;
    for (std::size_t j = 0; j + 1 < points.size(); ++j) {
      const double left = points[j];
      const double right = points[j + 1];
      const double sum_left = share_sum(t, left);
      if (share_sum(t, right) < 1.0) continue;
      // Crossing is inside [left, right]; on the open segment the growing
      // nodes are exactly those whose start lies at or before `left` and
      // whose saturation lies at or after `right`.
      double slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (t.b[i] + t.lower[i] * t.a[i] <= left && t.b[i] + t.a[i] >= right)
          slope += 1.0 / t.a[i];
      }
      level = slope > 0.0 ? left + (1.0 - sum_left) / slope : right;
      level = std::clamp(level, left, right);
      bracketed = true;
      break;
    }
    // Rounding can leave the full sum an ulp short of 1 (all nodes
    // saturated, N = 1 in particular); the last breakpoint is the level.
    if (!bracketed) level = points.back();
  }

  std::vector<double> alphas(n);
  for (std::size_t i = 0; i < n; ++i) alphas[i] = share_at_level(t, i, level);

  OptSolution solution;
  solution.t_star = level;
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] >= 1.0)
      solution.saturated_set.push_back(i);
    else if (alphas[i] <= t.lower[i])
      solution.excluded_set.push_back(i);
    else
      solution.active_set.push_back(i);
  }
  solution.kkt_residual = kkt_residuals(snapshot, alphas, level, constraints);
  solution.allocation = make_allocation(snapshot, std::move(alphas), Strategy::Opt);
  if (solution.kkt_residual > kCertTol)
    throw std::logic_error("water-filling produced a non-optimal allocation");
  return solution;
}

double kkt_residuals(const Snapshot& snapshot, std::span<const double> alphas,
                     double t_star, const AllocConstraints& constraints) {
  const std::size_t n = snapshot.size();
  if (alphas.size() != n) throw std::domain_error("alpha vector length does not match node count");
  const Terms t = make_terms(snapshot, constraints);

  double sum = 0.0;
  for (double a : alphas) sum += a;
  if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("alphas must sum to 1");

  constexpr double kPinEps = 1e-12;
  double residual = std::abs(sum - 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    residual = std::max(residual, t.lower[i] - alphas[i]);
    residual = std::max(residual, alphas[i] - 1.0);
    const double finish = download_time(snapshot.nodes[i],
                                        std::clamp(alphas[i], 0.0, 1.0),
                                        snapshot.data_bits);
    if (alphas[i] > t.lower[i] + kPinEps) {
      residual = std::max(residual, finish - t_star);
      if (alphas[i] < 1.0 - kPinEps) residual = std::max(residual, t_star - finish);
    } else {
      // Pinned at the lower bound: raising the share may not pay off, so
      // this node's earliest useful finish must already reach t_star.
      residual = std::max(residual, t_star - (t.b[i] + t.lower[i] * t.a[i]));
    }
  }
  return std::max(residual, 0.0);
}

namespace {

// Best integer share for the last two lattice coordinates given `budget`
// grid units to split between them. The restricted objective
//   f(k) = max(prefix, b1 + a1*k/g, b2 + a2*(budget-k)/g)
// is convex on the interior, so its integer minimum sits next to the
// crossing of the two affine terms; the endpoints are scored separately
// because a zero share drops its node from the maximum.
struct TailResult {
  double value;
  long first;
};

TailResult best_tail(double prefix, double b1, double a1, double b2, double a2,
                     long budget, long grid) {
  const double g = static_cast<double>(grid);
  auto score = [&](long k) {
    double v = prefix;
    if (k > 0) v = std::max(v, b1 + a1 * (static_cast<double>(k) / g));
    if (budget - k > 0) v = std::max(v, b2 + a2 * (static_cast<double>(budget - k) / g));
    return v;
  };
  TailResult best{score(0), 0};
  auto consider = [&](long k) {
    if (k < 0 || k > budget) return;
    const double v = score(k);
    if (v < best.value || (v == best.value && k < best.first)) best = {v, k};
  };
  consider(budget);
  if (budget >= 2) {
    const double cross = (b2 + a2 * (static_cast<double>(budget) / g) - b1) * g / (a1 + a2);
    const long base = static_cast<long>(std::floor(cross));
    for (long k : {base, base + 1})
      consider(std::clamp(k, 1L, budget - 1));
  }
  return best;
}

}  // namespace

Allocation oracle_opt(const Snapshot& snapshot, int grid_steps) {
  const std::size_t n = snapshot.size();
  if (n == 0) throw std::domain_error("snapshot has no nodes");
  if (n > 4) throw std::domain_error("oracle_opt handles at most 4 nodes");
  if (grid_steps < 100) throw std::domain_error("grid_steps must be at least 100");
  const long g = grid_steps;
  const double gd = static_cast<double>(g);

  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = snapshot.data_bits / snapshot.nodes[i].spec.rate_bps;
    b[i] = snapshot.nodes[i].request_delay_s;
  }

  std::vector<long> best(n, 0);
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<long> units(n, 0);

  auto term = [&](std::size_t i, long k) {
    return k > 0 ? b[i] + a[i] * (static_cast<double>(k) / gd)
                 : -std::numeric_limits<double>::infinity();
  };

  // Enumerate all coordinates but the last two; prune a prefix as soon as
  // its partial maximum can no longer win.
  auto walk = [&](auto&& self, std::size_t depth, long budget, double prefix) -> void {
    if (prefix >= best_value) return;
    if (depth + 2 == n || n == 1) {
      if (n == 1) {
        units[0] = g;
        const double v = term(0, g);
        if (v < best_value) {
          best_value = v;
          best = units;
        }
        return;
      }
      const TailResult tail =
          best_tail(prefix, b[depth], a[depth], b[depth + 1], a[depth + 1], budget, g);
      if (tail.value < best_value) {
        best_value = tail.value;
        units[depth] = tail.first;
        units[depth + 1] = budget - tail.first;
        best = units;
      }
      return;
    }
    for (long k = 0; k <= budget; ++k) {
      units[depth] = k;
      self(self, depth + 1, budget - k, std::max(prefix, term(depth, k)));
    }
  };
  walk(walk, 0, g, -std::numeric_limits<double>::infinity());

  std::vector<double> alphas(n);
  for (std::size_t i = 0; i < n; ++i) alphas[i] = static_cast<double>(best[i]) / gd;
  return make_allocation(snapshot, std::move(alphas), Strategy::Opt);
}

}  // namespace fogstore
