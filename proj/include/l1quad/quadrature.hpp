#pragma once

/**
 * @file quadrature.hpp
 * @brief Composite perturbed rules over a partition, with certified remainders.
 *
 * On a partition a = x₀ < … < xₙ = b with δ ∈ [0,1] and intermediate points
 * ξᵢ ∈ [xᵢ + δhᵢ/2, xᵢ₊₁ − δhᵢ/2], the composite rule is the sum of the
 * single-interval rules (see kernel.hpp) with h = δ and x = ξᵢ on each
 * [xᵢ, xᵢ₊₁]. δ = 0 with ξᵢ = midᵢ is the composite midpoint rule; δ = 1 is
 * the endpoint-corrected trapezoid rule
 *
 *   T = ½ Σ hᵢ (f(xᵢ) + f(xᵢ₊₁)) − ⅛ Σ hᵢ² (f′(xᵢ₊₁) − f′(xᵢ)).
 *
 * Local contributions are reduced with pairwise_sum in partition order, so
 * results do not depend on how the local work is scheduled.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "l1quad/bounds.hpp"
#include "l1quad/errors.hpp"
#include "l1quad/kernel.hpp"
#include "l1quad/seminorm.hpp"
#include "l1quad/summation.hpp"

namespace l1quad {

/// Strictly increasing breakpoints x₀ < x₁ < … < xₙ, n ≥ 1.
class Partition {
 public:
  explicit Partition(std::vector<double> breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) throw DomainError("a partition needs at least two breakpoints");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!std::isfinite(points_[i])) throw DomainError("partition breakpoints must be finite");
      if (i > 0 && !(points_[i - 1] < points_[i])) {
        throw DomainError("partition breakpoints must be strictly increasing");
      }
    }
  }

  static Partition uniform(double a, double b, std::size_t n) {
    if (n == 0) throw DomainError("uniform partition needs n >= 1");
    if (!(a < b)) throw DomainError("uniform partition needs a < b");
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      pts[i] = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    }
    return Partition(std::move(pts));
  }

  std::size_t intervals() const { return points_.size() - 1; }
  double a() const { return points_.front(); }
  double b() const { return points_.back(); }
  double left(std::size_t i) const { return points_[i]; }
  double right(std::size_t i) const { return points_[i + 1]; }
  double width(std::size_t i) const { return points_[i + 1] - points_[i]; }
  std::span<const double> breakpoints() const { return points_; }

  /// Every interval split at its midpoint.
  Partition refined() const {
    std::vector<double> pts;
    pts.reserve(2 * points_.size() - 1);
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      pts.push_back(points_[i]);
      pts.push_back(0.5 * (points_[i] + points_[i + 1]));
    }
    pts.push_back(points_.back());
    return Partition(std::move(pts));
  }

 private:
  std::vector<double> points_;
};

enum class XiStrategy { midpoint, left_admissible, right_admissible, explicit_points };

enum class BoundMode {
  per_interval_norms,  // Σ cᵢ ‖f″‖₁ on [xᵢ, xᵢ₊₁]
  paper_aggregate,     // Σ cᵢ ‖f″‖₁ on [a, b]
};

struct RuleConfig {
  double delta = 0.0;
  XiStrategy xi = XiStrategy::midpoint;
  std::vector<double> explicit_xi{};
  BoundMode bound_mode = BoundMode::per_interval_norms;
  double norm_tolerance = kDefaultNormTolerance;
};

struct IntervalReport {
  double left = 0.0;
  double right = 0.0;
  double xi = 0.0;
  double estimate = 0.0;
  double bound = 0.0;  // kernel supremum × local ‖f″‖₁
  double l1 = 0.0;     // local ‖f″‖₁
};

struct CompositeResult {
  double estimate = 0.0;
  double certified_bound = 0.0;
  BoundMode bound_mode = BoundMode::per_interval_norms;
  double global_l1 = 0.0;
  double per_interval_bound = 0.0;  // Σ localBound
  double aggregate_bound = 0.0;     // Σ kernel supremum × global ‖f″‖₁
  std::vector<IntervalReport> per_interval{};
  bool cap_reached = false;
};

namespace detail {

inline double choose_xi(const RuleConfig& cfg, double lo, double hi, std::size_t i) {
  const double len = hi - lo;
  switch (cfg.xi) {
    case XiStrategy::midpoint: return 0.5 * (lo + hi);
    case XiStrategy::left_admissible: return lo + cfg.delta * len / 2.0;
    case XiStrategy::right_admissible: return hi - cfg.delta * len / 2.0;
    case XiStrategy::explicit_points:
      if (i >= cfg.explicit_xi.size()) throw DomainError("explicit xi list is shorter than the partition");
      return cfg.explicit_xi[i];
  }
  return 0.5 * (lo + hi);
}

inline IntervalReport local_rule(const DifferentiableFunction& fn, double lo, double hi, double xi,
                                 const RuleConfig& cfg) {
  const RulePoint rp(lo, hi, cfg.delta, xi);
  const double l1 = l1_norm(fn.d2f, lo, hi, cfg.norm_tolerance).value;
  return {lo, hi, rp.x(), single_rule(fn, rp), kernel_max(rp) * l1, l1};
}

inline void require_config(const RuleConfig& cfg) {
  if (!(cfg.delta >= 0.0 && cfg.delta <= 1.0)) throw DomainError("delta must lie in [0,1]");
  if (!(cfg.norm_tolerance > 0.0)) throw DomainError("norm tolerance must be positive");
}

inline CompositeResult assemble(const DifferentiableFunction& fn, std::vector<IntervalReport> parts,
                                const RuleConfig& cfg) {
  CompositeResult out;
  out.bound_mode = cfg.bound_mode;
  std::vector<double> est, bnd, agg;
  est.reserve(parts.size());
  bnd.reserve(parts.size());
  agg.reserve(parts.size());
  const double a = parts.front().left;
  const double b = parts.back().right;
  out.global_l1 = l1_norm(fn.d2f, a, b, cfg.norm_tolerance).value;
  for (const IntervalReport& p : parts) {
    est.push_back(p.estimate);
    bnd.push_back(p.bound);
    agg.push_back(kernel_max(RulePoint(p.left, p.right, cfg.delta, p.xi)) * out.global_l1);
  }
  out.estimate = pairwise_sum(est);
  out.per_interval_bound = pairwise_sum(bnd);
  out.aggregate_bound = pairwise_sum(agg);
  out.certified_bound =
      cfg.bound_mode == BoundMode::per_interval_norms ? out.per_interval_bound : out.aggregate_bound;
  out.per_interval = std::move(parts);
  return out;
}

}  // namespace detail

/// Composite rule with its certified remainder bound.
inline CompositeResult composite_rule(const DifferentiableFunction& fn, const Partition& p,
                                      const RuleConfig& cfg) {
  detail::require_config(cfg);
  if (cfg.xi == XiStrategy::explicit_points && cfg.explicit_xi.size() != p.intervals()) {
    throw DomainError("explicit xi list must have one point per interval");
  }
  std::vector<IntervalReport> parts;
  parts.reserve(p.intervals());
  for (std::size_t i = 0; i < p.intervals(); ++i) {
    const double lo = p.left(i), hi = p.right(i);
    parts.push_back(detail::local_rule(fn, lo, hi, detail::choose_xi(cfg, lo, hi, i), cfg));
  }
  return detail::assemble(fn, std::move(parts), cfg);
}

/// Composite midpoint rule M = Σ hᵢ f(midᵢ), bound Σ hᵢ²/8 ‖f″‖₁,ᵢ.
inline CompositeResult perturbed_midpoint(const DifferentiableFunction& fn, const Partition& p,
                                          BoundMode mode = BoundMode::per_interval_norms) {
  RuleConfig cfg;
  cfg.delta = 0.0;
  cfg.xi = XiStrategy::midpoint;
  cfg.bound_mode = mode;
  return composite_rule(fn, p, cfg);
}

/// Endpoint-corrected trapezoid rule T, bound Σ hᵢ²/8 ‖f″‖₁,ᵢ.
inline CompositeResult perturbed_trapezoid(const DifferentiableFunction& fn, const Partition& p,
                                           BoundMode mode = BoundMode::per_interval_norms) {
  RuleConfig cfg;
  cfg.delta = 1.0;
  cfg.xi = XiStrategy::midpoint;
  cfg.bound_mode = mode;
  return composite_rule(fn, p, cfg);
}

inline constexpr std::size_t kDefaultIntervalCap = std::size_t{1} << 20;

/// Greedy refinement: bisect the interval with the largest local bound until
/// the summed local bounds drop to `epsilon` or `max_intervals` is reached
/// (then `cap_reached` is set). Always certifies in per-interval mode.
inline CompositeResult adaptive_integrate(const DifferentiableFunction& fn, double a, double b,
                                          double epsilon, RuleConfig cfg,
                                          std::size_t max_intervals = kDefaultIntervalCap) {
  detail::require_config(cfg);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(a < b)) throw DomainError("adaptive integration needs a < b");
  if (cfg.xi == XiStrategy::explicit_points) {
    throw DomainError("adaptive integration cannot use explicit intermediate points");
  }
  cfg.bound_mode = BoundMode::per_interval_norms;

  std::vector<IntervalReport> pieces;
  auto add = [&](double lo, double hi) {
    pieces.push_back(detail::local_rule(fn, lo, hi, detail::choose_xi(cfg, lo, hi, 0), cfg));
    return pieces.size() - 1;
  };
  // Largest bound first; ties go to the leftmost interval.
  auto worse = [&](std::size_t l, std::size_t r) {
    if (pieces[l].bound != pieces[r].bound) return pieces[l].bound < pieces[r].bound;
    return pieces[l].left > pieces[r].left;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  std::vector<bool> alive;

  queue.push(add(a, b));
  alive.push_back(true);
  double total = pieces.front().bound;
  std::size_t live = 1;
  bool capped = false;

  while (total > epsilon) {
    if (live >= max_intervals) {
      capped = true;
      break;
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const double lo = pieces[worst].left, hi = pieces[worst].right;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      capped = true;
      break;
    }
    alive[worst] = false;
    const std::size_t l = add(lo, mid);
    const std::size_t r = add(mid, hi);
    alive.push_back(true);
    alive.push_back(true);
    queue.push(l);
    queue.push(r);
    ++live;
    // Running total drifts; re-sum exactly whenever it claims success.
    total += pieces[l].bound + pieces[r].bound - pieces[worst].bound;
    if (total <= epsilon) {
      std::vector<const IntervalReport*> order;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (alive[i]) order.push_back(&pieces[i]);
      }
      std::sort(order.begin(), order.end(),
                [](const IntervalReport* l, const IntervalReport* r) { return l->left < r->left; });
      std::vector<double> bnd;
      bnd.reserve(order.size());
      for (const IntervalReport* piece : order) bnd.push_back(piece->bound);
      total = pairwise_sum(bnd);
    }
  }

  std::vector<IntervalReport> parts;
  parts.reserve(live);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (alive[i]) parts.push_back(pieces[i]);
  }
  std::sort(parts.begin(), parts.end(),
            [](const IntervalReport& l, const IntervalReport& r) { return l.left < r.left; });
  CompositeResult out = detail::assemble(fn, std::move(parts), cfg);
  out.cap_reached = capped;
  return out;
}

}  // namespace l1quad
