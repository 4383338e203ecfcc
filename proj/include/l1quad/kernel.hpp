#pragma once

/**
 * @file kernel.hpp
 * @brief Single-interval perturbed Ostrowski rule and its Peano kernel.
 *
 * For a < b, h ∈ [0,1] and x ∈ [a + h(b−a)/2, b − h(b−a)/2]
 *
 *   ∫ₐᵇ f = Q(f; a, b, h, x) + ∫ₐᵇ K(x,t) f″(t) dt
 *
 * with
 *
 *   Q = (b−a)(1−h) f(x) − (b−a)(1−h)(x − (a+b)/2) f′(x)
 *       + h(b−a)/2 (f(a) + f(b)) − h²(b−a)²/8 (f′(b) − f′(a))
 *
 *   K(x,t) = ½ (t − (a + h(b−a)/2))²   for t ∈ [a, x]
 *            ½ (t − (b − h(b−a)/2))²   for t ∈ (x, b]
 */

#include <algorithm>
#include <cmath>
#include <string>

#include "l1quad/errors.hpp"
#include "l1quad/expr.hpp"
#include "l1quad/reference.hpp"

namespace l1quad {

/// Validated parameters (a, b, h, x) of one single-interval rule.
class RulePoint {
 public:
  /// Relative slack (in units of b−a) within which an x just outside the
  /// admissible interval is clamped onto it. At h=1 this snaps x to the midpoint.
  static constexpr double kSnap = 1e-12;

  RulePoint(double a, double b, double h, double x) : a_(a), b_(b), h_(h), x_(x) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw DomainError("rule point needs a < b");
    if (!(h >= 0.0 && h <= 1.0)) throw DomainError("h must lie in [0,1], got " + std::to_string(h));
    const double lo = admissible_lo();
    const double hi = admissible_hi();
    const double slack = kSnap * (b - a);
    if (!(x >= lo - slack && x <= hi + slack)) {
      throw DomainError("x=" + std::to_string(x) + " outside admissible interval [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (h == 1.0) {
      x_ = midpoint();
    } else {
      x_ = std::clamp(x, std::min(lo, hi), std::max(lo, hi));
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double h() const { return h_; }
  double x() const { return x_; }
  double length() const { return b_ - a_; }
  double midpoint() const { return 0.5 * (a_ + b_); }

  /// Left root of the kernel, a + h(b−a)/2 (also the lowest admissible x).
  double admissible_lo() const { return a_ + h_ * (b_ - a_) / 2.0; }
  /// Right root of the kernel, b − h(b−a)/2 (also the highest admissible x).
  double admissible_hi() const { return b_ - h_ * (b_ - a_) / 2.0; }

 private:
  double a_, b_, h_, x_;
};

/// K(x,t). The left branch owns t = x.
inline double peano_kernel(const RulePoint& rp, double t) {
  if (!(t >= rp.a() && t <= rp.b())) throw DomainError("kernel argument outside [a,b]");
  const double root = t <= rp.x() ? rp.admissible_lo() : rp.admissible_hi();
  const double d = t - root;
  return 0.5 * d * d;
}

/// sup over t of K(x,t): the larger of the branch values at t=a, t=x, t=b.
inline double kernel_max(const RulePoint& rp) {
  const double end = rp.h() * rp.length() / 2.0;
  const double inner = rp.length() * (1.0 - rp.h()) / 2.0 + std::abs(rp.x() - rp.midpoint());
  const double m = std::max(end, inner);
  return 0.5 * m * m;
}

/// The rule Q of the identity above (an approximation of ∫ₐᵇ f, not the mean).
inline double single_rule(const DifferentiableFunction& fn, const RulePoint& rp) {
  const double a = rp.a(), b = rp.b(), h = rp.h(), x = rp.x();
  const double len = b - a;
  double q = 0.0;
  if (h != 1.0) {
    q += len * (1.0 - h) * fn.f(x);
    q -= len * (1.0 - h) * (x - rp.midpoint()) * fn.df(x);
  }
  if (h != 0.0) {
    q += h * len / 2.0 * (fn.f(a) + fn.f(b));
    q -= h * h * len * len / 8.0 * (fn.df(b) - fn.df(a));
  }
  return q;
}

/// ∫ₐᵇ K(x,t) f″(t) dt, integrated separately on [a,x] and [x,b].
inline double residual_via_kernel(const DifferentiableFunction& fn, const RulePoint& rp,
                                  double tol) {
  const double lo_root = rp.admissible_lo();
  const double hi_root = rp.admissible_hi();
  auto left = [&](double t) {
    const double d = t - lo_root;
    return 0.5 * d * d * fn.d2f(t);
  };
  auto right = [&](double t) {
    const double d = t - hi_root;
    return 0.5 * d * d * fn.d2f(t);
  };
  return reference_integrate(left, rp.a(), rp.x(), tol / 2.0) +
         reference_integrate(right, rp.x(), rp.b(), tol / 2.0);
}

/// |(∫f − Q) − ∫K f″|, which vanishes up to quadrature error.
inline double identity_defect(const DifferentiableFunction& fn, const RulePoint& rp, double tol) {
  const double integral = reference_integrate(fn.f, rp.a(), rp.b(), tol);
  return std::abs((integral - single_rule(fn, rp)) - residual_via_kernel(fn, rp, tol));
}

}  // namespace l1quad
