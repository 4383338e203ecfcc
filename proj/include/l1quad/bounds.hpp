#pragma once

/**
 * @file bounds.hpp
 * @brief A-priori error certificates for the single-interval rules.
 *
 * Every value is an upper bound on |∫ₐᵇ f − rule|, i.e. in absolute units
 * (the mean-value forms multiplied by b−a), so bounds over subintervals add.
 *
 * The certified forms all come from |∫K f″| ≤ sup K · ‖f″‖₁. The supremum of
 * the kernel is taken over the whole of [a,b]; for h > ½ it can sit at the
 * endpoints t=a, t=b rather than at t=x, so some of the classical closed forms
 * (which only look at t=x) under-estimate it there. Those closed forms are kept
 * as the `*_as_printed` formulas for comparison and are never used to certify.
 */

#include <algorithm>
#include <cmath>
#include <string_view>

#include "l1quad/errors.hpp"
#include "l1quad/kernel.hpp"

namespace l1quad {

enum class BoundFormula {
  tight,                   // ½·max(h(b−a)/2, (b−a)(1−h)/2 + |x−mid|)²·‖f″‖₁
  tight_as_printed,        // ½·((b−a)(1−h)/2 + |x−mid|)²·‖f″‖₁
  coarse_corrected,        // (b−a)²/2·max(h/2, 1−h)²·‖f″‖₁
  coarse_paper,            // (b−a)²/2·(1−h/2)²·‖f″‖₁
  trapezoid_h1,            // (b−a)²/8·‖f″‖₁
  midpoint,                // (b−a)²/8·max(h, 1−h)²·‖f″‖₁
  midpoint_as_printed,     // (b−a)²/8·(1−h)²·‖f″‖₁
  averaged_endpoint,       // (b−a)²/2·(1−h/2)²·‖f″‖₁
  perturbed_trapezoid_as_printed_eq13,  // (b−a)³/6·‖f″‖∞, reproduction only
  ostrowski_sup,
  dragomir_wang_l1,
  barnett_l1,
};

inline std::string_view formula_name(BoundFormula f) {
  switch (f) {
    case BoundFormula::tight: return "tight";
    case BoundFormula::tight_as_printed: return "tight-as-printed";
    case BoundFormula::coarse_corrected: return "coarse";
    case BoundFormula::coarse_paper: return "paper-coarse";
    case BoundFormula::trapezoid_h1: return "trapezoid-h1";
    case BoundFormula::midpoint: return "midpoint";
    case BoundFormula::midpoint_as_printed: return "midpoint-as-printed";
    case BoundFormula::averaged_endpoint: return "averaged-endpoint";
    case BoundFormula::perturbed_trapezoid_as_printed_eq13: return "as-printed-eq13";
    case BoundFormula::ostrowski_sup: return "ostrowski";
    case BoundFormula::dragomir_wang_l1: return "dragomir-wang";
    case BoundFormula::barnett_l1: return "barnett";
  }
  return "?";
}

struct BoundInputs {
  double a = 0.0;
  double b = 0.0;
  double h = 0.0;
  double x = 0.0;
  double norm = 0.0;
};

struct BoundReport {
  double value = 0.0;
  BoundFormula formula = BoundFormula::tight;
  BoundInputs inputs{};
};

namespace detail {

inline void require_norm(double norm) {
  if (!(norm >= 0.0) || !std::isfinite(norm)) throw DomainError("norm must be finite and >= 0");
}

inline void require_interval(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw DomainError("bound needs a < b");
}

inline void require_h(double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw DomainError("h must lie in [0,1]");
}

}  // namespace detail

/// Certificate for single_rule at `rp`, from the supremum of the Peano kernel.
inline BoundReport tight_bound(const RulePoint& rp, double l1) {
  detail::require_norm(l1);
  return {kernel_max(rp) * l1, BoundFormula::tight, {rp.a(), rp.b(), rp.h(), rp.x(), l1}};
}

/// The closed form that only considers t = x. Not a valid certificate for h > ½.
inline BoundReport tight_bound_as_printed(const RulePoint& rp, double l1) {
  detail::require_norm(l1);
  const double m = rp.length() * (1.0 - rp.h()) / 2.0 + std::abs(rp.x() - rp.midpoint());
  return {0.5 * m * m * l1, BoundFormula::tight_as_printed,
          {rp.a(), rp.b(), rp.h(), rp.x(), l1}};
}

enum class CoarseForm { corrected, paper };

/// Bound for single_rule that holds for every admissible x.
inline BoundReport coarse_bound(double a, double b, double h, double l1,
                                CoarseForm form = CoarseForm::corrected) {
  detail::require_interval(a, b);
  detail::require_h(h);
  detail::require_norm(l1);
  const double len = b - a;
  const double c = form == CoarseForm::paper ? 1.0 - h / 2.0 : std::max(h / 2.0, 1.0 - h);
  return {0.5 * len * len * c * c * l1,
          form == CoarseForm::paper ? BoundFormula::coarse_paper : BoundFormula::coarse_corrected,
          {a, b, h, std::nan(""), l1}};
}

/// Certificate for the h=1 rule (b−a)/2·(f(a)+f(b)) − (b−a)²/8·(f′(b)−f′(a)).
inline BoundReport trapezoid_special_bound(double a, double b, double l1) {
  detail::require_interval(a, b);
  detail::require_norm(l1);
  const double len = b - a;
  return {len * len / 8.0 * l1, BoundFormula::trapezoid_h1, {a, b, 1.0, 0.5 * (a + b), l1}};
}

/// Certificate for single_rule at x = (a+b)/2.
inline BoundReport midpoint_bound(double a, double b, double h, double l1) {
  detail::require_interval(a, b);
  detail::require_h(h);
  detail::require_norm(l1);
  const double len = b - a;
  const double c = std::max(h, 1.0 - h);
  return {len * len / 8.0 * c * c * l1, BoundFormula::midpoint, {a, b, h, 0.5 * (a + b), l1}};
}

/// (b−a)²/8·(1−h)²·l1. Agrees with midpoint_bound for h ≤ ½ only.
inline BoundReport midpoint_bound_as_printed(double a, double b, double h, double l1) {
  detail::require_interval(a, b);
  detail::require_h(h);
  detail::require_norm(l1);
  const double len = b - a;
  return {len * len / 8.0 * (1.0 - h) * (1.0 - h) * l1, BoundFormula::midpoint_as_printed,
          {a, b, h, 0.5 * (a + b), l1}};
}

/// The rule obtained by averaging the identity at x=a and x=b:
///   (b−a)[(f(a)+f(b))/2 − (1−h)(b−a)(f′(b)−f′(a))/4 − h²(b−a)(f′(b)−f′(a))/8].
/// Its kernel has a single branch on each side and peaks at ½(1−h/2)²(b−a)².
inline double averaged_endpoint_rule(const DifferentiableFunction& fn, double a, double b,
                                     double h) {
  detail::require_interval(a, b);
  detail::require_h(h);
  const double len = b - a;
  const double fsum = fn.f(a) + fn.f(b);
  const double dd = fn.df(b) - fn.df(a);
  return len * ((1.0 - h) * fsum / 2.0 - (1.0 - h) * len * dd / 4.0 + h / 2.0 * fsum -
                h * h * len / 8.0 * dd);
}

inline BoundReport averaged_endpoint_bound(double a, double b, double h, double l1) {
  detail::require_interval(a, b);
  detail::require_h(h);
  detail::require_norm(l1);
  const double len = b - a;
  const double c = 1.0 - h / 2.0;
  return {0.5 * len * len * c * c * l1, BoundFormula::averaged_endpoint, {a, b, h, std::nan(""), l1}};
}

/// (b−a)³/6·sup|f″| as literally printed for the h=0 averaged rule. Its norm
/// and constant do not follow from the averaged-endpoint argument; kept for
/// reproduction and never used to certify.
inline BoundReport perturbed_trapezoid_as_printed_eq13(double a, double b, double sup_second) {
  detail::require_interval(a, b);
  detail::require_norm(sup_second);
  const double len = b - a;
  return {len * len * len / 6.0 * sup_second, BoundFormula::perturbed_trapezoid_as_printed_eq13,
          {a, b, 0.0, std::nan(""), sup_second}};
}

enum class ClassicalKind { ostrowski_sup, dragomir_wang_l1, barnett_l1 };

/// Baseline inequalities, in absolute units:
///  - ostrowski_sup:    |(b−a)f(x) − ∫f| ≤ [¼ + (x−mid)²/(b−a)²](b−a)²‖f′‖∞
///  - dragomir_wang_l1: |(b−a)f(x) − ∫f| ≤ [½ + |x−mid|/(b−a)](b−a)‖f′‖₁
///  - barnett_l1:       |(b−a)f(x) − (b−a)(x−mid)f′(x) − ∫f| ≤ ½(|x−mid| + (b−a)/2)²‖f″‖₁
inline BoundReport classical_bound(ClassicalKind kind, double a, double b, double x, double norm) {
  detail::require_interval(a, b);
  detail::require_norm(norm);
  if (!(x >= a && x <= b)) throw DomainError("x must lie in [a,b]");
  const double len = b - a;
  const double dev = std::abs(x - 0.5 * (a + b));
  switch (kind) {
    case ClassicalKind::ostrowski_sup: {
      const double rel = (x - 0.5 * (a + b)) / len;
      return {(0.25 + rel * rel) * len * len * norm, BoundFormula::ostrowski_sup, {a, b, 0.0, x, norm}};
    }
    case ClassicalKind::dragomir_wang_l1:
      return {(0.5 + dev / len) * len * norm, BoundFormula::dragomir_wang_l1, {a, b, 0.0, x, norm}};
    case ClassicalKind::barnett_l1: {
      // Same association as kernel_max at h=0 so the two agree bit for bit.
      const double m = len * (1.0 - 0.0) / 2.0 + dev;
      return {0.5 * m * m * norm, BoundFormula::barnett_l1, {a, b, 0.0, x, norm}};
    }
  }
  throw DomainError("unknown classical bound");
}

}  // namespace l1quad
