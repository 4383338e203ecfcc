#pragma once

/**
 * @file means.hpp
 * @brief Special means of two positive numbers and the inequalities the
 *        perturbed rule yields for f(t) = t^r, 1/t and ln t.
 *
 * For 0 < a < b:
 *   A = (a+b)/2, G = √(ab), H = 2ab/(a+b),
 *   L = (b−a)/(ln b − ln a), I = e⁻¹ (b^b / a^a)^{1/(b−a)},
 *   L_p = [(b^{p+1} − a^{p+1}) / ((p+1)(b−a))]^{1/p}.
 * Each mean equals a when a = b.
 *
 * The mean of t^p over [a,b] is L_p^p (p ≠ −1) and 1/L (p = −1); the mean of
 * ln t is ln I. Applying the single-interval rule to t^r, 1/t and ln t and
 * dividing by b−a turns its certificate into an inequality between these means.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

#include "l1quad/errors.hpp"
#include "l1quad/kernel.hpp"
#include "l1quad/seminorm.hpp"

namespace l1quad {

enum class MeanKind { arithmetic, geometric, harmonic, logarithmic, identric, generalized_log };

inline std::string_view mean_name(MeanKind k) {
  switch (k) {
    case MeanKind::arithmetic: return "A";
    case MeanKind::geometric: return "G";
    case MeanKind::harmonic: return "H";
    case MeanKind::logarithmic: return "L";
    case MeanKind::identric: return "I";
    case MeanKind::generalized_log: return "L_p";
  }
  return "?";
}

struct MeanValue {
  MeanKind kind = MeanKind::arithmetic;
  double a = 0.0;
  double b = 0.0;
  double p = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
};

namespace detail {

inline void require_ordered_positive(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("means need a > 0");
  if (!(a <= b) || !std::isfinite(b)) throw DomainError("means need a <= b");
}

inline void require_strict(double a, double b) {
  require_ordered_positive(a, b);
  if (!(a < b)) throw DomainError("means inequalities need a < b");
}

}  // namespace detail

/// Mean of t^p over [a,b]: L_p^p for p ≠ −1, 1/L for p = −1.
inline double mean_of_power(double a, double b, double p) {
  detail::require_ordered_positive(a, b);
  if (a == b) return std::pow(a, p);
  const double log_ratio = std::log1p((b - a) / a);
  if (p == -1.0) return log_ratio / (b - a);
  return std::pow(a, p + 1.0) * std::expm1((p + 1.0) * log_ratio) / ((p + 1.0) * (b - a));
}

/// ln I(a,b), the mean of ln t over [a,b].
inline double log_identric(double a, double b) {
  detail::require_ordered_positive(a, b);
  if (a == b) return std::log(a);
  return std::log(b) + a * std::log1p((b - a) / a) / (b - a) - 1.0;
}

inline MeanValue special_mean(MeanKind kind, double a, double b,
                              double p = std::numeric_limits<double>::quiet_NaN()) {
  detail::require_ordered_positive(a, b);
  MeanValue out{kind, a, b, p, a};
  switch (kind) {
    case MeanKind::arithmetic: out.value = 0.5 * (a + b); break;
    case MeanKind::geometric: out.value = std::sqrt(a) * std::sqrt(b); break;
    case MeanKind::harmonic: out.value = 2.0 * a * b / (a + b); break;
    case MeanKind::logarithmic:
      if (a < b) out.value = (b - a) / std::log1p((b - a) / a);
      break;
    case MeanKind::identric:
      if (a < b) out.value = std::exp(log_identric(a, b));
      break;
    case MeanKind::generalized_log:
      if (!std::isfinite(p) || p == -1.0 || p == 0.0) {
        throw DomainError("generalized logarithmic mean needs p outside {-1, 0}");
      }
      if (a < b) out.value = std::pow(mean_of_power(a, b, p), 1.0 / p);
      break;
  }
  if (a == b) out.value = a;
  return out;
}

enum class MeansFamily { power, reciprocal, logarithm };

inline std::string_view family_name(MeansFamily f) {
  switch (f) {
    case MeansFamily::power: return "power";
    case MeansFamily::reciprocal: return "reciprocal";
    case MeansFamily::logarithm: return "log";
  }
  return "?";
}

struct MeansInequalityReport {
  MeansFamily family = MeansFamily::power;
  double a = 0.0;
  double b = 0.0;
  double h = 0.0;
  double x = 0.0;
  double r = std::numeric_limits<double>::quiet_NaN();
  double lhs = 0.0;
  /// Kernel supremum × ‖f″‖₁ / (b−a), the certified right-hand side.
  double rhs = 0.0;
  bool holds = false;
  /// Right-hand side with the closed-form coefficient and norm factor as
  /// classically written; shown for comparison only.
  double rhs_as_printed = 0.0;
  /// ‖f″‖₁/(b−a) from the norm estimator.
  double norm_factor = 0.0;
  /// The closed-form mean used in place of norm_factor in rhs_as_printed.
  double printed_norm_factor = 0.0;
};

namespace detail {

inline constexpr double kMeansSlack = 1e-12;

inline bool within(double lhs, double rhs) { return lhs <= rhs + kMeansSlack * (1.0 + rhs); }

template <class G>
MeansInequalityReport finish_report(MeansFamily family, const RulePoint& rp, double r, double lhs,
                                    G&& second_derivative, double printed_norm_factor,
                                    double printed_scale) {
  MeansInequalityReport out;
  out.family = family;
  out.a = rp.a();
  out.b = rp.b();
  out.h = rp.h();
  out.x = rp.x();
  out.r = r;
  out.lhs = lhs;
  const double len = rp.length();
  out.norm_factor = l1_norm(second_derivative, rp.a(), rp.b(), 1e-13).value / len;
  out.rhs = kernel_max(rp) * out.norm_factor;
  out.holds = within(out.lhs, out.rhs);
  const double m = len * (1.0 - rp.h()) / 2.0 + std::abs(rp.x() - rp.midpoint());
  out.printed_norm_factor = printed_norm_factor;
  out.rhs_as_printed = printed_scale * m * m * printed_norm_factor;
  return out;
}

}  // namespace detail

/// f(t) = t^r with mean L_r^r:
///   |(1−h)x^r − (1−h)(x−A) r x^{r−1} + (h/2)(a^r + b^r)
///     − (h²(b−a)r/8)(b^{r−1} − a^{r−1}) − L_r^r(a,b)|.
/// The printed comparison uses ½[…]²·|r(r−1)|·L_{r−1}^{r−1}.
inline MeansInequalityReport power_mean_inequality(double a, double b, double r, double h,
                                                   double x) {
  detail::require_strict(a, b);
  if (!std::isfinite(r) || r == -1.0 || r == 0.0) throw DomainError("r must lie outside {-1, 0}");
  const RulePoint rp(a, b, h, x);
  const double xx = rp.x();
  const double am = 0.5 * (a + b);
  const double len = b - a;
  const double value = (1.0 - h) * std::pow(xx, r) -
                       (1.0 - h) * (xx - am) * r * std::pow(xx, r - 1.0) +
                       h / 2.0 * (std::pow(a, r) + std::pow(b, r)) -
                       h * h * len * r / 8.0 * (std::pow(b, r - 1.0) - std::pow(a, r - 1.0)) -
                       mean_of_power(a, b, r);
  auto second = [r](double t) { return r * (r - 1.0) * std::pow(t, r - 2.0); };
  return detail::finish_report(MeansFamily::power, rp, r, std::abs(value), second,
                               std::abs(r * (r - 1.0) * mean_of_power(a, b, r - 1.0)), 0.5);
}

/// f(t) = 1/t with mean 1/L:
///   |(1−h)/x + (1−h)(x−A)/x² + h/H − (h²(b−a)/8)(b²−a²)/(a²b²) − L⁻¹(a,b)|.
/// The printed comparison uses […]²·L₋₃⁻³ (no ½, and L₋₃⁻³ is half the
/// mean of f″ = 2/t³, so the two omissions cancel).
inline MeansInequalityReport reciprocal_inequality(double a, double b, double h, double x) {
  detail::require_strict(a, b);
  const RulePoint rp(a, b, h, x);
  const double xx = rp.x();
  const double am = 0.5 * (a + b);
  const double hm = special_mean(MeanKind::harmonic, a, b).value;
  const double len = b - a;
  const double value = (1.0 - h) / xx + (1.0 - h) * (xx - am) / (xx * xx) + h / hm -
                       h * h * len / 8.0 * ((b * b - a * a) / (a * a * b * b)) -
                       mean_of_power(a, b, -1.0);
  auto second = [](double t) { return 2.0 / (t * t * t); };
  return detail::finish_report(MeansFamily::reciprocal, rp, std::nan(""), std::abs(value), second,
                               mean_of_power(a, b, -3.0), 1.0);
}

/// f(t) = ln t with mean ln I:
///   |(1−h)ln x − (1−h)(x−A)/x + (h/2)(ln a + ln b) + h²(b−a)²/(8ab) − ln I(a,b)|.
/// The printed comparison uses ½[…]²·L₋₂⁻².
inline MeansInequalityReport log_mean_inequality(double a, double b, double h, double x) {
  detail::require_strict(a, b);
  const RulePoint rp(a, b, h, x);
  const double xx = rp.x();
  const double am = 0.5 * (a + b);
  const double len = b - a;
  const double value = (1.0 - h) * std::log(xx) - (1.0 - h) * (xx - am) / xx +
                       h / 2.0 * (std::log(a) + std::log(b)) + h * h * len * len / (8.0 * a * b) -
                       log_identric(a, b);
  auto second = [](double t) { return -1.0 / (t * t); };
  return detail::finish_report(MeansFamily::logarithm, rp, std::nan(""), std::abs(value), second,
                               mean_of_power(a, b, -2.0), 0.5);
}

/// The h=0, x=A instance of the log family in log form:
/// ln A − ln I ≤ (b−a)²/8 · L₋₂⁻²(a,b), i.e. A/I ≤ exp((b−a)²/8 · L₋₂⁻²).
struct IdentricRatioBound {
  double log_ratio = 0.0;  // ln(A/I) ≥ 0
  double bound = 0.0;
  bool holds = false;
};

inline IdentricRatioBound identric_ratio_bound(double a, double b) {
  detail::require_strict(a, b);
  IdentricRatioBound out;
  out.log_ratio = std::log(0.5 * (a + b)) - log_identric(a, b);
  out.bound = (b - a) * (b - a) / 8.0 * mean_of_power(a, b, -2.0);
  out.holds = detail::within(std::abs(out.log_ratio), out.bound);
  return out;
}

}  // namespace l1quad
