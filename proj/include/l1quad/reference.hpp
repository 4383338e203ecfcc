#pragma once

#include <cmath>
#include <limits>

#include "l1quad/errors.hpp"

namespace l1quad {

struct Integral {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

namespace detail {

struct SimpsonState {
  int max_depth;
  double scale;  // rough magnitude of the whole integral, for the roundoff stop
  bool converged = true;
  double error = 0.0;
};

template <class G>
double simpson_step(G& g, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, SimpsonState& st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const bool at_roundoff = st.scale + delta == st.scale || !(lm > a && rm < b);
  if (std::abs(delta) <= 15.0 * tol || at_roundoff) {
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth >= st.max_depth) {
    st.converged = false;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(g, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, st) +
         simpson_step(g, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, st);
}

}  // namespace detail

/// Adaptive Simpson quadrature of g over [a,b] to absolute tolerance `tol`.
///
/// Each accepted panel carries the Richardson-corrected value S₂ + (S₂−S₁)/15.
/// Recursion also stops once the panel correction is below the rounding level
/// of the whole integral, so requests below machine precision terminate. If
/// `max_depth` is reached the best estimate is returned with converged=false.
template <class G>
Integral adaptive_simpson(G&& g, double a, double b, double tol, int max_depth = 60) {
  if (a == b) return {};
  if (!(tol > 0.0)) throw DomainError("integration tolerance must be positive");
  const double fa = g(a);
  const double fb = g(b);
  const double fm = g(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  // Scale estimate from a few extra samples, so a vanishing Simpson value
  // on a symmetric integrand does not disable the roundoff stop.
  double scale = std::abs(whole);
  for (double frac : {0.1127, 0.3, 0.7, 0.8873}) scale += std::abs((b - a) * g(a + frac * (b - a)));
  scale = 1e-3 * scale + std::abs(b - a) * std::numeric_limits<double>::min();

  detail::SimpsonState st{max_depth, scale};
  const double value = detail::simpson_step(g, a, b, fa, fm, fb, whole, tol, 0, st);
  return {value, st.error, st.converged};
}

/// Reference integral used as the oracle throughout the library. Throws
/// ConvergenceError (carrying the best estimate) if the depth limit is hit.
template <class G>
double reference_integrate(G&& g, double a, double b, double tol) {
  const Integral r = adaptive_simpson(g, a, b, tol);
  if (!r.converged) {
    throw ConvergenceError("reference integrator hit its depth limit", r.value);
  }
  return r.value;
}

}  // namespace l1quad
