#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "l1quad/errors.hpp"
#include "l1quad/reference.hpp"
#include "l1quad/summation.hpp"

namespace l1quad {

enum class NormKind { l1_of_second, l1_of_first, sup_of_first, sup_of_second };

struct NormEstimate {
  double value = 0.0;
  NormKind kind = NormKind::l1_of_second;
  double a = 0.0;
  double b = 0.0;
  double achieved_tolerance = 0.0;
};

inline constexpr double kDefaultNormTolerance = 1e-10;

namespace detail {

inline constexpr int kSignScanPoints = 1025;
inline constexpr int kSupScanPoints = 4097;

// Bisects a sign change of g on [lo, hi] down to `width`.
template <class G>
double bracket_root(G& g, double lo, double hi, double glo, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Breakpoints a = s₀ < s₁ < … < s_k = b such that g keeps one sign on each
/// piece, found by a uniform scan followed by bisection. Two roots inside one
/// scan cell are not resolved.
template <class G>
std::vector<double> sign_change_breakpoints(G&& g, double a, double b) {
  std::vector<double> cuts{a};
  const int n = detail::kSignScanPoints - 1;
  const double width = 1e-12 * (b - a);
  double t_prev = a;
  double g_prev = g(a);
  for (int i = 1; i <= n; ++i) {
    const double t = i == n ? b : a + (b - a) * static_cast<double>(i) / n;
    const double gt = g(t);
    if (g_prev != 0.0 && gt != 0.0 && (g_prev < 0.0) != (gt < 0.0)) {
      cuts.push_back(detail::bracket_root(g, t_prev, t, g_prev, width));
    } else if (gt == 0.0 && i != n) {
      cuts.push_back(t);
    }
    t_prev = t;
    g_prev = gt;
  }
  cuts.push_back(b);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

/// ∫ₐᵇ |g|, integrated piecewise between sign changes so each piece is smooth.
template <class G>
NormEstimate l1_norm(G&& g, double a, double b, double tol = kDefaultNormTolerance,
                     NormKind kind = NormKind::l1_of_second) {
  if (!(tol > 0.0)) throw DomainError("norm tolerance must be positive");
  if (a == b) return {0.0, kind, a, b, tol};
  if (!(a < b)) throw DomainError("l1 norm needs a <= b");
  const std::vector<double> cuts = sign_change_breakpoints(g, a, b);
  const std::size_t pieces = cuts.size() - 1;
  const double piece_tol = tol / static_cast<double>(pieces);
  auto abs_g = [&](double t) { return std::abs(g(t)); };
  std::vector<double> parts;
  parts.reserve(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const Integral r = adaptive_simpson(abs_g, cuts[i], cuts[i + 1], piece_tol);
    if (!r.converged) {
      throw ConvergenceError("l1 norm piece did not converge", r.value);
    }
    parts.push_back(r.value);
  }
  return {pairwise_sum(parts), kind, a, b, tol};
}

/// Best-effort sup |g| over [a,b]: grid scan refined by golden-section search
/// around the three largest grid values. May underestimate by the variation of
/// g within one grid cell.
template <class G>
NormEstimate sup_norm(G&& g, double a, double b, NormKind kind = NormKind::sup_of_first) {
  if (!(a <= b)) throw DomainError("sup norm needs a <= b");
  const int n = detail::kSupScanPoints - 1;
  std::vector<double> ts(n + 1), vs(n + 1);
  for (int i = 0; i <= n; ++i) {
    ts[i] = i == n ? b : a + (b - a) * static_cast<double>(i) / n;
    vs[i] = std::abs(g(ts[i]));
  }
  std::vector<int> order(n + 1);
  for (int i = 0; i <= n; ++i) order[i] = i;
  const int top = std::min(3, n + 1);
  std::partial_sort(order.begin(), order.begin() + top, order.end(),
                    [&](int l, int r) { return vs[l] > vs[r] || (vs[l] == vs[r] && l < r); });
  double best = vs[order[0]];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < top; ++k) {
    const int i = order[k];
    double lo = ts[std::max(i - 1, 0)];
    double hi = ts[std::min(i + 1, n)];
    auto neg_abs = [&](double t) { return -std::abs(g(t)); };
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = neg_abs(c), fd = neg_abs(d);
    for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = neg_abs(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = neg_abs(d);
      }
    }
    best = std::max({best, -fc, -fd});
  }
  const double cell = (b - a) / n;
  return {best, kind, a, b, cell > 0.0 ? cell : 1.0};
}

}  // namespace l1quad
