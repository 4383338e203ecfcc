#pragma once

/**
 * @file verify.hpp
 * @brief Randomised check of every certificate against the reference integrator.
 *
 * Each draw picks an admissible (a, b, h, x) inside a corpus entry's interval
 * and compares the true error of each rule with its certificate. Checks on
 * the closed forms that only look at t = x (`*_as_printed`) are tallied
 * separately as informational: they are expected to fail for h > ½.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "l1quad/bounds.hpp"
#include "l1quad/corpus.hpp"
#include "l1quad/expr.hpp"
#include "l1quad/kernel.hpp"
#include "l1quad/means.hpp"
#include "l1quad/quadrature.hpp"
#include "l1quad/reference.hpp"
#include "l1quad/seminorm.hpp"

namespace l1quad {

struct Violation {
  std::string check;
  std::string function;
  std::vector<std::pair<std::string, double>> inputs;
  double observed = 0.0;  // the quantity that should be small
  double limit = 0.0;     // what it should not exceed
};

struct CheckTally {
  std::size_t draws = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  // max observed/limit over draws with limit > 0
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::map<std::string, CheckTally> checks;
  std::map<std::string, CheckTally> informational;
  std::vector<Violation> violations;

  std::size_t violation_count() const { return violations.size(); }
};

inline constexpr double kReferenceTolerance = 1e-12;
inline constexpr double kIdentityTolerance = 1e-11;
inline constexpr double kBoundSlack = 1e-9;

/// Admissible single-interval parameters drawn inside [lo, hi].
struct RuleDraw {
  double a, b, h, x;
};

inline RuleDraw draw_rule(Rng& rng, double lo, double hi) {
  const double a = rng.uniform(lo, lo + 0.8 * (hi - lo));
  const double b = a + (hi - a) * rng.uniform(0.05, 1.0);
  const double h = rng.uniform();
  const double x_lo = a + h * (b - a) / 2.0;
  const double x_hi = b - h * (b - a) / 2.0;
  return {a, b, h, rng.uniform(std::min(x_lo, x_hi), std::max(x_lo, x_hi))};
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(VerificationReport& r) : report_(r) {}

  // Registers `observed <= limit + slack`; returns whether it held.
  bool check(const std::string& name, const std::string& fn, double observed, double limit,
             std::vector<std::pair<std::string, double>> inputs, bool informational = false,
             double slack = 0.0) {
    CheckTally& t = informational ? report_.informational[name] : report_.checks[name];
    ++t.draws;
    if (limit > 0.0) t.worst_ratio = std::max(t.worst_ratio, observed / limit);
    const bool ok = observed <= limit + slack;
    if (!ok) {
      ++t.violations;
      if (!informational) report_.violations.push_back({name, fn, std::move(inputs), observed, limit});
    }
    return ok;
  }

 private:
  VerificationReport& report_;
};

inline double slack_for(double bound) { return kBoundSlack * (1.0 + bound); }

inline void verify_single_interval(const CorpusEntry& entry, const DifferentiableFunction& fn,
                                   Rng& rng, Recorder& rec) {
  const RuleDraw d = draw_rule(rng, entry.lo, entry.hi);
  const RulePoint rp(d.a, d.b, d.h, d.x);
  std::vector<std::pair<std::string, double>> in = {
      {"a", rp.a()}, {"b", rp.b()}, {"h", rp.h()}, {"x", rp.x()}};

  const double integral = reference_integrate(fn.f, rp.a(), rp.b(), kReferenceTolerance);
  const double l1 = l1_norm(fn.d2f, rp.a(), rp.b(), kDefaultNormTolerance).value;

  rec.check("identity", entry.expr, identity_defect(fn, rp, kIdentityTolerance),
            10.0 * kIdentityTolerance, in);

  const double err = std::abs(integral - single_rule(fn, rp));
  const double tight = tight_bound(rp, l1).value;
  rec.check("tight-bound", entry.expr, err, tight, in, false, slack_for(tight));
  const double printed = tight_bound_as_printed(rp, l1).value;
  rec.check("tight-bound-as-printed", entry.expr, err, printed, in, true, slack_for(printed));

  const double coarse = coarse_bound(rp.a(), rp.b(), rp.h(), l1, CoarseForm::corrected).value;
  const double coarse_p = coarse_bound(rp.a(), rp.b(), rp.h(), l1, CoarseForm::paper).value;
  rec.check("order-tight-coarse", entry.expr, tight, coarse, in, false, slack_for(coarse));
  rec.check("order-coarse-paper", entry.expr, coarse, coarse_p, in, false, slack_for(coarse_p));

  const RulePoint mid(rp.a(), rp.b(), rp.h(), rp.midpoint());
  const double mid_err = std::abs(integral - single_rule(fn, mid));
  const double mid_bound = midpoint_bound(rp.a(), rp.b(), rp.h(), l1).value;
  rec.check("midpoint-bound", entry.expr, mid_err, mid_bound, in, false, slack_for(mid_bound));
  const double mid_printed = midpoint_bound_as_printed(rp.a(), rp.b(), rp.h(), l1).value;
  rec.check("midpoint-bound-as-printed", entry.expr, mid_err, mid_printed, in, true,
            slack_for(mid_printed));

  const RulePoint trap(rp.a(), rp.b(), 1.0, rp.midpoint());
  const double trap_err = std::abs(integral - single_rule(fn, trap));
  const double trap_bound = trapezoid_special_bound(rp.a(), rp.b(), l1).value;
  rec.check("trapezoid-h1-bound", entry.expr, trap_err, trap_bound, in, false, slack_for(trap_bound));

  const double avg_err = std::abs(integral - averaged_endpoint_rule(fn, rp.a(), rp.b(), rp.h()));
  const double avg_bound = averaged_endpoint_bound(rp.a(), rp.b(), rp.h(), l1).value;
  rec.check("averaged-endpoint-bound", entry.expr, avg_err, avg_bound, in, false, slack_for(avg_bound));
}

inline void verify_composite(const CorpusEntry& entry, const DifferentiableFunction& fn, Rng& rng,
                             Recorder& rec) {
  const RuleDraw d = draw_rule(rng, entry.lo, entry.hi);
  const std::size_t n = 1 + rng.below(8);
  std::vector<double> pts{d.a};
  std::vector<double> cuts;
  for (std::size_t i = 1; i < n; ++i) cuts.push_back(rng.uniform(d.a, d.b));
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (c > pts.back() && c < d.b) pts.push_back(c);
  }
  pts.push_back(d.b);
  const Partition p(pts);

  RuleConfig cfg;
  cfg.delta = rng.uniform();
  switch (rng.below(4)) {
    case 0: cfg.xi = XiStrategy::midpoint; break;
    case 1: cfg.xi = XiStrategy::left_admissible; break;
    case 2: cfg.xi = XiStrategy::right_admissible; break;
    default:
      cfg.xi = XiStrategy::explicit_points;
      for (std::size_t i = 0; i < p.intervals(); ++i) {
        const double lo = p.left(i) + cfg.delta * p.width(i) / 2.0;
        const double hi = p.right(i) - cfg.delta * p.width(i) / 2.0;
        cfg.explicit_xi.push_back(rng.uniform(std::min(lo, hi), std::max(lo, hi)));
      }
  }
  const CompositeResult res = composite_rule(fn, p, cfg);
  const double integral = reference_integrate(fn.f, p.a(), p.b(), kReferenceTolerance);
  const double err = std::abs(integral - res.estimate);
  std::vector<std::pair<std::string, double>> in = {{"a", p.a()},
                                                    {"b", p.b()},
                                                    {"n", static_cast<double>(p.intervals())},
                                                    {"delta", cfg.delta},
                                                    {"xi", static_cast<double>(cfg.xi)}};
  rec.check("composite-per-interval", entry.expr, err, res.per_interval_bound, in, false,
            slack_for(res.per_interval_bound));
  rec.check("composite-aggregate", entry.expr, err, res.aggregate_bound, in, false,
            slack_for(res.aggregate_bound));
  rec.check("composite-mode-order", entry.expr, res.per_interval_bound, res.aggregate_bound, in,
            false, slack_for(res.aggregate_bound));
}

inline void verify_means(Rng& rng, Recorder& rec) {
  const double a = rng.uniform(0.1, 5.0);
  const double b = a + rng.uniform(0.01, 5.0);
  const double h = rng.uniform();
  const double x_lo = a + h * (b - a) / 2.0;
  const double x_hi = b - h * (b - a) / 2.0;
  const double x = rng.uniform(std::min(x_lo, x_hi), std::max(x_lo, x_hi));
  double r = rng.uniform(-3.0, 4.0);
  if (std::abs(r) < 1e-3 || std::abs(r + 1.0) < 1e-3) r = 2.0;

  auto record = [&](const MeansInequalityReport& m) {
    const std::string name = std::string("means-") + std::string(family_name(m.family));
    std::vector<std::pair<std::string, double>> in = {
        {"a", m.a}, {"b", m.b}, {"h", m.h}, {"x", m.x}};
    if (m.family == MeansFamily::power) in.emplace_back("r", m.r);
    rec.check(name, "", m.lhs, m.rhs, in, false, detail::kMeansSlack * (1.0 + m.rhs));
    rec.check(name + "-as-printed", "", m.lhs, m.rhs_as_printed, in, true,
              detail::kMeansSlack * (1.0 + m.rhs_as_printed));
  };
  record(power_mean_inequality(a, b, r, h, x));
  record(reciprocal_inequality(a, b, h, x));
  record(log_mean_inequality(a, b, h, x));
  const IdentricRatioBound ir = identric_ratio_bound(a, b);
  rec.check("means-identric-ratio", "", std::abs(ir.log_ratio), ir.bound, {{"a", a}, {"b", b}},
            false, detail::kMeansSlack * (1.0 + ir.bound));
}

}  // namespace detail

/// Runs `samples` random draws of every check for every corpus entry, plus
/// `samples` draws of each means family.
inline VerificationReport run_verification(const std::vector<CorpusEntry>& corpus,
                                           std::uint64_t seed, std::size_t samples) {
  VerificationReport report;
  report.seed = seed;
  report.samples = samples;
  detail::Recorder rec(report);
  Rng rng(seed);
  for (const CorpusEntry& entry : corpus) {
    const DifferentiableFunction fn = to_differentiable(parse(entry.expr));
    for (std::size_t s = 0; s < samples; ++s) {
      detail::verify_single_interval(entry, fn, rng, rec);
      detail::verify_composite(entry, fn, rng, rec);
    }
  }
  for (std::size_t s = 0; s < samples; ++s) detail::verify_means(rng, rec);
  return report;
}

}  // namespace l1quad
