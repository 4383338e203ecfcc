// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "l1quad/l1quad.hpp"
#include "oracles.hpp"

using namespace l1quad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

RulePoint draw_point(Rng& rng, double lo, double hi) {
  const RuleDraw d = draw_rule(rng, lo, hi);
  return RulePoint(d.a, d.b, d.h, d.x);
}

Outcome identity() {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  for (const CorpusEntry& c : builtin_corpus()) {
    const DifferentiableFunction f = to_differentiable(parse(c.expr));
    for (int i = 0; i < 50; ++i) {
      worst = std::max(worst, identity_defect(f, draw_point(rng, c.lo, c.hi), 1e-11));
    }
  }
  const double s = seconds_since(t0);
  return {worst <= 1e-9 && s < 30.0, fmt("worst defect %.3g over 400 draws in %.2fs", worst, s)};
}

Outcome tight_bound_validity() {
  const VerificationReport r = run_verification(builtin_corpus(), 202, 200);
  const CheckTally& t = r.checks.at("tight-bound");
  const DifferentiableFunction cube = to_differentiable(parse("x^3"));
  const RulePoint rp(0, 1, 0, 0.5);
  const double ratio = tight_bound(rp, 3).value / std::abs(0.25 - single_rule(cube, rp));
  const bool ok = r.violation_count() == 0 && t.draws == 1600 && ratio <= 10.0;
  return {ok, fmt("%.0f violations in all checks, worst tight ratio %.3f, t^3 ratio %.3f",
                  static_cast<double>(r.violation_count()), t.worst_ratio, ratio)};
}

Outcome reductions() {
  Rng rng(303);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-5, 5), b = a + rng.uniform(0.01, 5), x = rng.uniform(a, b);
    const double l1 = rng.uniform(0, 10);
    mismatches += tight_bound(RulePoint(a, b, 0, x), l1).value !=
                  classical_bound(ClassicalKind::barnett_l1, a, b, x, l1).value;
  }
  const DifferentiableFunction f = to_differentiable(parse("exp(x)*sin(x)"));
  const double q1 = single_rule(f, RulePoint(-1, 2, 1, 0.5));
  const double q2 = single_rule(f, RulePoint(-1, 2, 1, 0.5 + 1e-13));
  return {mismatches == 0 && q1 == q2,
          fmt("%.0f/100 Barnett mismatches, h=1 rule spread %.3g", mismatches, std::abs(q1 - q2))};
}

Outcome exp_four_panels() {
  const DifferentiableFunction f = to_differentiable(parse("exp(x)"));
  const CompositeResult r = perturbed_midpoint(f, Partition::uniform(0, 1, 4));
  const double e = std::numbers::e;
  double want = 0.0;
  for (int i = 0; i < 4; ++i) want += 0.25 * std::exp(0.125 + 0.25 * i);
  const double err = std::abs(e - 1 - r.estimate);
  const double want_bound = (e - 1) / 128.0;
  const bool ok = std::abs(r.estimate - want) <= 1e-5 &&
                  std::abs(err - std::abs(e - 1 - want)) <= 1e-5 &&
                  std::abs(r.certified_bound - want_bound) <= 1e-5 && err <= r.certified_bound;
  return {ok, fmt("M=%.12f error=%.6g bound=%.6g", r.estimate, err, r.certified_bound)};
}

Outcome scaling() {
  double worst = 0.0;
  for (const char* expr : {"exp(x)", "sin(x)"}) {
    const DifferentiableFunction f = to_differentiable(parse(expr));
    Partition p = Partition::uniform(0, 1, 4);
    double prev = perturbed_midpoint(f, p).certified_bound;
    for (int level = 0; level < 6; ++level) {
      p = p.refined();
      const double now = perturbed_midpoint(f, p).certified_bound;
      worst = std::max(worst, std::abs(prev / now - 4.0));
      prev = now;
    }
  }
  return {worst <= 1e-6, fmt("max |ratio - 4| = %.3g over 6 levels", worst)};
}

Outcome adaptive() {
  const DifferentiableFunction f = to_differentiable(parse("exp(x)"));
  const auto t0 = Clock::now();
  const CompositeResult r = adaptive_integrate(f, 0, 1, 1e-6, RuleConfig{});
  const double s = seconds_since(t0);
  const double err = std::abs(std::numbers::e - 1 - r.estimate);
  const bool ok = !r.cap_reached && r.certified_bound <= 1e-6 && err <= 1e-6 && s < 1.0;
  return {ok, fmt("bound %.3g, error %.3g, %.4fs", r.certified_bound, err, s) +
                  " with " + std::to_string(r.per_interval.size()) + " intervals"};
}

Outcome means() {
  Rng rng(404);
  int chain_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(0.01, 10), b = a + rng.uniform(1e-6, 10);
    const double eps = 1e-14 * b;
    const double h = special_mean(MeanKind::harmonic, a, b).value;
    const double g = special_mean(MeanKind::geometric, a, b).value;
    const double l = special_mean(MeanKind::logarithmic, a, b).value;
    const double id = special_mean(MeanKind::identric, a, b).value;
    const double ar = special_mean(MeanKind::arithmetic, a, b).value;
    chain_failures += !(h <= g + eps && g <= l + eps && l <= id + eps && id <= ar + eps);
  }
  int family_failures = 0;
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(0.1, 5), b = a + rng.uniform(0.01, 5), hh = rng.uniform();
    const double x = rng.uniform(a + hh * (b - a) / 2, b - hh * (b - a) / 2);
    double r = rng.uniform(-3, 4);
    if (std::abs(r) < 1e-3 || std::abs(r + 1) < 1e-3) r = 2.0;
    family_failures += !power_mean_inequality(a, b, r, hh, x).holds;
    family_failures += !reciprocal_inequality(a, b, hh, x).holds;
    family_failures += !log_mean_inequality(a, b, hh, x).holds;
  }
  const double e = std::numbers::e;
  const bool spots =
      std::abs(special_mean(MeanKind::logarithmic, 1, e).value - (e - 1)) <= 1e-12 &&
      std::abs(special_mean(MeanKind::identric, 1, e).value - std::exp(1 / (e - 1))) <= 1e-12 &&
      std::abs(special_mean(MeanKind::logarithmic, 1, 3).value - 2 / std::log(3.0)) <= 1e-12 &&
      std::abs(special_mean(MeanKind::geometric, 1, 3).value - std::sqrt(3.0)) <= 1e-12;
  return {chain_failures == 0 && family_failures == 0 && spots,
          fmt("%.0f chain failures, %.0f family failures, spot values ", chain_failures,
              family_failures) + (spots ? "ok" : "off")};
}

Outcome parser() {
  const auto t0 = Clock::now();
  Rng rng(505);
  double worst_round_trip = 0.0, worst_d1 = 0.0, worst_d2 = 0.0;
  for (const CorpusEntry& c : parser_corpus()) {
    const Expr e = parse(c.expr);
    const Expr back = parse(render(e));
    const DifferentiableFunction f = to_differentiable(e);
    const double pad = 0.02 * (c.hi - c.lo);
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(c.lo + pad, c.hi - pad);
      const double v = evaluate(e, x);
      worst_round_trip =
          std::max(worst_round_trip, std::abs(evaluate(back, x) - v) / std::max(1.0, std::abs(v)));
      const double d1 = f.df(x), d2 = f.d2f(x);
      worst_d1 = std::max(worst_d1, std::abs(d1 - oracle::central_first(f.f, x)) / (1 + std::abs(d1)));
      worst_d2 = std::max(worst_d2, std::abs(d2 - oracle::central_first(f.df, x)) / (1 + std::abs(d2)));
    }
  }
  const double s = seconds_since(t0);
  const bool ok = worst_round_trip <= 1e-12 && worst_d1 <= 1e-5 && worst_d2 <= 1e-5 && s < 10.0;
  return {ok, fmt("round trip %.3g, f' %.3g, f'' %.3g", worst_round_trip, worst_d1, worst_d2) +
                  fmt(" in %.2fs", s)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 identity holds across the corpus", identity},
      {"2 certified bounds never violated", tight_bound_validity},
      {"3 classical reductions are exact", reductions},
      {"4 composite midpoint on exp, n=4", exp_four_panels},
      {"5 certificate scales by 4 per halving", scaling},
      {"6 adaptive refinement reaches 1e-6 in under 1s", adaptive},
      {"7 means chain and inequality families", means},
      {"8 parser round trip and derivatives", parser},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %s  (%s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
