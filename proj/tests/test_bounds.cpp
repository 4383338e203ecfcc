#include <gtest/gtest.h>

#include <cmath>

#include "l1quad/bounds.hpp"
#include "l1quad/corpus.hpp"
#include "l1quad/expr.hpp"
#include "l1quad/seminorm.hpp"
#include "oracles.hpp"

namespace l1quad {
namespace {

DifferentiableFunction fn(const char* text) { return to_differentiable(parse(text)); }

TEST(TightBound, Examples) {
  EXPECT_DOUBLE_EQ(tight_bound(RulePoint(0, 1, 0, 0.5), 3).value, 0.375);
  EXPECT_DOUBLE_EQ(tight_bound(RulePoint(0, 2, 0, 0), 1).value, 2.0);
  // At h=1 the kernel peaks at the endpoints: ½((b−a)/2)² = 1/8.
  EXPECT_DOUBLE_EQ(tight_bound(RulePoint(0, 1, 1, 0.5), 2).value,
                   trapezoid_special_bound(0, 1, 2).value);
  EXPECT_EQ(tight_bound(RulePoint(0, 1, 0, 0.5), 3).formula, BoundFormula::tight);
}

TEST(TightBound, DominatesObservedResidual) {
  // f = t³ on [0,1], h = 0, x = ½: residual 1/8, bound 3/8.
  const DifferentiableFunction f = fn("x^3");
  const RulePoint rp(0, 1, 0, 0.5);
  const double residual = std::abs(0.25 - single_rule(f, rp));
  EXPECT_DOUBLE_EQ(residual, 0.125);
  EXPECT_LE(residual, tight_bound(rp, 3).value);
}

TEST(TightBound, PrintedFormFailsForLargeH) {
  // f = t², [0,1], x = ½, h = 0.8: ∫K f″ = (2/3)[((1−h)/2)³ + (h/2)³] = 0.0433…,
  // the t = x closed form gives ((1−h)/2)² = 0.01.
  const DifferentiableFunction f = fn("x^2");
  const RulePoint rp(0, 1, 0.8, 0.5);
  const double residual = std::abs(1.0 / 3.0 - single_rule(f, rp));
  EXPECT_NEAR(residual, 2.0 / 3.0 * (0.001 + 0.064), 1e-14);
  EXPECT_NEAR(tight_bound_as_printed(rp, 2).value, 0.01, 1e-15);
  EXPECT_GT(residual, tight_bound_as_printed(rp, 2).value);
  EXPECT_LE(residual, tight_bound(rp, 2).value);
}

TEST(TightBound, AgreesWithPrintedFormUpToHalf) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const double a = rng.uniform(-3, 3), b = a + rng.uniform(0.1, 4), h = rng.uniform(0, 0.5);
    const RulePoint rp(a, b, h, rng.uniform(a + h * (b - a) / 2, b - h * (b - a) / 2));
    EXPECT_NEAR(tight_bound(rp, 1.7).value, tight_bound_as_printed(rp, 1.7).value,
                1e-15 * tight_bound(rp, 1.7).value);
  }
}

TEST(CoarseBound, Examples) {
  EXPECT_DOUBLE_EQ(coarse_bound(0, 1, 0, 1, CoarseForm::paper).value, 0.5);
  EXPECT_DOUBLE_EQ(coarse_bound(0, 1, 0.5, 2, CoarseForm::paper).value, 0.5625);
  // max(h/2, 1−h)² at h=1 is ¼: the endpoint branch of the kernel.
  EXPECT_DOUBLE_EQ(coarse_bound(0, 1, 1, 1, CoarseForm::corrected).value, 0.125);
  EXPECT_DOUBLE_EQ(coarse_bound(0, 1, 0, 1).value, 0.5);
  EXPECT_EQ(coarse_bound(0, 1, 0, 1).formula, BoundFormula::coarse_corrected);
}

TEST(TrapezoidSpecialBound, Examples) {
  const DifferentiableFunction sq = fn("x^2");
  const double residual = std::abs(1.0 / 3.0 - single_rule(sq, RulePoint(0, 1, 1, 0.5)));
  EXPECT_NEAR(residual, 1.0 / 12.0, 1e-15);
  EXPECT_DOUBLE_EQ(trapezoid_special_bound(0, 1, 2).value, 0.25);
  EXPECT_EQ(trapezoid_special_bound(0, 1, 0).value, 0.0);
  EXPECT_DOUBLE_EQ(trapezoid_special_bound(0, 2, 1).value, 0.5);
}

TEST(MidpointBound, Examples) {
  const DifferentiableFunction cube = fn("x^3");
  EXPECT_DOUBLE_EQ(midpoint_bound(0, 1, 0, 3).value, 0.375);
  EXPECT_LE(std::abs(0.25 - single_rule(cube, RulePoint(0, 1, 0, 0.5))), 0.375);
  EXPECT_DOUBLE_EQ(midpoint_bound(0, 1, 0.5, 1).value, 1.0 / 32.0);
  EXPECT_DOUBLE_EQ(midpoint_bound(0, 1, 1, 1).value, 0.125);
  EXPECT_EQ(midpoint_bound_as_printed(0, 1, 1, 1).value, 0.0);
  EXPECT_DOUBLE_EQ(midpoint_bound_as_printed(0, 1, 0.5, 1).value, 1.0 / 32.0);
}

TEST(AveragedEndpointBound, Examples) {
  EXPECT_DOUBLE_EQ(averaged_endpoint_bound(0, 1, 0, 1).value, 0.5);
  EXPECT_DOUBLE_EQ(averaged_endpoint_bound(0, 1, 1, 1).value, 0.125);
  EXPECT_EQ(averaged_endpoint_bound(0, 1, 0.3, 0).value, 0.0);
}

TEST(AveragedEndpointRule, MatchesAveragedIdentity) {
  // Average of the two rules at x=a and x=b, using the identity's algebra
  // directly (valid for any x in [a,b]).
  const DifferentiableFunction f = fn("exp(x) - x^3");
  const double a = -0.4, b = 1.3, h = 0.35, len = b - a, mid = 0.5 * (a + b);
  auto q = [&](double x) {
    return len * (1 - h) * f.f(x) - len * (1 - h) * (x - mid) * f.df(x) +
           h * len / 2 * (f.f(a) + f.f(b)) - h * h * len * len / 8 * (f.df(b) - f.df(a));
  };
  EXPECT_NEAR(averaged_endpoint_rule(f, a, b, h), 0.5 * (q(a) + q(b)), 1e-13);
}

TEST(TrapezoidSupForm, Value) {
  EXPECT_DOUBLE_EQ(perturbed_trapezoid_as_printed_eq13(0, 2, 3).value, 4.0);
}

TEST(ClassicalBound, Examples) {
  EXPECT_DOUBLE_EQ(classical_bound(ClassicalKind::barnett_l1, 0, 1, 0.5, 3).value, 0.375);
  EXPECT_EQ(classical_bound(ClassicalKind::barnett_l1, 0, 1, 0.5, 3).value,
            tight_bound(RulePoint(0, 1, 0, 0.5), 3).value);
  EXPECT_DOUBLE_EQ(classical_bound(ClassicalKind::ostrowski_sup, 0, 1, 0.5, 1).value, 0.25);
  EXPECT_DOUBLE_EQ(classical_bound(ClassicalKind::dragomir_wang_l1, 0, 1, 0.5, 1).value, 0.5);
  EXPECT_THROW(classical_bound(ClassicalKind::ostrowski_sup, 0, 1, 1.5, 1), DomainError);
}

TEST(ClassicalBound, BaselinesHold) {
  const DifferentiableFunction f = fn("sin(2*x) + x^2");
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-2, 1), b = a + rng.uniform(0.2, 2), x = rng.uniform(a, b);
    const double integral = oracle::gauss_legendre(f.f, a, b);
    const double ostro_err = std::abs((b - a) * f.f(x) - integral);
    EXPECT_LE(ostro_err, classical_bound(ClassicalKind::ostrowski_sup, a, b, x,
                                         sup_norm(f.df, a, b).value).value * (1 + 1e-9));
    EXPECT_LE(ostro_err, classical_bound(ClassicalKind::dragomir_wang_l1, a, b, x,
                                         l1_norm(f.df, a, b).value).value * (1 + 1e-9));
    EXPECT_LE(std::abs(single_rule(f, RulePoint(a, b, 0, x)) - integral),
              classical_bound(ClassicalKind::barnett_l1, a, b, x, l1_norm(f.d2f, a, b).value).value *
                  (1 + 1e-9));
  }
}

TEST(Bounds, RejectBadInputs) {
  EXPECT_THROW(tight_bound(RulePoint(0, 1, 0, 0.5), -1), DomainError);
  EXPECT_THROW(coarse_bound(0, 1, 1.5, 1), DomainError);
  EXPECT_THROW(midpoint_bound(1, 0, 0, 1), DomainError);
  EXPECT_THROW(trapezoid_special_bound(0, 1, std::nan("")), DomainError);
}

TEST(BoundProperties, Ordering) {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-3, 3), b = a + rng.uniform(0.1, 4), h = rng.uniform();
    const RulePoint rp(a, b, h, rng.uniform(a + h * (b - a) / 2, b - h * (b - a) / 2));
    const double l1 = rng.uniform(0, 10);
    const double tight = tight_bound(rp, l1).value;
    const double corrected = coarse_bound(a, b, h, l1, CoarseForm::corrected).value;
    const double paper = coarse_bound(a, b, h, l1, CoarseForm::paper).value;
    EXPECT_LE(tight, corrected * (1 + 1e-14));
    EXPECT_LE(corrected, paper * (1 + 1e-14));
  }
}

TEST(BoundProperties, BarnettReductionIsExact) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-3, 3), b = a + rng.uniform(0.1, 4), x = rng.uniform(a, b);
    const double l1 = rng.uniform(0, 10);
    EXPECT_EQ(tight_bound(RulePoint(a, b, 0, x), l1).value,
              classical_bound(ClassicalKind::barnett_l1, a, b, x, l1).value);
  }
}

TEST(BoundProperties, MinimisedAtMidpointAndDecreasingInH) {
  const double a = 0.5, b = 2.5, l1 = 1.3, mid = 1.5;
  for (double h : {0.0, 0.2, 0.45, 0.7, 0.95}) {
    const double at_mid = tight_bound(RulePoint(a, b, h, mid), l1).value;
    for (double off : {0.01, 0.1, 0.3}) {
      const double lo = a + h * (b - a) / 2;
      const double x = std::max(lo, mid - off * (b - a));
      EXPECT_LE(at_mid, tight_bound(RulePoint(a, b, h, x), l1).value);
    }
  }
  // Over h at x = mid the bound falls until the endpoint branch takes over.
  double previous = tight_bound(RulePoint(a, b, 0, mid), l1).value;
  for (int k = 1; k <= 10; ++k) {
    const double v = tight_bound(RulePoint(a, b, 0.05 * k, mid), l1).value;
    EXPECT_LE(v, previous);
    previous = v;
  }
}

TEST(BoundProperties, ValidAcrossCorpus) {
  Rng rng(10);
  for (const CorpusEntry& c : builtin_corpus()) {
    const DifferentiableFunction f = fn(c.expr.c_str());
    for (int i = 0; i < 50; ++i) {
      const double a = rng.uniform(c.lo, c.lo + 0.8 * (c.hi - c.lo));
      const double b = a + (c.hi - a) * rng.uniform(0.05, 1.0);
      const double h = rng.uniform();
      const RulePoint rp(a, b, h, rng.uniform(a + h * (b - a) / 2, b - h * (b - a) / 2));
      const double integral = oracle::gauss_legendre(f.f, a, b);
      const double l1 = l1_norm(f.d2f, a, b).value;
      const double tight = tight_bound(rp, l1).value;
      EXPECT_LE(std::abs(integral - single_rule(f, rp)), tight + 1e-9 * (1 + tight)) << c.expr;
      const double mb = midpoint_bound(a, b, h, l1).value;
      EXPECT_LE(std::abs(integral - single_rule(f, RulePoint(a, b, h, rp.midpoint()))),
                mb + 1e-9 * (1 + mb));
      const double tb = trapezoid_special_bound(a, b, l1).value;
      EXPECT_LE(std::abs(integral - single_rule(f, RulePoint(a, b, 1, rp.midpoint()))),
                tb + 1e-9 * (1 + tb));
    }
  }
}

}  // namespace
}  // namespace l1quad
