#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "l1quad/corpus.hpp"
#include "l1quad/expr.hpp"
#include "l1quad/seminorm.hpp"

namespace l1quad {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(L1Norm, Examples) {
  EXPECT_NEAR(l1_norm([](double t) { return 6.0 * t; }, 0, 1).value, 3.0, 1e-10);
  EXPECT_NEAR(l1_norm([](double t) { return -std::sin(t); }, 0, kPi).value, 2.0, 1e-10);
  EXPECT_EQ(l1_norm([](double) { return 0.0; }, 0, 1).value, 0.0);
}

TEST(L1Norm, SignChanges) {
  EXPECT_NEAR(l1_norm([](double t) { return std::sin(t); }, 0, 2 * kPi).value, 4.0, 1e-10);
  EXPECT_NEAR(l1_norm([](double t) { return t; }, -1, 2).value, 2.5, 1e-10);
  EXPECT_NEAR(l1_norm([](double t) { return std::cos(5 * t); }, 0, kPi).value, 2.0, 1e-10);
}

TEST(L1Norm, ReportsInputs) {
  const NormEstimate n = l1_norm([](double t) { return t; }, 0, 1, 1e-9, NormKind::l1_of_first);
  EXPECT_EQ(n.kind, NormKind::l1_of_first);
  EXPECT_EQ(n.a, 0.0);
  EXPECT_EQ(n.b, 1.0);
  EXPECT_EQ(n.achieved_tolerance, 1e-9);
}

TEST(L1Norm, Errors) {
  EXPECT_THROW(l1_norm([](double t) { return t; }, 1, 0), DomainError);
  EXPECT_THROW(l1_norm([](double t) { return t; }, 0, 1, 0.0), DomainError);
  EXPECT_EQ(l1_norm([](double t) { return t; }, 2, 2).value, 0.0);
}

TEST(SignChangeBreakpoints, FindsRoots) {
  const auto cuts = sign_change_breakpoints([](double t) { return std::sin(t); }, 0.5, 7.0);
  ASSERT_EQ(cuts.size(), 4u);
  EXPECT_NEAR(cuts[1], kPi, 1e-11);
  EXPECT_NEAR(cuts[2], 2 * kPi, 1e-11);
}

TEST(SupNorm, Examples) {
  EXPECT_NEAR(sup_norm([](double t) { return std::cos(t); }, 0, kPi).value, 1.0, 1e-12);
  EXPECT_NEAR(sup_norm([](double t) { return 3 * t * t; }, -1, 2).value, 12.0, 1e-12);
  EXPECT_EQ(sup_norm([](double) { return 0.0; }, 0, 1).value, 0.0);
  // Peak strictly inside a grid cell.
  EXPECT_NEAR(sup_norm([](double t) { return 1.0 - (t - 0.3) * (t - 0.3); }, 0, 1).value, 1.0,
              1e-12);
}

TEST(SeminormProperties, Additivity) {
  const DifferentiableFunction f = to_differentiable(parse("sin(3*x)*exp(x/2)"));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-2, 0), b = rng.uniform(1, 3), c = rng.uniform(a, b);
    const double whole = l1_norm(f.d2f, a, b).value;
    EXPECT_NEAR(whole, l1_norm(f.d2f, a, c).value + l1_norm(f.d2f, c, b).value,
                1e-9 * (1 + whole));
  }
}

TEST(SeminormProperties, Homogeneity) {
  const DifferentiableFunction f = to_differentiable(parse("x^3 - 2*x"));
  for (double lambda : {-3.0, 0.5, 7.0}) {
    const double base = l1_norm(f.d2f, -1, 2).value;
    const double scaled = l1_norm([&](double t) { return lambda * f.d2f(t); }, -1, 2).value;
    EXPECT_NEAR(scaled, std::abs(lambda) * base, 1e-9 * (1 + scaled));
  }
}

TEST(SeminormProperties, PartitionSumMatchesWhole) {
  for (const CorpusEntry& c : builtin_corpus()) {
    const DifferentiableFunction f = to_differentiable(parse(c.expr));
    const double whole = l1_norm(f.d2f, c.lo, c.hi).value;
    double parts = 0.0;
    for (int i = 0; i < 16; ++i) {
      parts += l1_norm(f.d2f, c.lo + (c.hi - c.lo) * i / 16.0, c.lo + (c.hi - c.lo) * (i + 1) / 16.0)
                   .value;
    }
    EXPECT_NEAR(whole, parts, 1e-9 * (1 + whole)) << c.expr;
  }
}

TEST(SeminormProperties, L1NoMoreThanLengthTimesSup) {
  for (const CorpusEntry& c : builtin_corpus()) {
    const DifferentiableFunction f = to_differentiable(parse(c.expr));
    const double l1 = l1_norm(f.d2f, c.lo, c.hi).value;
    const double sup = sup_norm(f.d2f, c.lo, c.hi).value;
    EXPECT_LE(l1, (c.hi - c.lo) * sup * (1 + 1e-9)) << c.expr;
  }
}

}  // namespace
}  // namespace l1quad
