#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "difftan/quad.hpp"

using difftan::ErrorCode;
using difftan::QuadNumber;
using difftan::Rational;

namespace {

QuadNumber q(long a, long b, std::uint64_t d) { return QuadNumber(Rational(a), Rational(b), d); }

long double approx(const QuadNumber& x) {
  return x.a().get_d() + x.b().get_d() * std::sqrt(static_cast<long double>(x.d()));
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const difftan::Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST(Quad, ConjugateSumIsRational) {
  QuadNumber s = q(1, 1, 2) + q(2, -1, 2);
  EXPECT_EQ(s, QuadNumber(3));
  EXPECT_TRUE(s.is_rational());
  EXPECT_EQ(s.d(), 0u);
}

TEST(Quad, InverseOfOnePlusRootTwo) {
  QuadNumber x = q(1, 1, 2);
  QuadNumber inv = x.inverse();
  EXPECT_EQ(inv, q(-1, 1, 2));
  EXPECT_EQ(x * inv, QuadNumber(1));
}

TEST(Quad, ZeroAbsorbs) {
  EXPECT_TRUE((QuadNumber(0) * q(3, 5, 7)).is_zero());
  EXPECT_EQ(difftan::quad_arith(difftan::QuadOp::Mul, QuadNumber(0), q(3, 5, 7)), QuadNumber(0));
}

TEST(Quad, ArithDispatch) {
  QuadNumber x = q(1, 1, 2), y = q(2, -1, 2);
  EXPECT_EQ(difftan::quad_arith(difftan::QuadOp::Add, x, y), QuadNumber(3));
  EXPECT_EQ(difftan::quad_arith(difftan::QuadOp::Neg, x), q(-1, -1, 2));
  EXPECT_EQ(difftan::quad_arith(difftan::QuadOp::Inv, x), q(-1, 1, 2));
}

TEST(Quad, Errors) {
  EXPECT_EQ(code_of([] { QuadNumber(0).inverse(); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([] { (void)(QuadNumber::sqrt(2) + QuadNumber::sqrt(3)); }), ErrorCode::MixedDiscriminants);
  EXPECT_EQ(code_of([] { QuadNumber::sqrt(4); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { QuadNumber::sqrt(1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { QuadNumber(Rational(1), Rational(1), 0); }), ErrorCode::InvalidParameter);
}

TEST(Quad, RationalMixesWithAnyField) {
  EXPECT_EQ(QuadNumber::sqrt(3) * QuadNumber(2) + QuadNumber::fraction(1, 2), q(0, 2, 3) + QuadNumber::fraction(1, 2));
  EXPECT_EQ(QuadNumber::sqrt(2) * QuadNumber::sqrt(2), QuadNumber(2));
}

TEST(Quad, InverseRoundTripRandom) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-20, 20);
  for (std::uint64_t d : {2u, 3u, 5u, 6u, 7u}) {
    for (int i = 0; i < 100; ++i) {
      QuadNumber x(Rational(c(rng), 1 + rng() % 7), Rational(c(rng), 1 + rng() % 7), d);
      if (x.is_zero()) continue;
      EXPECT_EQ(x * x.inverse(), QuadNumber(1)) << x.to_string();
    }
  }
}

TEST(Quad, SignAgreesWithFloatingEstimate) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> c(-50, 50);
  for (int i = 0; i < 500; ++i) {
    QuadNumber x(Rational(c(rng)), Rational(c(rng)), 2);
    long double v = approx(x);
    // integers a + b*sqrt(2) with |a|,|b| <= 50 are never within 1e-3 of zero unless zero
    int expected = v > 1e-9L ? 1 : (v < -1e-9L ? -1 : 0);
    EXPECT_EQ(x.sign(), expected) << x.to_string();
  }
}

TEST(Quad, OrderingIsExact) {
  EXPECT_LT(q(1, 0, 0), QuadNumber::sqrt(2));
  EXPECT_LT(QuadNumber::sqrt(2), QuadNumber::fraction(3, 2));
  EXPECT_GT(q(-1, 1, 2), QuadNumber::fraction(41, 100));
  EXPECT_LT(q(-1, 1, 2), QuadNumber::fraction(42, 100));
}

TEST(Quad, Rendering) {
  EXPECT_EQ(QuadNumber(3).to_string(), "3");
  EXPECT_EQ(QuadNumber::fraction(-1, 2).to_string(), "-1/2");
  EXPECT_EQ(q(1, 1, 2).to_string(), "1+sqrt(2)");
  EXPECT_EQ(q(0, -1, 2).to_string(), "-sqrt(2)");
  EXPECT_EQ((QuadNumber::fraction(1, 2) * QuadNumber::sqrt(2)).to_string(), "1/2*sqrt(2)");
}

TEST(Quad, SquarefreeCheck) {
  EXPECT_TRUE(difftan::is_squarefree(2));
  EXPECT_TRUE(difftan::is_squarefree(30));
  EXPECT_FALSE(difftan::is_squarefree(12));
  EXPECT_FALSE(difftan::is_squarefree(49));
}
