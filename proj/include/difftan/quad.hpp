#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "difftan/error.hpp"

namespace difftan {

using Rational = mpq_class;

// a + b*sqrt(d). d == 0 exactly when b == 0.
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(const Rational& a) : a_(a) {}  // NOLINT
  QuadNumber(const Rational& a, const Rational& b, std::uint64_t d);

  static QuadNumber sqrt(std::uint64_t d);
  static QuadNumber fraction(long num, long den);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::uint64_t d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;

  QuadNumber inverse() const;
  QuadNumber conjugate() const;

  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  QuadNumber& operator*=(const QuadNumber& o);
  QuadNumber& operator/=(const QuadNumber& o);

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }
  QuadNumber operator-() const;

  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y);

  // Parseable by the number grammar of the DSL.
  std::string to_string() const;

  // Total order used for map keys and canonical renderings.
  bool lex_less(const QuadNumber& o) const;

 private:
  void normalize();
  static std::uint64_t join(const QuadNumber& x, const QuadNumber& y);

  Rational a_{0};
  Rational b_{0};
  std::uint64_t d_ = 0;
};

bool is_squarefree(std::uint64_t d);

enum class QuadOp { Add, Mul, Neg, Inv };
QuadNumber quad_arith(QuadOp op, const QuadNumber& x, const QuadNumber& y = QuadNumber());

}  // namespace difftan
