#include "difftan/quad.hpp"

#include <sstream>

namespace difftan {

bool is_squarefree(std::uint64_t d) {
  if (d < 2) return false;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QuadNumber::QuadNumber(const Rational& a, const Rational& b, std::uint64_t d)
    : a_(a), b_(b), d_(d) {
  if (d != 0 && !is_squarefree(d)) {
    fail(ErrorCode::InvalidParameter,
         "discriminant " + std::to_string(d) + " is not squarefree");
  }
  if (d == 0 && b != 0) {
    fail(ErrorCode::InvalidParameter, "irrational part needs a discriminant");
  }
  normalize();
}

QuadNumber QuadNumber::sqrt(std::uint64_t d) { return QuadNumber(0, 1, d); }

QuadNumber QuadNumber::fraction(long num, long den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return QuadNumber(q);
}

void QuadNumber::normalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (b_ == 0) d_ = 0;
}

std::uint64_t QuadNumber::join(const QuadNumber& x, const QuadNumber& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
  fail(ErrorCode::MixedDiscriminants, "cannot combine sqrt(" + std::to_string(x.d_) +
                                          ") with sqrt(" + std::to_string(y.d_) + ")");
}

int QuadNumber::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(static_cast<unsigned long>(d_));
  return lhs > rhs ? sa : sb;
}

QuadNumber QuadNumber::conjugate() const {
  QuadNumber r = *this;
  r.b_ = -r.b_;
  return r;
}

QuadNumber QuadNumber::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  Rational norm = a_ * a_ - b_ * b_ * Rational(static_cast<unsigned long>(d_));
  QuadNumber r;
  r.a_ = a_ / norm;
  r.b_ = -b_ / norm;
  r.d_ = d_;
  r.normalize();
  return r;
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  d_ = join(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
  d_ = join(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
  std::uint64_t d = join(*this, o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(static_cast<unsigned long>(d));
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& o) {
  join(*this, o);
  return *this *= o.inverse();
}

QuadNumber QuadNumber::operator-() const {
  QuadNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool QuadNumber::lex_less(const QuadNumber& o) const {
  if (d_ != o.d_) return d_ < o.d_;
  if (a_ != o.a_) return a_ < o.a_;
  return b_ < o.b_;
}

std::string QuadNumber::to_string() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_.get_str();
    return os.str();
  }
  if (a_ != 0) os << a_.get_str();
  Rational mag = abs(b_);
  if (b_ < 0) {
    os << '-';
  } else if (a_ != 0) {
    os << '+';
  }
  if (mag != 1) os << mag.get_str() << '*';
  os << "sqrt(" << d_ << ')';
  return os.str();
}

QuadNumber quad_arith(QuadOp op, const QuadNumber& x, const QuadNumber& y) {
  switch (op) {
    case QuadOp::Add: return x + y;
    case QuadOp::Mul: return x * y;
    case QuadOp::Neg: return -x;
    case QuadOp::Inv: return x.inverse();
  }
  fail(ErrorCode::Internal, "unknown operation");
}

}  // namespace difftan
