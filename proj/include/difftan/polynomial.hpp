#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "difftan/quad.hpp"

namespace difftan {

using Exponent = std::vector<unsigned>;
using Point = std::vector<QuadNumber>;

unsigned total_degree(const Exponent& e);

// Multivariate polynomial over QuadNumber; zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponent, QuadNumber>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const QuadNumber& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(std::size_t nvars, const Exponent& e, const QuadNumber& c);
  // univariate from coefficient list, c[0] + c[1] t + ...
  static Polynomial univariate(const std::vector<QuadNumber>& coeffs);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }

  QuadNumber coefficient(const Exponent& e) const;
  QuadNumber constant_term() const;
  void add_term(const Exponent& e, const QuadNumber& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // -1 for the zero polynomial
  int degree() const;
  int lowest_degree() const;
  std::set<std::size_t> used_variables() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
  friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
  friend Polynomial operator*(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator*(const QuadNumber& c, const Polynomial& p);
  friend bool operator==(const Polynomial& x, const Polynomial& y) {
    return x.nvars_ == y.nvars_ && x.terms_ == y.terms_;
  }

  // Product with every term of total degree > max_degree discarded.
  Polynomial mul_truncated(const Polynomial& o, unsigned max_degree) const;
  Polynomial pow(unsigned k) const;
  Polynomial truncated(unsigned max_degree) const;
  Polynomial homogeneous_part(unsigned deg) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial derivative(std::size_t var, unsigned times) const;

  // Substitute inners[i] for variable i; inners share one variable count.
  Polynomial compose(std::span<const Polynomial> inners) const;
  QuadNumber evaluate(std::span<const QuadNumber> at) const;

  // Reinterpret in a larger variable set, variable i becoming offset+i.
  Polynomial embed(std::size_t new_nvars, std::size_t offset) const;

  // Division by x_var^k when every term is divisible; nullopt-like empty flag otherwise.
  bool divisible_by_power(std::size_t var, unsigned k) const;
  Polynomial divide_by_power(std::size_t var, unsigned k) const;

  // Exact division by a nonzero scalar multiple: returns true and sets g with *this == g*q.
  bool proportional_to(const Polynomial& q, QuadNumber* factor) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

  // Canonical strict order, for use as map keys.
  bool lex_less(const Polynomial& o) const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

std::vector<std::string> default_variable_names(std::size_t nvars);

// Polynomial map components, all in the same variable count.
using PolyMap = std::vector<Polynomial>;

PolyMap compose_maps(const PolyMap& outer, const PolyMap& inner);
bool all_zero(const PolyMap& m);
Point evaluate_map(const PolyMap& m, std::span<const QuadNumber> at);

// Truncated multivariate power series with coefficients of total degree <= order.
class TruncSeries {
 public:
  TruncSeries(std::size_t nvars, unsigned order);
  TruncSeries(const Polynomial& p, unsigned order);

  std::size_t nvars() const { return body_.nvars(); }
  unsigned order() const { return order_; }
  const Polynomial& polynomial() const { return body_; }
  QuadNumber coefficient(const Exponent& e) const { return body_.coefficient(e); }

  friend TruncSeries operator+(const TruncSeries& x, const TruncSeries& y);
  friend TruncSeries operator-(const TruncSeries& x, const TruncSeries& y);
  friend TruncSeries operator*(const TruncSeries& x, const TruncSeries& y);
  friend bool operator==(const TruncSeries& x, const TruncSeries& y) {
    return x.order_ == y.order_ && x.body_ == y.body_;
  }

  // Partial derivative, valid to order-1.
  TruncSeries derivative(std::size_t var) const;

 private:
  Polynomial body_;
  unsigned order_;
};

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_compose(const TruncSeries& outer, std::span<const TruncSeries> inners);

}  // namespace difftan
