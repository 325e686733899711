#include "difftan/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace difftan {

unsigned total_degree(const Exponent& e) {
  unsigned s = 0;
  for (unsigned v : e) s += v;
  return s;
}

namespace {

void check_same(const Polynomial& x, const Polynomial& y) {
  if (x.nvars() != y.nvars()) {
    fail(ErrorCode::ShapeMismatch, "polynomials in " + std::to_string(x.nvars()) + " and " +
                                       std::to_string(y.nvars()) + " variables");
  }
}

Exponent add_exponents(const Exponent& x, const Exponent& y) {
  Exponent r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const QuadNumber& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) fail(ErrorCode::ShapeMismatch, "variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(nvars, e, 1);
}

Polynomial Polynomial::monomial(std::size_t nvars, const Exponent& e, const QuadNumber& c) {
  if (e.size() != nvars) fail(ErrorCode::ShapeMismatch, "exponent length mismatch");
  Polynomial p(nvars);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::univariate(const std::vector<QuadNumber>& coeffs) {
  Polynomial p(1);
  for (unsigned k = 0; k < coeffs.size(); ++k) p.add_term({k}, coeffs[k]);
  return p;
}

QuadNumber Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? QuadNumber() : it->second;
}

QuadNumber Polynomial::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

void Polynomial::add_term(const Exponent& e, const QuadNumber& c) {
  if (e.size() != nvars_) fail(ErrorCode::ShapeMismatch, "exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
  return d;
}

int Polynomial::lowest_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int k = static_cast<int>(total_degree(e));
    if (d < 0 || k < d) d = k;
  }
  return d;
}

std::set<std::size_t> Polynomial::used_variables() const {
  std::set<std::size_t> used;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) used.insert(i);
    }
  }
  return used;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& x, const Polynomial& y) {
  check_same(x, y);
  Polynomial r(x.nvars_);
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) r.add_term(add_exponents(ex, ey), cx * cy);
  }
  return r;
}

Polynomial operator*(const QuadNumber& c, const Polynomial& p) {
  Polynomial r(p.nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : p.terms_) r.terms_.emplace(e, c * v);
  return r;
}

Polynomial Polynomial::mul_truncated(const Polynomial& o, unsigned max_degree) const {
  check_same(*this, o);
  Polynomial r(nvars_);
  for (const auto& [ex, cx] : terms_) {
    unsigned dx = total_degree(ex);
    if (dx > max_degree) continue;
    for (const auto& [ey, cy] : o.terms_) {
      if (dx + total_degree(ey) > max_degree) continue;
      r.add_term(add_exponents(ex, ey), cx * cy);
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::truncated(unsigned max_degree) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) <= max_degree) r.terms_.emplace(e, c);
  }
  return r;
}

Polynomial Polynomial::homogeneous_part(unsigned deg) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == deg) r.terms_.emplace(e, c);
  }
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) fail(ErrorCode::ShapeMismatch, "derivative variable out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, c * QuadNumber(static_cast<long>(e[var])));
  }
  return r;
}

Polynomial Polynomial::derivative(std::size_t var, unsigned times) const {
  Polynomial r = *this;
  for (unsigned i = 0; i < times; ++i) r = r.derivative(var);
  return r;
}

Polynomial Polynomial::compose(std::span<const Polynomial> inners) const {
  if (inners.size() != nvars_) {
    fail(ErrorCode::ShapeMismatch, "composition needs " + std::to_string(nvars_) + " inner maps");
  }
  std::size_t m = inners.empty() ? 0 : inners[0].nvars();
  for (const auto& q : inners) check_same(inners[0], q);
  if (terms_.empty()) return Polynomial(m);
  // powers[i][k] = inners[i]^k, filled lazily
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& row = powers[i];
    if (row.empty()) row.push_back(constant(m, 1));
    while (row.size() <= k) row.push_back(row.back() * inners[i]);
    return row[k];
  };
  Polynomial r(m);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i]) term = term * power(i, e[i]);
    }
    r += term;
  }
  return r;
}

QuadNumber Polynomial::evaluate(std::span<const QuadNumber> at) const {
  if (at.size() != nvars_) fail(ErrorCode::ShapeMismatch, "evaluation point has wrong length");
  QuadNumber sum;
  for (const auto& [e, c] : terms_) {
    QuadNumber term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term *= at[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) fail(ErrorCode::ShapeMismatch, "embedding does not fit");
  Polynomial r(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponent f(new_nvars, 0);
    std::copy(e.begin(), e.end(), f.begin() + static_cast<long>(offset));
    r.terms_.emplace(f, c);
  }
  return r;
}

bool Polynomial::divisible_by_power(std::size_t var, unsigned k) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first[var] >= k; });
}

Polynomial Polynomial::divide_by_power(std::size_t var, unsigned k) const {
  if (!divisible_by_power(var, k)) fail(ErrorCode::Internal, "polynomial not divisible");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] -= k;
    r.terms_.emplace(f, c);
  }
  return r;
}

bool Polynomial::proportional_to(const Polynomial& q, QuadNumber* factor) const {
  check_same(*this, q);
  if (q.is_zero()) return false;
  const auto& [e0, c0] = *q.terms_.begin();
  QuadNumber f = coefficient(e0) / c0;
  if (f * q != *this) return false;
  if (factor) *factor = f;
  return true;
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  static const char* small[] = {"t", "s", "r"};
  std::vector<std::string> names;
  if (nvars <= 3) {
    for (std::size_t i = 0; i < nvars; ++i) names.emplace_back(small[i]);
  } else {
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

std::string Polynomial::to_string(const std::vector<std::string>& names_in) const {
  if (terms_.empty()) return "0";
  std::vector<std::string> names = names_in.empty() ? default_variable_names(nvars_) : names_in;
  // highest degree first, then reverse lexicographic exponent
  std::vector<std::pair<Exponent, QuadNumber>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    unsigned dx = total_degree(x.first), dy = total_degree(y.first);
    if (dx != dy) return dx < dy;
    return x.first > y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    bool is_const = total_degree(e) == 0;
    QuadNumber coef = c;
    bool negative = c.is_rational() && c.a() < 0;
    if (negative) coef = -c;
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << '-';
    first = false;
    std::string cs = coef.to_string();
    bool unit = coef == QuadNumber(1);
    if (is_const) {
      os << (coef.is_rational() ? cs : "(" + cs + ")");
      continue;
    }
    if (!unit) os << (coef.is_rational() ? cs : "(" + cs + ")") << '*';
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!first_var) os << '*';
      first_var = false;
      os << names[i];
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

bool Polynomial::lex_less(const Polynomial& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return it->first < jt->first;
    if (it->second != jt->second) return it->second.lex_less(jt->second);
  }
  return it == terms_.end() && jt != o.terms_.end();
}

PolyMap compose_maps(const PolyMap& outer, const PolyMap& inner) {
  PolyMap r;
  r.reserve(outer.size());
  for (const auto& p : outer) r.push_back(p.compose(inner));
  return r;
}

bool all_zero(const PolyMap& m) {
  return std::all_of(m.begin(), m.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Point evaluate_map(const PolyMap& m, std::span<const QuadNumber> at) {
  Point r;
  r.reserve(m.size());
  for (const auto& p : m) r.push_back(p.evaluate(at));
  return r;
}

TruncSeries::TruncSeries(std::size_t nvars, unsigned order) : body_(nvars), order_(order) {
  if (nvars == 0 || order == 0) fail(ErrorCode::ShapeMismatch, "series needs nvars and order >= 1");
}

TruncSeries::TruncSeries(const Polynomial& p, unsigned order)
    : body_(p.truncated(order)), order_(order) {
  if (p.nvars() == 0 || order == 0) fail(ErrorCode::ShapeMismatch, "series needs nvars and order >= 1");
}

namespace {

void check_series(const TruncSeries& x, const TruncSeries& y) {
  if (x.nvars() != y.nvars() || x.order() != y.order()) {
    fail(ErrorCode::ShapeMismatch, "series differ in variable count or order");
  }
}

}  // namespace

TruncSeries operator+(const TruncSeries& x, const TruncSeries& y) {
  check_series(x, y);
  return TruncSeries(x.body_ + y.body_, x.order_);
}

TruncSeries operator-(const TruncSeries& x, const TruncSeries& y) {
  check_series(x, y);
  return TruncSeries(x.body_ - y.body_, x.order_);
}

TruncSeries operator*(const TruncSeries& x, const TruncSeries& y) {
  check_series(x, y);
  return TruncSeries(x.body_.mul_truncated(y.body_, x.order_), x.order_);
}

TruncSeries TruncSeries::derivative(std::size_t var) const {
  unsigned k = order_ > 1 ? order_ - 1 : 1;
  return TruncSeries(body_.derivative(var), k);
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

TruncSeries series_compose(const TruncSeries& outer, std::span<const TruncSeries> inners) {
  if (inners.size() != outer.nvars()) {
    fail(ErrorCode::ShapeMismatch, "composition needs one inner series per outer variable");
  }
  if (inners.empty()) fail(ErrorCode::ShapeMismatch, "no inner series");
  unsigned K = outer.order();
  std::size_t m = inners[0].nvars();
  for (const auto& s : inners) {
    if (s.order() != K || s.nvars() != m) {
      fail(ErrorCode::ShapeMismatch, "inner series differ in variable count or order");
    }
    if (!s.polynomial().constant_term().is_zero()) {
      fail(ErrorCode::NonzeroConstantTerm, "inner series has a nonzero constant term");
    }
  }
  std::vector<std::vector<Polynomial>> powers(inners.size());
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& row = powers[i];
    if (row.empty()) row.push_back(Polynomial::constant(m, 1));
    while (row.size() <= k) row.push_back(row.back().mul_truncated(inners[i].polynomial(), K));
    return row[k];
  };
  Polynomial r(m);
  for (const auto& [e, c] : outer.polynomial().terms()) {
    Polynomial term = Polynomial::constant(m, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) term = term.mul_truncated(power(i, e[i]), K);
    }
    r += term;
  }
  return TruncSeries(r, K);
}

}  // namespace difftan
