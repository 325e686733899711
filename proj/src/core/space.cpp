#include "difftan/space.hpp"

#include <algorithm>
#include <sstream>

namespace difftan {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool parallel(const Direction& u, const Direction& v) {
  return (u[0] * v[1] - u[1] * v[0]).is_zero();
}

}  // namespace

std::size_t ambient_dim(const Family& f) {
  return std::visit(overloaded{
                        [](const Euclidean& s) { return s.n; },
                        [](const Discrete& s) { return s.n; },
                        [](const Indiscrete& s) { return s.n; },
                        [](const ContinuousLine&) { return std::size_t{1}; },
                        [](const WedgeOfLines& s) { return s.j; },
                        [](const AxesSub& s) { return s.j; },
                        [](const LinesThroughOriginSub&) { return std::size_t{2}; },
                        [](const HalfLineSub&) { return std::size_t{1}; },
                        [](const OrbitQuotient& s) { return s.n; },
                        [](const IrrationalTorus&) { return std::size_t{1}; },
                        [](const FineVector& s) { return s.dim; },
                        [](const Generated& s) { return s.n; },
                    },
                    f);
}

std::string family_name(const Family& f) {
  static const char* names[] = {"euclidean", "discrete",   "indiscrete",    "continuous_line",
                                "wedge",     "axes_sub",   "lines_sub",     "half_line",
                                "orbit_quotient", "irrational_torus", "fine_vector", "generated"};
  return names[f.index()];
}

std::string render(const Family& f) {
  std::ostringstream os;
  os << family_name(f);
  std::visit(overloaded{
                 [&](const Euclidean& s) { os << '(' << s.n << ')'; },
                 [&](const Discrete& s) { os << '(' << s.n << ')'; },
                 [&](const Indiscrete& s) { os << '(' << s.n << ')'; },
                 [&](const ContinuousLine&) {},
                 [&](const WedgeOfLines& s) { os << '(' << s.j << ')'; },
                 [&](const AxesSub& s) { os << '(' << s.j << ')'; },
                 [&](const LinesThroughOriginSub& s) {
                   os << '(';
                   for (std::size_t i = 0; i < s.directions.size(); ++i) {
                     if (i) os << ", ";
                     os << '(' << s.directions[i][0].to_string() << ", "
                        << s.directions[i][1].to_string() << ')';
                   }
                   os << ')';
                 },
                 [&](const HalfLineSub&) {},
                 [&](const OrbitQuotient& s) { os << '(' << s.n << ')'; },
                 [&](const IrrationalTorus& s) { os << '(' << s.theta.to_string() << ')'; },
                 [&](const FineVector& s) { os << '(' << s.dim << ')'; },
                 [&](const Generated& s) { os << '(' << s.n << ", " << s.k << ')'; },
             },
             f);
  return os.str();
}

void validate(const Family& f) {
  auto bad = [&](const std::string& why) { fail(ErrorCode::InvalidParameter, family_name(f) + ": " + why); };
  std::visit(overloaded{
                 [&](const Euclidean& s) { if (s.n < 1) bad("dimension must be at least 1"); },
                 [&](const Discrete& s) { if (s.n < 1) bad("dimension must be at least 1"); },
                 [&](const Indiscrete& s) { if (s.n < 1) bad("dimension must be at least 1"); },
                 [&](const ContinuousLine&) {},
                 [&](const WedgeOfLines& s) { if (s.j < 2) bad("needs at least 2 lines"); },
                 [&](const AxesSub& s) { if (s.j < 2) bad("needs at least 2 axes"); },
                 [&](const LinesThroughOriginSub& s) {
                   if (s.directions.empty()) bad("needs at least one direction");
                   for (std::size_t i = 0; i < s.directions.size(); ++i) {
                     if (s.directions[i][0].is_zero() && s.directions[i][1].is_zero()) {
                       bad("direction " + std::to_string(i + 1) + " is zero");
                     }
                     for (std::size_t k = 0; k < i; ++k) {
                       if (parallel(s.directions[i], s.directions[k])) {
                         bad("directions " + std::to_string(k + 1) + " and " + std::to_string(i + 1) +
                             " are parallel");
                       }
                     }
                   }
                 },
                 [&](const HalfLineSub&) {},
                 [&](const OrbitQuotient& s) { if (s.n < 1) bad("dimension must be at least 1"); },
                 [&](const IrrationalTorus& s) { if (s.theta.is_rational()) bad("theta must be irrational"); },
                 [&](const FineVector& s) { if (s.dim < 1) bad("dimension must be at least 1"); },
                 [&](const Generated& s) {
                   if (s.n < 1) bad("dimension must be at least 1");
                   if (s.k < 1) bad("source dimension must be at least 1");
                 },
             },
             f);
}

std::optional<std::size_t> single_branch(const Family& f, const PolyMap& comps, bool* at_origin) {
  if (at_origin) *at_origin = false;
  if (std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f)) {
    std::optional<std::size_t> found;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comps[k].is_zero()) continue;
      if (found) return std::nullopt;
      found = k;
    }
    if (!found && at_origin) *at_origin = true;
    return found;
  }
  if (const auto* lines = std::get_if<LinesThroughOriginSub>(&f)) {
    if (comps[0].is_zero() && comps[1].is_zero()) {
      if (at_origin) *at_origin = true;
      return std::nullopt;
    }
    for (std::size_t k = 0; k < lines->directions.size(); ++k) {
      const auto& v = lines->directions[k];
      if ((v[1] * comps[0] - v[0] * comps[1]).is_zero()) return k;
    }
    return std::nullopt;
  }
  fail(ErrorCode::Internal, "single_branch on a family without branches");
}

bool contains(const Family& f, const Point& x) {
  if (x.size() != ambient_dim(f)) return false;
  if (std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f) ||
      std::holds_alternative<LinesThroughOriginSub>(f)) {
    PolyMap comps;
    for (const auto& v : x) comps.push_back(Polynomial::constant(0, v));
    bool origin = false;
    return single_branch(f, comps, &origin).has_value() || origin;
  }
  if (std::holds_alternative<HalfLineSub>(f)) return x[0].sign() >= 0;
  return true;
}

SpacePresentation SpacePresentation::make(Family f) {
  validate(f);
  SpacePresentation s;
  s.factors_.push_back(std::move(f));
  return s;
}

SpacePresentation SpacePresentation::product(const std::vector<SpacePresentation>& parts) {
  if (parts.empty()) fail(ErrorCode::InvalidParameter, "product of no spaces");
  SpacePresentation s;
  s.product_ = true;
  for (const auto& p : parts) {
    s.factors_.insert(s.factors_.end(), p.factors_.begin(), p.factors_.end());
  }
  return s;
}

SpacePresentation make_space(Family f) { return SpacePresentation::make(std::move(f)); }
SpacePresentation product_space(const std::vector<SpacePresentation>& parts) {
  return SpacePresentation::product(parts);
}

std::size_t SpacePresentation::ambient_dim() const {
  std::size_t n = 0;
  for (const auto& f : factors_) n += difftan::ambient_dim(f);
  return n;
}

std::size_t SpacePresentation::offset(std::size_t factor) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < factor; ++i) n += difftan::ambient_dim(factors_[i]);
  return n;
}

Point SpacePresentation::factor_point(const Point& x, std::size_t factor) const {
  std::size_t off = offset(factor);
  std::size_t n = difftan::ambient_dim(factors_[factor]);
  return Point(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off + n));
}

SpacePresentation SpacePresentation::factor_space(std::size_t factor) const {
  return make(factors_.at(factor));
}

bool SpacePresentation::contains(const Point& x) const {
  if (x.size() != ambient_dim()) return false;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (!difftan::contains(factors_[k], factor_point(x, k))) return false;
  }
  return true;
}

void SpacePresentation::require_point(const Point& x) const {
  if (x.size() != ambient_dim()) {
    fail(ErrorCode::PointNotInSpace, "point " + render_point(x) + " has " + std::to_string(x.size()) +
                                         " coordinates, " + render() + " needs " +
                                         std::to_string(ambient_dim()));
  }
  if (!contains(x)) fail(ErrorCode::PointNotInSpace, "point " + render_point(x) + " is not in " + render());
}

std::string SpacePresentation::render() const {
  if (!product_) return difftan::render(factors_.front());
  std::string s = "product[";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ", ";
    s += difftan::render(factors_[i]);
  }
  return s + "]";
}

std::string render_point(const Point& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += x[i].to_string();
  }
  return s + ")";
}

Point PolyPlot::at_origin() const {
  Point zero(src_dim);
  return evaluate_map(components, zero);
}

bool PolyPlot::is_constant() const {
  return std::all_of(components.begin(), components.end(),
                     [](const Polynomial& p) { return p.is_constant(); });
}

PolyPlot PolyPlot::factor(const SpacePresentation& space, std::size_t k) const {
  std::size_t off = space.offset(k);
  std::size_t n = ambient_dim(space.factors()[k]);
  PolyPlot p(src_dim, PolyMap(components.begin() + static_cast<long>(off),
                              components.begin() + static_cast<long>(off + n)));
  if (k < branches.size() && branches[k]) p.branches = {branches[k]};
  return p;
}

PolyPlot PolyPlot::compose(const PolyMap& reparam) const {
  std::size_t m = reparam.empty() ? 0 : reparam.front().nvars();
  PolyPlot p(m, compose_maps(components, reparam));
  p.branches = branches;
  return p;
}

std::string PolyPlot::render() const {
  auto names = default_variable_names(src_dim);
  std::string s = "(";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += ", ";
    s += components[i].to_string(names);
  }
  return s + ")";
}

PolyPlot constant_plot(std::size_t src_dim, const Point& x) {
  PolyMap comps;
  for (const auto& v : x) comps.push_back(Polynomial::constant(src_dim, v));
  return PolyPlot(src_dim, std::move(comps));
}

PolyPlot line_plot(const Point& x, const Vector& v) {
  if (x.size() != v.size()) fail(ErrorCode::ShapeMismatch, "point and direction differ in length");
  PolyMap comps;
  Polynomial t = Polynomial::variable(1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) comps.push_back(Polynomial::constant(1, x[i]) + v[i] * t);
  return PolyPlot(1, std::move(comps));
}

PolyPlot join_plots(const std::vector<PolyPlot>& parts) {
  PolyPlot out;
  out.src_dim = parts.empty() ? 1 : parts.front().src_dim;
  bool tagged = false;
  for (const auto& p : parts) {
    if (p.src_dim != out.src_dim) fail(ErrorCode::ShapeMismatch, "joined plots differ in source");
    out.components.insert(out.components.end(), p.components.begin(), p.components.end());
    tagged = tagged || !p.branches.empty();
  }
  if (tagged) {
    for (const auto& p : parts) out.branches.push_back(p.branches.empty() ? std::nullopt : p.branches[0]);
  }
  return out;
}

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::Constant: return "constant";
    case Reason::AlwaysMember: return "always-member";
    case Reason::LiftPresented: return "lift-presented";
    case Reason::BranchCertificate: return "branch-certificate";
    case Reason::PolynomialIdentityViolated: return "polynomial-identity-violated";
    case Reason::BranchTagMismatch: return "branch-tag-mismatch";
    case Reason::FactorizationFound: return "factorization-found";
    case Reason::SourceDimensionBound: return "source-dimension-bound";
    case Reason::GermNonnegative: return "germ-nonnegative";
    case Reason::GermSignViolated: return "germ-sign-violated";
    case Reason::SumOfSquares: return "sum-of-squares";
    case Reason::ComponentwiseProduct: return "componentwise";
  }
  return "unknown";
}

bool lattice_coordinates(const QuadNumber& c, const QuadNumber& theta, mpz_class* m, mpz_class* n) {
  if (theta.is_rational()) fail(ErrorCode::InvalidParameter, "theta must be irrational");
  if (!c.is_rational() && c.d() != theta.d()) return false;
  Rational nq = c.b() / theta.b();
  if (nq.get_den() != 1) return false;
  Rational mq = c.a() - nq * theta.a();
  if (mq.get_den() != 1) return false;
  if (m) *m = mq.get_num();
  if (n) *n = nq.get_num();
  return true;
}

bool torus_lifts_equivalent(const Polynomial& f, const Polynomial& g, const QuadNumber& theta) {
  Polynomial diff = f - g;
  if (!diff.is_constant()) return false;
  return lattice_coordinates(diff.constant_term(), theta, nullptr, nullptr);
}

namespace {

MembershipWitness member(Reason r, std::string detail = {}) {
  MembershipWitness w;
  w.verdict = Verdict::Member;
  w.reason = r;
  w.detail = std::move(detail);
  return w;
}

MembershipWitness nonmember(Reason r, std::string detail) {
  MembershipWitness w;
  w.verdict = Verdict::Nonmember;
  w.reason = r;
  w.detail = std::move(detail);
  return w;
}

struct HalfLineGerm {
  std::optional<bool> member;
  std::string detail;
};

HalfLineGerm half_line_germ(const Polynomial& p);

// Restriction of a polynomial that uses at most one variable to that variable.
std::optional<Polynomial> as_univariate(const Polynomial& w) {
  auto used = w.used_variables();
  if (used.size() > 1) return std::nullopt;
  std::size_t v = used.empty() ? 0 : *used.begin();
  PolyMap subst;
  for (std::size_t i = 0; i < w.nvars(); ++i) {
    subst.push_back(i == v ? Polynomial::variable(1, 0) : Polynomial(1));
  }
  if (w.nvars() == 0) return Polynomial::constant(1, w.constant_term());
  return w.compose(subst);
}

// Sum of w*q^2, or nullopt when a weight is not a germ-nonnegative function of one variable.
std::optional<Polynomial> weighted_sum(const std::vector<WeightedSquare>& terms, std::size_t nvars) {
  Polynomial s(nvars);
  for (const auto& t : terms) {
    if (t.weight.nvars() != nvars || t.root.nvars() != nvars) return std::nullopt;
    auto w1 = as_univariate(t.weight);
    if (!w1) return std::nullopt;
    auto germ = half_line_germ(*w1);
    if (!germ.member || !*germ.member) return std::nullopt;
    s += t.weight * t.root * t.root;
  }
  return s;
}

// Sign of the germ at the source origin, when it can be read off the jets.
HalfLineGerm half_line_germ(const Polynomial& p) {
  if (p.is_zero()) return {true, "identically zero"};
  QuadNumber c0 = p.constant_term();
  if (c0.sign() > 0) return {true, "positive at the source origin"};
  if (c0.sign() < 0) return {false, "negative at the source origin"};
  int m = p.lowest_degree();
  if (p.nvars() == 1) {
    QuadNumber lead = p.coefficient({static_cast<unsigned>(m)});
    if (m % 2 == 0 && lead.sign() > 0) {
      return {true, "lowest term of degree " + std::to_string(m) + " is even with positive coefficient"};
    }
    return {false, "lowest term " + lead.to_string() + "*t^" + std::to_string(m) + " changes sign near 0"};
  }
  if (m % 2 == 1) return {false, "lowest homogeneous part has odd degree " + std::to_string(m)};
  return {std::nullopt, "lowest homogeneous part has even degree; sign not decided by jets"};
}

bool factorization_holds(const PolyFactorization& f, const PolyMap& comps, std::size_t src_dim,
                         std::size_t bound) {
  if (f.inner.size() > bound) return false;
  for (const auto& q : f.inner) {
    if (q.nvars() != src_dim) return false;
  }
  for (const auto& q : f.outer) {
    if (q.nvars() != f.inner.size()) return false;
  }
  if (f.outer.size() != comps.size()) return false;
  return compose_maps(f.outer, f.inner) == comps;
}

MembershipWitness check_generated(const Generated& g, const PolyPlot& p, const PlotCertificates& certs) {
  std::size_t d = p.src_dim;
  if (d <= g.k) {
    MembershipWitness w = member(Reason::SourceDimensionBound,
                                 "source dimension " + std::to_string(d) + " <= " + std::to_string(g.k));
    PolyFactorization f;
    for (std::size_t i = 0; i < d; ++i) f.inner.push_back(Polynomial::variable(d, i));
    f.outer = p.components;
    w.factorization = f;
    return w;
  }
  auto used = std::set<std::size_t>();
  for (const auto& c : p.components) {
    auto u = c.used_variables();
    used.insert(u.begin(), u.end());
  }
  if (used.size() <= g.k) {
    PolyFactorization f;
    std::vector<std::size_t> order(used.begin(), used.end());
    std::size_t m = order.size();
    for (auto i : order) f.inner.push_back(Polynomial::variable(d, i));
    // outer: substitute variable order[r] -> y_r, all others -> 0 (they do not occur)
    PolyMap subst;
    for (std::size_t i = 0; i < d; ++i) {
      auto it = std::find(order.begin(), order.end(), i);
      subst.push_back(it == order.end() ? Polynomial(m)
                                        : Polynomial::variable(m, static_cast<std::size_t>(it - order.begin())));
    }
    f.outer = compose_maps(p.components, subst);
    MembershipWitness w = member(Reason::FactorizationFound,
                                 "uses only " + std::to_string(m) + " source variables");
    w.factorization = f;
    return w;
  }
  if (g.k >= g.n) {
    PolyFactorization f;
    f.inner = p.components;
    for (std::size_t i = 0; i < g.n; ++i) f.outer.push_back(Polynomial::variable(g.n, i));
    MembershipWitness w = member(Reason::FactorizationFound, "factors through the identity of R^" + std::to_string(g.n));
    w.factorization = f;
    return w;
  }
  if (certs.factorization) {
    if (!factorization_holds(*certs.factorization, p.components, d, g.k)) {
      fail(ErrorCode::UndecidableWithoutCertificate, "supplied factorization does not reproduce the plot");
    }
    MembershipWitness w = member(Reason::FactorizationFound, "supplied factorization verified");
    w.factorization = certs.factorization;
    return w;
  }
  fail(ErrorCode::UndecidableWithoutCertificate,
       "plot from R^" + std::to_string(d) + " into " + render(Family(g)) +
           " needs a factorization through R^" + std::to_string(g.k));
}

MembershipWitness check_factor(const Family& f, const PolyPlot& p, const PlotCertificates& certs) {
  if (p.components.size() != ambient_dim(f)) {
    fail(ErrorCode::ShapeMismatch, render(f) + " needs " + std::to_string(ambient_dim(f)) +
                                       " components, plot has " + std::to_string(p.components.size()));
  }
  for (const auto& c : p.components) {
    if (c.nvars() != p.src_dim) fail(ErrorCode::ShapeMismatch, "plot component in the wrong number of variables");
  }
  std::optional<std::size_t> tag = p.branches.empty() ? std::nullopt : p.branches[0];
  bool wedge_like = std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f) ||
                    std::holds_alternative<LinesThroughOriginSub>(f);
  if (p.is_constant()) {
    Point x = p.at_origin();
    if (!contains(f, x)) {
      return nonmember(Reason::PolynomialIdentityViolated, "constant value " + render_point(x) + " is outside the space");
    }
    MembershipWitness w = member(Reason::Constant, "constant at " + render_point(x));
    if (wedge_like) {
      bool origin = false;
      w.branch = single_branch(f, p.components, &origin);
      if (tag && w.branch && *tag != *w.branch) {
        return nonmember(Reason::BranchTagMismatch, "constant lies on branch " + std::to_string(*w.branch + 1));
      }
      if (!w.branch) w.branch = tag;
    }
    return w;
  }
  if (wedge_like) {
    auto branch = single_branch(f, p.components, nullptr);
    if (!branch) {
      return nonmember(Reason::PolynomialIdentityViolated, "image does not stay on one branch");
    }
    if (tag && *tag != *branch) {
      return nonmember(Reason::BranchTagMismatch, "tagged branch " + std::to_string(*tag + 1) +
                                                     " but image lies on branch " + std::to_string(*branch + 1));
    }
    MembershipWitness w = member(Reason::BranchCertificate, "image on branch " + std::to_string(*branch + 1));
    w.branch = branch;
    return w;
  }
  if (std::holds_alternative<Discrete>(f)) {
    return nonmember(Reason::PolynomialIdentityViolated, "discrete spaces only admit constant plots");
  }
  if (std::holds_alternative<HalfLineSub>(f)) {
    const Polynomial& q = p.components[0];
    if (certs.sum_of_squares) {
      auto sum = weighted_sum(*certs.sum_of_squares, p.src_dim);
      if (!sum || *sum != q) {
        fail(ErrorCode::UndecidableWithoutCertificate, "supplied sum of squares does not reproduce the plot");
      }
      MembershipWitness w = member(Reason::SumOfSquares, "sum of squares verified");
      w.sum_of_squares = *certs.sum_of_squares;
      return w;
    }
    auto germ = half_line_germ(q);
    if (!germ.member) fail(ErrorCode::UndecidableWithoutCertificate, germ.detail);
    if (*germ.member) return member(Reason::GermNonnegative, germ.detail);
    return nonmember(Reason::GermSignViolated, germ.detail);
  }
  if (const auto* g = std::get_if<Generated>(&f)) return check_generated(*g, p, certs);
  if (std::holds_alternative<OrbitQuotient>(f) || std::holds_alternative<IrrationalTorus>(f)) {
    return member(Reason::LiftPresented, "presented by a polynomial lift");
  }
  return member(Reason::AlwaysMember, "every polynomial map is a plot of " + render(f));
}

bool revalidate_factor(const Family& f, const PolyPlot& p, const MembershipWitness& w) {
  switch (w.reason) {
    case Reason::Constant:
      return p.is_constant() && contains(f, p.at_origin());
    case Reason::BranchCertificate: {
      if (!w.branch) return false;
      auto b = single_branch(f, p.components, nullptr);
      return b && *b == *w.branch;
    }
    case Reason::AlwaysMember:
      return std::holds_alternative<Euclidean>(f) || std::holds_alternative<FineVector>(f) ||
             std::holds_alternative<Indiscrete>(f) || std::holds_alternative<ContinuousLine>(f);
    case Reason::LiftPresented:
      return std::holds_alternative<OrbitQuotient>(f) || std::holds_alternative<IrrationalTorus>(f);
    case Reason::FactorizationFound:
    case Reason::SourceDimensionBound: {
      const auto* g = std::get_if<Generated>(&f);
      if (!g || !w.factorization) return false;
      return factorization_holds(*w.factorization, p.components, p.src_dim, g->k);
    }
    case Reason::GermNonnegative: {
      auto germ = half_line_germ(p.components[0]);
      return germ.member && *germ.member;
    }
    case Reason::SumOfSquares:
    {
      auto sum = weighted_sum(w.sum_of_squares, p.src_dim);
      return sum && *sum == p.components[0];
    }
    default:
      return false;
  }
}

}  // namespace

MembershipWitness plot_check(const SpacePresentation& space, const PolyPlot& p, const PlotCertificates& certs) {
  if (p.components.size() != space.ambient_dim()) {
    fail(ErrorCode::ShapeMismatch, space.render() + " needs " + std::to_string(space.ambient_dim()) +
                                       " components, plot has " + std::to_string(p.components.size()));
  }
  MembershipWitness w;
  if (!space.is_product()) {
    w = check_factor(space.family(), p, certs);
  } else {
    w = member(Reason::ComponentwiseProduct, "every factor accepts its component");
    for (std::size_t k = 0; k < space.factors().size(); ++k) {
      auto fw = check_factor(space.factors()[k], p.factor(space, k), certs);
      if (!fw.member() && w.member()) {
        w.verdict = Verdict::Nonmember;
        w.detail = "factor " + std::to_string(k + 1) + ": " + fw.detail;
      }
      w.factor_witnesses.push_back(std::move(fw));
    }
  }
  if (w.member() && !revalidate(space, p, w)) {
    fail(ErrorCode::Internal, "membership certificate failed to re-validate for " + p.render());
  }
  return w;
}

bool revalidate(const SpacePresentation& space, const PolyPlot& p, const MembershipWitness& w) {
  if (!w.member()) return false;
  if (!space.is_product()) return revalidate_factor(space.family(), p, w);
  if (w.factor_witnesses.size() != space.factors().size()) return false;
  for (std::size_t k = 0; k < space.factors().size(); ++k) {
    if (!revalidate_factor(space.factors()[k], p.factor(space, k), w.factor_witnesses[k])) return false;
  }
  return true;
}

MembershipWitness require_member(const SpacePresentation& space, const PolyPlot& p, const PlotCertificates& certs) {
  auto w = plot_check(space, p, certs);
  if (!w.member()) fail(ErrorCode::NotAMember, p.render() + " is not a plot of " + space.render() + ": " + w.detail);
  return w;
}

}  // namespace difftan
