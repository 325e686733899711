#include "difftan/tangent_bundle.hpp"

#include <algorithm>
#include <random>

#include "difftan/internal_tangent.hpp"

namespace difftan {

namespace {

bool wedge_like(const Family& f) {
  return std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f) ||
         std::holds_alternative<LinesThroughOriginSub>(f);
}

BundleWitness verdict(Verdict v, BundleReason r, std::string detail) {
  BundleWitness w;
  w.verdict = v;
  w.reason = r;
  w.detail = std::move(detail);
  return w;
}

BundleWitness member(BundleReason r, std::string detail = {}) { return verdict(Verdict::Member, r, std::move(detail)); }
BundleWitness nonmember(BundleReason r, std::string detail = {}) {
  return verdict(Verdict::Nonmember, r, std::move(detail));
}

void check_shape(const SpacePresentation& space, const BundlePlotCandidate& c) {
  if (c.base.components.size() != space.ambient_dim()) {
    fail(ErrorCode::MalformedCandidate, "base has " + std::to_string(c.base.components.size()) +
                                            " components, space needs " + std::to_string(space.ambient_dim()));
  }
  if (c.fibre.size() != fibre_dim(space)) {
    fail(ErrorCode::MalformedCandidate, "fibre has " + std::to_string(c.fibre.size()) + " coordinates, expected " +
                                            std::to_string(fibre_dim(space)));
  }
  for (const auto& p : c.base.components) {
    if (p.nvars() != c.src_dim()) fail(ErrorCode::MalformedCandidate, "base component in the wrong variables");
  }
  for (const auto& p : c.fibre) {
    if (p.nvars() != c.src_dim()) fail(ErrorCode::MalformedCandidate, "fibre coordinate in the wrong variables");
  }
}

// Single-branch rule: the base stays on branch k and only fibre coordinate k moves.
BundleWitness hector_wedge(const Family& f, const PolyPlot& base, const PolyMap& fibre) {
  bool origin = false;
  auto k = single_branch(f, base.components, &origin);
  std::optional<std::size_t> tag;
  if (!base.branches.empty()) tag = base.branches[0];
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < fibre.size(); ++i) {
    if (!fibre[i].is_zero()) nonzero.push_back(i);
  }
  if (nonzero.empty()) {
    auto w = member(BundleReason::ZeroSection);
    w.branch = k;
    return w;
  }
  if (k) {
    if (nonzero.size() == 1 && nonzero[0] == *k) {
      auto w = member(BundleReason::BranchFactorization, "base and fibre on branch " + std::to_string(*k));
      w.branch = k;
      return w;
    }
    return nonmember(BundleReason::FibreOffBranch, "base on branch " + std::to_string(*k) +
                                                       " but the fibre leaves that branch line");
  }
  // base constant at the origin
  bool fibre_constant = std::all_of(fibre.begin(), fibre.end(), [](const Polynomial& p) { return p.is_constant(); });
  if (nonzero.size() == 1 && (!tag || *tag == nonzero[0])) {
    auto w = member(BundleReason::BranchFactorization, "fibre on branch " + std::to_string(nonzero[0]));
    w.branch = nonzero[0];
    return w;
  }
  if (fibre_constant && !tag) return member(BundleReason::ConstantCandidate, "constant tangent vector at the origin");
  if (nonzero.size() == 1) {
    return nonmember(BundleReason::FibreOffBranch, "fibre disagrees with the branch tag");
  }
  return nonmember(BundleReason::FibreNotOnOneBranch,
                   "fibre moves in " + std::to_string(nonzero.size()) + " branch coordinates over the origin");
}

BundleWitness hector_half_line(const PolyPlot& base, const Polynomial& fibre) {
  if (fibre.is_zero()) return member(BundleReason::ZeroSection);
  const Polynomial& b = base.components[0];
  if (b.constant_term().sign() > 0) return member(BundleReason::ChartSurjective, "base in the interior");
  if (b.is_zero()) return nonmember(BundleReason::FibreMustVanish, "the tangent space at 0 is zero");
  if (base.src_dim != 1) {
    fail(ErrorCode::UndecidableWithoutCertificate, "half-line bundle candidate with a multivariate source");
  }
  int ob = b.lowest_degree(), ov = fibre.lowest_degree();
  if (2 * ov >= ob) {
    return member(BundleReason::FibreOrderBound, "ord(fibre)=" + std::to_string(ov) +
                                                     " >= ord(base)/2 with ord(base)=" + std::to_string(ob));
  }
  return nonmember(BundleReason::FibreOrderBound,
                   "ord(fibre)=" + std::to_string(ov) + " < ord(base)/2 with ord(base)=" + std::to_string(ob));
}

BundleWitness hector_orbit(const PolyPlot& base, const Polynomial& fibre) {
  if (fibre.is_zero()) return member(BundleReason::ZeroSection);
  bool at_zero = std::all_of(base.components.begin(), base.components.end(),
                             [](const Polynomial& p) { return p.constant_term().is_zero(); });
  if (!at_zero) return member(BundleReason::ChartSurjective, "base away from the origin");
  if (all_zero(base.components)) return nonmember(BundleReason::FibreMustVanish, "the tangent space at 0 is zero");
  fail(ErrorCode::UndecidableWithoutCertificate, "orbit-quotient bundle candidate through the origin");
}

BundleWitness hector_factor(const Family& f, const PolyPlot& base, const PolyMap& fibre) {
  auto bw = plot_check(make_space(f), base);
  if (!bw.member()) return nonmember(BundleReason::BaseNotMember, "base: " + bw.detail);
  if (wedge_like(f)) return hector_wedge(f, base, fibre);
  if (std::holds_alternative<HalfLineSub>(f)) return hector_half_line(base, fibre[0]);
  if (std::holds_alternative<OrbitQuotient>(f)) return hector_orbit(base, fibre[0]);
  if (std::holds_alternative<Generated>(f)) {
    fail(ErrorCode::UnsupportedFamily, "bundle membership for generated diffeologies");
  }
  if (fibre.empty() || all_zero(fibre)) return member(BundleReason::ZeroSection);
  return member(BundleReason::ChartSurjective);
}

// Fibre coordinates for which the constant unit vector is a Hector member over base.
std::vector<std::size_t> admissible_units(const Family& f, const PolyPlot& base, std::size_t dim) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dim; ++k) {
    PolyMap unit(dim, Polynomial(base.src_dim));
    unit[k] = Polynomial::constant(base.src_dim, 1);
    if (hector_factor(f, base, unit).member()) out.push_back(k);
  }
  return out;
}

BundleWitness dvs_factor(const Family& f, const PolyPlot& base, const PolyMap& fibre) {
  auto h = hector_factor(f, base, fibre);
  if (h.member()) {
    h.decomposition.push_back({Polynomial::constant(base.src_dim, 1), fibre});
    return h;
  }
  if (h.reason == BundleReason::BaseNotMember) return h;
  auto units = admissible_units(f, base, fibre.size());
  BundleWitness w = member(BundleReason::LinearDecomposition);
  for (std::size_t k = 0; k < fibre.size(); ++k) {
    if (fibre[k].is_zero()) continue;
    if (std::find(units.begin(), units.end(), k) == units.end()) {
      return nonmember(BundleReason::NoDecomposition,
                       "fibre coordinate " + std::to_string(k) + " is not spanned by member directions");
    }
    PolyMap unit(fibre.size(), Polynomial(base.src_dim));
    unit[k] = Polynomial::constant(base.src_dim, 1);
    w.decomposition.push_back({fibre[k], unit});
  }
  w.detail = "sum of " + std::to_string(w.decomposition.size()) + " scaled branch vectors";
  return w;
}

template <typename F>
BundleWitness per_factor(const SpacePresentation& space, const BundlePlotCandidate& c, F&& rule) {
  check_shape(space, c);
  if (!space.is_product()) return rule(space.family(), c.base, c.fibre);
  BundleWitness out = member(BundleReason::Componentwise);
  std::size_t off = 0;
  for (std::size_t k = 0; k < space.factors().size(); ++k) {
    std::size_t d = fibre_dim(space.factors()[k]);
    PolyMap fib(c.fibre.begin() + off, c.fibre.begin() + off + d);
    off += d;
    auto w = rule(space.factors()[k], c.base.factor(space, k), fib);
    if (!w.member() && out.member()) {
      out.verdict = Verdict::Nonmember;
      out.detail = "factor " + std::to_string(k) + ": " + w.detail;
    }
    out.factor_witnesses.push_back(std::move(w));
  }
  return out;
}

PolyMap add(const PolyMap& a, const PolyMap& b) {
  PolyMap out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Polynomial random_poly(std::mt19937& rng, std::size_t nvars, unsigned degree, bool constant_term) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Polynomial p(nvars);
  for (unsigned d = constant_term ? 0 : 1; d <= degree; ++d) {
    Exponent e(nvars, 0);
    e[rng() % nvars] = d;
    p.add_term(e, QuadNumber(coeff(rng)));
  }
  return p;
}

}  // namespace

std::string BundlePlotCandidate::render() const {
  std::string s = "(" + base.render() + ", (";
  auto names = default_variable_names(src_dim());
  for (std::size_t i = 0; i < fibre.size(); ++i) {
    if (i) s += ", ";
    s += fibre[i].to_string(names);
  }
  return s + "))";
}

BundlePlotCandidate zero_section(const PolyPlot& base, std::size_t dim) {
  return {base, PolyMap(dim, Polynomial(base.src_dim))};
}

std::size_t fibre_dim(const Family& f) {
  if (const auto* e = std::get_if<Euclidean>(&f)) return e->n;
  if (const auto* v = std::get_if<FineVector>(&f)) return v->dim;
  if (const auto* w = std::get_if<WedgeOfLines>(&f)) return w->j;
  if (const auto* a = std::get_if<AxesSub>(&f)) return a->j;
  if (const auto* l = std::get_if<LinesThroughOriginSub>(&f)) return l->directions.size();
  if (const auto* g = std::get_if<Generated>(&f)) return g->n;
  if (std::holds_alternative<HalfLineSub>(f) || std::holds_alternative<OrbitQuotient>(f) ||
      std::holds_alternative<IrrationalTorus>(f)) {
    return 1;
  }
  return 0;
}

std::size_t fibre_dim(const SpacePresentation& space) {
  std::size_t d = 0;
  for (const auto& f : space.factors()) d += fibre_dim(f);
  return d;
}

const char* bundle_reason_name(BundleReason r) {
  switch (r) {
    case BundleReason::ZeroSection: return "zero-section";
    case BundleReason::ConstantCandidate: return "constant-candidate";
    case BundleReason::ChartSurjective: return "chart-surjective";
    case BundleReason::BranchFactorization: return "branch-factorization";
    case BundleReason::FibreOffBranch: return "fibre-off-branch";
    case BundleReason::FibreNotOnOneBranch: return "fibre-not-on-one-branch";
    case BundleReason::FibreOrderBound: return "fibre-order-bound";
    case BundleReason::FibreMustVanish: return "fibre-must-vanish";
    case BundleReason::BaseNotMember: return "base-not-member";
    case BundleReason::LinearDecomposition: return "linear-decomposition";
    case BundleReason::NoDecomposition: return "no-decomposition";
    case BundleReason::Componentwise: return "componentwise";
  }
  return "unknown";
}

const char* bundle_diffeology_name(BundleDiffeology d) { return d == BundleDiffeology::Hector ? "hector" : "dvs"; }
const char* fibrewise_op_name(FibrewiseOp op) {
  return op == FibrewiseOp::Addition ? "addition" : "scalar-multiplication";
}
const char* op_verdict_name(OpVerdict v) {
  return v == OpVerdict::SmoothOnCandidates ? "smooth-on-candidates" : "counterexample";
}

BundleWitness hector_membership(const SpacePresentation& space, const BundlePlotCandidate& c) {
  return per_factor(space, c, hector_factor);
}

BundleWitness dvs_membership(const SpacePresentation& space, const BundlePlotCandidate& c) {
  return per_factor(space, c, dvs_factor);
}

BundleWitness bundle_membership(const SpacePresentation& space, const BundlePlotCandidate& c, BundleDiffeology d) {
  return d == BundleDiffeology::Hector ? hector_membership(space, c) : dvs_membership(space, c);
}

std::vector<SmoothnessReport> check_fibrewise_ops(const SpacePresentation& space, const BundlePlotCandidate& a,
                                                  const BundlePlotCandidate& b) {
  check_shape(space, a);
  check_shape(space, b);
  if (!a.base.same_components(b.base)) fail(ErrorCode::MalformedCandidate, "candidates over different bases");
  if (!hector_membership(space, a).member() || !hector_membership(space, b).member()) {
    fail(ErrorCode::NotMembers, "fibrewise operations need two member candidates");
  }
  const BundleDiffeology kinds[] = {BundleDiffeology::Hector, BundleDiffeology::Dvs};

  SmoothnessReport sum;
  sum.operation = FibrewiseOp::Addition;
  BundlePlotCandidate s{a.base, add(a.fibre, b.fibre)};
  for (auto d : kinds) {
    bool ok = bundle_membership(space, s, d).member();
    auto& v = d == BundleDiffeology::Hector ? sum.hector_verdict : sum.dvs_verdict;
    auto& wit = d == BundleDiffeology::Hector ? sum.hector_witness : sum.dvs_witness;
    v = ok ? OpVerdict::SmoothOnCandidates : OpVerdict::Counterexample;
    if (!ok) wit = s;
  }
  sum.candidates_checked = 1;

  // scalar sweep: (t, c) |-> t*c on a source with one extra variable t
  SmoothnessReport scal;
  scal.operation = FibrewiseOp::ScalarMultiplication;
  std::size_t m = a.src_dim();
  std::vector<PolyMap> inputs = {a.fibre, b.fibre, s.fibre};
  if (a.base.is_constant()) {
    Point ones(m, QuadNumber(1));
    PolyMap v;
    for (const auto& p : s.fibre) v.push_back(Polynomial::constant(m, p.evaluate(ones)));
    inputs.push_back(v);
  }
  PolyPlot swept_base = a.base;
  swept_base.src_dim = m + 1;
  for (auto& p : swept_base.components) p = p.embed(m + 1, 0);
  Polynomial t = Polynomial::variable(m + 1, m);
  for (auto d : kinds) {
    auto& v = d == BundleDiffeology::Hector ? scal.hector_verdict : scal.dvs_verdict;
    auto& wit = d == BundleDiffeology::Hector ? scal.hector_witness : scal.dvs_witness;
    for (const auto& in : inputs) {
      if (!bundle_membership(space, {a.base, in}, d).member()) continue;
      BundlePlotCandidate swept{swept_base, {}};
      for (const auto& p : in) swept.fibre.push_back(t * p.embed(m + 1, 0));
      if (d == BundleDiffeology::Hector) ++scal.candidates_checked;
      if (!bundle_membership(space, swept, d).member()) {
        v = OpVerdict::Counterexample;
        wit = swept;
        break;
      }
    }
  }
  for (auto* r : {&sum, &scal}) {
    if (r->hector_witness && hector_membership(space, *r->hector_witness).member()) {
      fail(ErrorCode::Internal, "counterexample witness is a member");
    }
    if (r->dvs_witness && dvs_membership(space, *r->dvs_witness).member()) {
      fail(ErrorCode::Internal, "counterexample witness is a member");
    }
  }
  return {sum, scal};
}

TrivializationReport group_trivialization(const SpacePresentation& space, std::size_t battery, unsigned seed) {
  if (space.is_product()) fail(ErrorCode::UnsupportedGroup, "products are not in the group catalog");
  const Family& f = space.family();
  if (!std::holds_alternative<Euclidean>(f) && !std::holds_alternative<FineVector>(f) &&
      !std::holds_alternative<IrrationalTorus>(f)) {
    fail(ErrorCode::UnsupportedGroup, family_name(f) + " is not a catalog group");
  }
  TrivializationReport rep;
  rep.group = space.render();
  rep.battery_size = battery;
  rep.forward_preserves = rep.inverse_preserves = rep.round_trip = rep.verdicts_coincide = true;
  std::size_t n = space.ambient_dim();
  std::size_t fd = fibre_dim(space);
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < battery; ++i) {
    std::size_t m = 1 + rng() % 2;
    BundlePlotCandidate c;
    c.base.src_dim = m;
    for (std::size_t k = 0; k < n; ++k) c.base.components.push_back(random_poly(rng, m, 3, true));
    for (std::size_t k = 0; k < fd; ++k) c.fibre.push_back(random_poly(rng, m, 3, true));
    // translations act by the identity on chart and lift coordinates, so
    // F(g, v) = (g, (L_g^{-1})_* v) is (base, fibre) -> (base, fibre) in T_e G coordinates
    Matrix jac = Matrix::identity(fd);
    BundlePlotCandidate fwd{c.base, {}};
    for (std::size_t r = 0; r < fd; ++r) {
      Polynomial p(m);
      for (std::size_t k = 0; k < fd; ++k) p += jac.at(r, k) * c.fibre[k];
      fwd.fibre.push_back(p);
    }
    Matrix inv = *inverse(jac);
    BundlePlotCandidate back{fwd.base, {}};
    for (std::size_t r = 0; r < fd; ++r) {
      Polynomial p(m);
      for (std::size_t k = 0; k < fd; ++k) p += inv.at(r, k) * fwd.fibre[k];
      back.fibre.push_back(p);
    }
    bool h = hector_membership(space, c).member();
    bool d = dvs_membership(space, c).member();
    // G x T_e G carries the product diffeology: base plot and polynomial fibre
    bool triv = plot_check(space, fwd.base).member();
    rep.forward_preserves = rep.forward_preserves && (h == triv);
    rep.inverse_preserves = rep.inverse_preserves && (hector_membership(space, back).member() == triv);
    rep.round_trip = rep.round_trip && back.fibre == c.fibre;
    rep.verdicts_coincide = rep.verdicts_coincide && h == d;
  }
  return rep;
}

VandermondeCertificate vandermonde_certificate(std::size_t n) {
  VandermondeCertificate c;
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    // nodes 0, 1, -1, 1/2, -1/2, 2, -2, ...
    Rational s = 0;
    if (i > 0) {
      std::size_t k = (i + 1) / 2;
      s = (k % 2 == 1) ? Rational(static_cast<long>(k / 2 + 1)) : Rational(1, static_cast<long>(k / 2 + 1));
      if (i % 2 == 0) s = -s;
    }
    c.nodes.push_back(s);
    Vector row;
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(QuadNumber(p));
      p *= s;
    }
    rows.push_back(row);
  }
  c.rank = rank(rows, n);
  return c;
}

const char* fineness_name(Fineness f) {
  switch (f) {
    case Fineness::Fine: return "fine";
    case Fineness::NotFineCertificate: return "not-fine-certificate";
    case Fineness::OutOfScope: return "out-of-scope";
  }
  return "unknown";
}

FineReport fine_check(const SpacePresentation& space, const Point& x) {
  space.require_point(x);
  FineReport out;
  if (space.is_product()) {
    out.verdict = Fineness::Fine;
    for (std::size_t k = 0; k < space.factors().size(); ++k) {
      auto r = fine_check(space.factor_space(k), space.factor_point(x, k));
      if (r.verdict != Fineness::Fine) {
        out.verdict = r.verdict;
        out.detail = "factor " + std::to_string(k) + ": " + r.detail;
        out.certificate = r.certificate;
        return out;
      }
    }
    out.detail = "every factor is fine";
    return out;
  }
  const Family& f = space.family();
  if (std::holds_alternative<Euclidean>(f) || std::holds_alternative<FineVector>(f) ||
      std::holds_alternative<IrrationalTorus>(f)) {
    out.verdict = Fineness::Fine;
    out.detail = "tangent space spanned by chart or lift curves";
    return out;
  }
  if (wedge_like(f)) {
    out.verdict = Fineness::Fine;
    out.detail = "tangent space spanned by branch curves";
    return out;
  }
  if (const auto* g = std::get_if<Generated>(&f)) {
    if (g->k >= g->n) {
      out.verdict = Fineness::Fine;
      out.detail = "generated family contains the identity chart";
      return out;
    }
    out.verdict = Fineness::OutOfScope;
    out.detail = "curves in distinct directions give independent classes";
    if (g->k == 1) out.certificate = vandermonde_certificate(8);
    return out;
  }
  bool off_origin = x != space.origin();
  if (off_origin && (std::holds_alternative<HalfLineSub>(f) || std::holds_alternative<OrbitQuotient>(f))) {
    out.verdict = Fineness::Fine;
    out.detail = "locally an open interval of R";
    return out;
  }
  if (internal_tangent(space, x).dim == 0) {
    out.verdict = Fineness::Fine;
    out.detail = "zero tangent space";
    return out;
  }
  out.verdict = Fineness::OutOfScope;
  out.detail = "no local generating set in the catalog";
  return out;
}

GammaCertificate gamma_finite_discrete(std::size_t x_size, std::size_t n) {
  if (x_size < 1 || n < 1) fail(ErrorCode::InvalidParameter, "x_size and n must be at least 1");
  GammaCertificate c;
  c.x_size = x_size;
  c.n = n;
  std::vector<SpacePresentation> copies(x_size, make_space(Euclidean{n}));
  SpacePresentation prod = product_space(copies);
  SpacePresentation rn = make_space(Euclidean{n});
  Point base(x_size * n);
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = QuadNumber(static_cast<long>(i % 3));
  // gamma(v)(i) = T(ev_i)(v), stacked over the points of X
  std::size_t dim = x_size * n;
  c.gamma = Matrix(dim, dim);
  for (std::size_t i = 0; i < x_size; ++i) {
    Matrix ev = pushforward_matrix(SmoothMap::product_projection(prod, {i}), base);
    for (std::size_t r = 0; r < ev.rows(); ++r) {
      for (std::size_t col = 0; col < ev.cols(); ++col) c.gamma.at(i * n + r, col) = ev.at(r, col);
    }
  }
  c.permutation = true;
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t ones = 0, nonzero = 0;
    for (std::size_t col = 0; col < dim; ++col) {
      if (!c.gamma.at(r, col).is_zero()) ++nonzero;
      if (c.gamma.at(r, col) == QuadNumber(1)) ++ones;
    }
    c.permutation = c.permutation && ones == 1 && nonzero == 1;
  }
  c.bijective = rank(c.gamma) == dim;

  std::mt19937 rng(11);
  c.membership_preserving = true;
  for (int trial = 0; trial < 10; ++trial) {
    BundlePlotCandidate cand;
    cand.base.src_dim = 1;
    for (std::size_t k = 0; k < dim; ++k) cand.base.components.push_back(random_poly(rng, 1, 2, true));
    for (std::size_t k = 0; k < dim; ++k) cand.fibre.push_back(random_poly(rng, 1, 2, true));
    bool whole = hector_membership(prod, cand).member();
    bool parts = true;
    for (std::size_t i = 0; i < x_size; ++i) {
      BundlePlotCandidate piece{cand.base.factor(prod, i), {}};
      for (std::size_t r = 0; r < n; ++r) {
        Polynomial p(1);
        for (std::size_t col = 0; col < dim; ++col) p += c.gamma.at(i * n + r, col) * cand.fibre[col];
        piece.fibre.push_back(p);
      }
      parts = parts && hector_membership(rn, piece).member();
    }
    c.membership_preserving = c.membership_preserving && whole == parts && whole;
  }
  Vector zero(dim);
  c.zero_section = is_zero(c.gamma * zero);
  return c;
}

}  // namespace difftan
