#include "difftan/external_tangent.hpp"

#include <algorithm>
#include <functional>

namespace difftan {

namespace {

bool is_origin(const Point& x) {
  return std::all_of(x.begin(), x.end(), [](const QuadNumber& v) { return v.is_zero(); });
}

GermSheet affine_sheet(const Point& x, const std::vector<Vector>& dirs) {
  // x + sum_v y_v * dirs[v], generators y_v
  GermSheet s;
  s.nvars = dirs.size();
  s.absorbed.assign(x.size(), false);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Polynomial p = Polynomial::constant(s.nvars, x[i]);
    for (std::size_t v = 0; v < dirs.size(); ++v) p += dirs[v][i] * Polynomial::variable(s.nvars, v);
    s.param.push_back(p);
  }
  for (std::size_t v = 0; v < s.nvars; ++v) s.generators.push_back(Polynomial::variable(s.nvars, v));
  return s;
}

GermSheet constant_sheet(const Point& x) {
  GermSheet s;
  s.nvars = 0;
  s.absorbed.assign(x.size(), true);
  for (const auto& v : x) s.param.push_back(Polynomial::constant(0, v));
  return s;
}

std::vector<Vector> coordinate_dirs(std::size_t n) {
  std::vector<Vector> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(unit_vector(n, i));
  return d;
}

GermAlgebraPresentation factor_germs(const Family& f, const Point& x) {
  GermAlgebraPresentation g;
  std::size_t n = ambient_dim(f);
  bool wedge_like = std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f) ||
                    std::holds_alternative<LinesThroughOriginSub>(f);
  if (std::holds_alternative<Euclidean>(f) || std::holds_alternative<FineVector>(f) ||
      std::holds_alternative<Generated>(f)) {
    g.form = GermForm::FreeSeries;
    g.sheets.push_back(affine_sheet(x, coordinate_dirs(n)));
  } else if (wedge_like) {
    std::vector<Vector> dirs;
    if (const auto* lines = std::get_if<LinesThroughOriginSub>(&f)) {
      for (const auto& d : lines->directions) dirs.push_back({d[0], d[1]});
    } else {
      dirs = coordinate_dirs(n);
    }
    if (is_origin(x)) {
      g.form = GermForm::WedgeTuples;
      g.wedge_j = dirs.size();
      for (const auto& d : dirs) g.sheets.push_back(affine_sheet(x, {d}));
      for (std::size_t k = 1; k < dirs.size(); ++k) g.gluings.push_back({0, k, {0}, {0}});
    } else {
      PolyMap xs;
      for (const auto& v : x) xs.push_back(Polynomial::constant(0, v));
      bool origin = false;
      auto k = single_branch(f, xs, &origin);
      g.form = GermForm::FreeSeries;
      g.sheets.push_back(affine_sheet(x, {dirs.at(*k)}));
    }
  } else if (std::holds_alternative<HalfLineSub>(f)) {
    g.form = GermForm::FreeSeries;
    if (x[0].is_zero()) {
      GermSheet s;
      s.nvars = 1;
      s.absorbed = {false};
      Polynomial t = Polynomial::variable(1, 0);
      s.param = {t * t};
      s.generators = {t * t};
      g.sheets.push_back(s);
    } else {
      g.sheets.push_back(affine_sheet(x, {Vector{QuadNumber(1)}}));
    }
  } else if (std::holds_alternative<OrbitQuotient>(f)) {
    g.form = GermForm::FreeSeries;
    GermSheet s = affine_sheet(x, coordinate_dirs(n));
    Polynomial u(n);
    QuadNumber x2;
    for (std::size_t i = 0; i < n; ++i) {
      u += s.param[i] * s.param[i];
      x2 += x[i] * x[i];
    }
    s.generators = {u - Polynomial::constant(n, x2)};
    g.sheets.push_back(s);
  } else {
    g.form = GermForm::ConstantsOnly;
    g.sheets.push_back(constant_sheet(x));
  }
  return g;
}

Polynomial restrict_sheet(const Polynomial& p, const std::vector<std::size_t>& zero) {
  std::size_t r = p.nvars() - zero.size();
  PolyMap sub;
  std::size_t next = 0;
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    if (std::find(zero.begin(), zero.end(), v) != zero.end()) {
      sub.push_back(Polynomial(r));
    } else {
      sub.push_back(Polynomial::variable(r, next++));
    }
  }
  if (p.nvars() == 0) return p;
  return p.compose(sub);
}

std::vector<Exponent> monomials_up_to(std::size_t nvars, unsigned order) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == nvars) {
      if (total_degree(e) >= 1) out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (nvars > 0) rec(0, order);
  std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
  return out;
}

struct GenMonomial {
  Polynomial value;
  unsigned count;
  std::vector<unsigned> alpha;
};

// All products of generators with at least one factor, truncated at order.
std::vector<GenMonomial> generator_monomials(const GermSheet& s, unsigned order) {
  std::vector<GenMonomial> out;
  std::vector<Polynomial> gens;
  std::vector<unsigned> low;
  for (const auto& g : s.generators) {
    if (!g.constant_term().is_zero()) fail(ErrorCode::NonzeroConstantTerm, "germ generator has a constant term");
    Polynomial gt = g.truncated(order);
    if (gt.is_zero()) continue;
    gens.push_back(gt);
    low.push_back(static_cast<unsigned>(gt.lowest_degree()));
  }
  std::vector<unsigned> alpha(gens.size(), 0);
  std::function<void(std::size_t, const Polynomial&, unsigned, unsigned)> rec =
      [&](std::size_t i, const Polynomial& cur, unsigned weight, unsigned count) {
        if (i == gens.size()) {
          if (count >= 1 && !cur.is_zero()) out.push_back({cur, count, alpha});
          return;
        }
        Polynomial p = cur;
        unsigned w = weight;
        for (unsigned e = 0;; ++e) {
          alpha[i] = e;
          rec(i + 1, p, w, count + e);
          w += low[i];
          if (w > order) break;
          p = p.mul_truncated(gens[i], order);
          if (p.is_zero()) break;
        }
      };
  rec(0, Polynomial::constant(s.nvars, 1), 0, 0);
  // g_1 before g_2 before g_1^2 ...
  std::stable_sort(out.begin(), out.end(), [](const GenMonomial& a, const GenMonomial& b) {
    if (a.count != b.count) return a.count < b.count;
    return a.alpha > b.alpha;
  });
  return out;
}

int tuple_low_degree(const GermTuple& f) {
  int d = -1;
  for (const auto& p : f) {
    int k = p.lowest_degree();
    if (k >= 0 && (d < 0 || k < d)) d = k;
  }
  return d;
}

std::string render_tuple(const GermTuple& f) {
  if (f.size() == 1) return f[0].to_string();
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += " | ";
    s += f[i].to_string();
  }
  return s + ")";
}

// Polynomial map from m variables into the sheet variables with param o lift == target.
std::optional<PolyMap> lift_through_sheet(const GermSheet& s, const PolyMap& target, std::size_t m) {
  PolyMap lift(s.nvars, Polynomial(m));
  for (std::size_t v = 0; v < s.nvars; ++v) {
    bool found = false;
    for (std::size_t i = 0; i < s.param.size() && !found; ++i) {
      if (s.absorbed[i]) continue;
      const Polynomial& p = s.param[i];
      auto used = p.used_variables();
      if (used.size() != 1 || *used.begin() != v) continue;
      if (p.degree() == 1) {
        Exponent e(s.nvars, 0);
        e[v] = 1;
        QuadNumber a = p.coefficient(e);
        lift[v] = a.inverse() * (target[i] - Polynomial::constant(m, p.constant_term()));
        found = true;
      } else if (p.degree() == 2 && p.lowest_degree() == 2 && target[i].is_zero()) {
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  for (std::size_t i = 0; i < s.param.size(); ++i) {
    if (s.absorbed[i]) continue;
    Polynomial composed = s.nvars == 0 ? Polynomial::constant(m, s.param[i].constant_term()) : s.param[i].compose(lift);
    if (composed != target[i]) return std::nullopt;
  }
  return lift;
}

Polynomial pull_back(const Polynomial& p, const PolyMap& lift, std::size_t m) {
  if (p.nvars() == 0) return Polynomial::constant(m, p.constant_term());
  return p.compose(lift);
}

}  // namespace

const char* germ_form_name(GermForm f) {
  switch (f) {
    case GermForm::FreeSeries: return "free-series";
    case GermForm::WedgeTuples: return "wedge-tuples";
    case GermForm::ConstantsOnly: return "constants-only";
    case GermForm::GluedSheets: return "glued-sheets";
  }
  return "unknown";
}

GermAlgebraPresentation GermAlgebraPresentation::free_series(std::size_t nvars, std::vector<Polynomial> generators) {
  GermAlgebraPresentation g;
  g.form = GermForm::FreeSeries;
  GermSheet s;
  s.nvars = nvars;
  for (const auto& p : generators) {
    if (p.nvars() != nvars) fail(ErrorCode::ShapeMismatch, "generator in the wrong number of variables");
  }
  s.generators = std::move(generators);
  g.sheets.push_back(std::move(s));
  return g;
}

GermAlgebraPresentation GermAlgebraPresentation::wedge_tuples(std::size_t j) {
  return factor_germs(WedgeOfLines{j}, Point(j));
}

GermAlgebraPresentation GermAlgebraPresentation::constants_only() {
  GermAlgebraPresentation g;
  g.form = GermForm::ConstantsOnly;
  g.sheets.push_back(GermSheet{});
  return g;
}

std::string GermAlgebraPresentation::describe() const {
  switch (form) {
    case GermForm::ConstantsOnly: return "constants";
    case GermForm::WedgeTuples: return "wedge tuples of " + std::to_string(wedge_j) + " series agreeing at 0";
    case GermForm::FreeSeries: {
      std::string s = "series generated by {";
      auto names = default_variable_names(sheets[0].nvars);
      for (std::size_t i = 0; i < sheets[0].generators.size(); ++i) {
        if (i) s += ", ";
        s += sheets[0].generators[i].to_string(names);
      }
      return s + "}";
    }
    case GermForm::GluedSheets:
      return std::to_string(sheets.size()) + " glued sheets";
  }
  return {};
}

GermAlgebraPresentation germ_algebra(const SpacePresentation& space, const Point& x) {
  space.require_point(x);
  if (!space.is_product()) return factor_germs(space.family(), x);
  GermAlgebraPresentation acc;
  acc.sheets.push_back(GermSheet{});
  for (std::size_t k = 0; k < space.factors().size(); ++k) {
    GermAlgebraPresentation fg = factor_germs(space.factors()[k], space.factor_point(x, k));
    std::size_t nf = fg.sheets.size();
    GermAlgebraPresentation next;
    for (const auto& c : acc.sheets) {
      for (const auto& f : fg.sheets) {
        GermSheet s;
        s.nvars = c.nvars + f.nvars;
        for (const auto& p : c.param) s.param.push_back(p.embed(s.nvars, 0));
        for (const auto& p : f.param) s.param.push_back(p.embed(s.nvars, c.nvars));
        s.absorbed = c.absorbed;
        s.absorbed.insert(s.absorbed.end(), f.absorbed.begin(), f.absorbed.end());
        for (const auto& p : c.generators) s.generators.push_back(p.embed(s.nvars, 0));
        for (const auto& p : f.generators) s.generators.push_back(p.embed(s.nvars, c.nvars));
        next.sheets.push_back(std::move(s));
      }
    }
    for (const auto& g : acc.gluings) {
      for (std::size_t fi = 0; fi < nf; ++fi) {
        next.gluings.push_back({g.a * nf + fi, g.b * nf + fi, g.zero_a, g.zero_b});
      }
    }
    for (std::size_t ci = 0; ci < acc.sheets.size(); ++ci) {
      std::size_t shift = acc.sheets[ci].nvars;
      for (const auto& h : fg.gluings) {
        SheetGluing g{ci * nf + h.a, ci * nf + h.b, {}, {}};
        for (auto v : h.zero_a) g.zero_a.push_back(v + shift);
        for (auto v : h.zero_b) g.zero_b.push_back(v + shift);
        next.gluings.push_back(std::move(g));
      }
    }
    acc.sheets = std::move(next.sheets);
    acc.gluings = std::move(next.gluings);
  }
  if (acc.sheets.size() > 1) {
    acc.form = GermForm::GluedSheets;
  } else {
    acc.form = acc.sheets[0].nvars == 0 ? GermForm::ConstantsOnly : GermForm::FreeSeries;
  }
  return acc;
}

CotangentSpace::CotangentSpace(const GermAlgebraPresentation& alg, unsigned order) : alg_(alg), order_(order) {
  if (order < 2) fail(ErrorCode::InvalidParameter, "truncation order must be at least 2");
  std::size_t ns = alg_.sheets.size();
  for (const auto& s : alg_.sheets) {
    offsets_.push_back(width_);
    monomials_.push_back(monomials_up_to(s.nvars, order));
    width_ += monomials_.back().size();
  }
  std::vector<Vector> squares;
  if (ns == 1 && alg_.gluings.empty()) {
    for (auto& m : generator_monomials(alg_.sheets[0], order)) {
      GermTuple f{m.value};
      if (m.count >= 2) {
        squares.push_back(flatten(f));
      }
      ideal_.push_back(std::move(f));
    }
  } else {
    std::vector<GermTuple> candidates;
    for (std::size_t s = 0; s < ns; ++s) {
      for (auto& m : generator_monomials(alg_.sheets[s], order)) {
        GermTuple f;
        for (std::size_t r = 0; r < ns; ++r) f.push_back(Polynomial(alg_.sheets[r].nvars));
        f[s] = m.value;
        candidates.push_back(std::move(f));
      }
    }
    // constraint rows from gluings, one block per restricted monomial
    std::vector<Vector> columns;
    std::size_t rows = 0;
    std::vector<std::pair<std::size_t, std::vector<Exponent>>> blocks;
    for (const auto& g : alg_.gluings) {
      std::size_t r = alg_.sheets[g.a].nvars - g.zero_a.size();
      if (alg_.sheets[g.b].nvars - g.zero_b.size() != r) fail(ErrorCode::ShapeMismatch, "inconsistent gluing");
      blocks.push_back({rows, monomials_up_to(r, order)});
      rows += blocks.back().second.size();
    }
    for (const auto& f : candidates) {
      Vector col(rows);
      for (std::size_t gi = 0; gi < alg_.gluings.size(); ++gi) {
        const auto& g = alg_.gluings[gi];
        Polynomial diff = restrict_sheet(f[g.a], g.zero_a) - restrict_sheet(f[g.b], g.zero_b);
        const auto& [start, monos] = blocks[gi];
        for (std::size_t k = 0; k < monos.size(); ++k) col[start + k] = diff.coefficient(monos[k]);
      }
      columns.push_back(std::move(col));
    }
    std::vector<Vector> ker;
    if (rows == 0) {
      for (std::size_t j = 0; j < candidates.size(); ++j) ker.push_back(unit_vector(candidates.size(), j));
    } else {
      ker = kernel(Matrix::from_columns(columns, rows));
    }
    for (const auto& kv : ker) {
      GermTuple f;
      for (std::size_t r = 0; r < ns; ++r) f.push_back(Polynomial(alg_.sheets[r].nvars));
      for (std::size_t j = 0; j < kv.size(); ++j) {
        if (kv[j].is_zero()) continue;
        for (std::size_t r = 0; r < ns; ++r) f[r] += kv[j] * candidates[j][r];
      }
      ideal_.push_back(std::move(f));
    }
    // keep an independent subset
    EchelonBasis indep(width_);
    std::vector<GermTuple> kept;
    for (auto& f : ideal_) {
      if (indep.insert(flatten(f))) kept.push_back(std::move(f));
    }
    ideal_ = std::move(kept);
    std::vector<int> low;
    for (const auto& f : ideal_) low.push_back(tuple_low_degree(f));
    EchelonBasis sq(width_);
    for (std::size_t i = 0; i < ideal_.size(); ++i) {
      for (std::size_t j = i; j < ideal_.size(); ++j) {
        if (static_cast<unsigned>(low[i] + low[j]) > order) continue;
        Vector v = flatten(multiply(ideal_[i], ideal_[j]));
        if (sq.insert(v)) squares.push_back(std::move(v));
      }
    }
  }
  for (const auto& f : ideal_) ideal_vectors_.push_back(flatten(f));
  ideal_echelon_ = EchelonBasis(width_);
  for (const auto& v : ideal_vectors_) ideal_echelon_.insert(v);
  square_vectors_ = squares;
  quotient_ = std::make_unique<QuotientSpace>(LinSpace(width_, ideal_vectors_), LinSpace(width_, square_vectors_));
  reps_ = quotient_->representative_indices();
}

Vector CotangentSpace::flatten(const GermTuple& f) const {
  if (f.size() != alg_.sheets.size()) fail(ErrorCode::ShapeMismatch, "germ has the wrong number of sheets");
  Vector v(width_);
  for (std::size_t s = 0; s < f.size(); ++s) {
    const auto& monos = monomials_[s];
    for (std::size_t k = 0; k < monos.size(); ++k) v[offsets_[s] + k] = f[s].coefficient(monos[k]);
  }
  return v;
}

std::vector<GermTuple> CotangentSpace::representatives() const {
  std::vector<GermTuple> out;
  for (auto i : reps_) out.push_back(ideal_[i]);
  return out;
}

std::vector<std::string> CotangentSpace::representative_labels() const {
  std::vector<std::string> out;
  for (auto i : reps_) out.push_back(render_tuple(ideal_[i]));
  return out;
}

QuadNumber CotangentSpace::value_at_base(const GermTuple& f) const {
  if (f.empty()) return QuadNumber();
  return f[0].constant_term();
}

GermTuple CotangentSpace::constant(const QuadNumber& c) const {
  GermTuple f;
  for (const auto& s : alg_.sheets) f.push_back(Polynomial::constant(s.nvars, c));
  return f;
}

GermTuple CotangentSpace::multiply(const GermTuple& f, const GermTuple& g) const {
  if (f.size() != g.size()) fail(ErrorCode::ShapeMismatch, "germs on different sheet counts");
  GermTuple h;
  for (std::size_t s = 0; s < f.size(); ++s) h.push_back(f[s].mul_truncated(g[s], order_));
  return h;
}

bool CotangentSpace::in_algebra(const GermTuple& f) const {
  QuadNumber c = value_at_base(f);
  for (const auto& p : f) {
    if (p.constant_term() != c) return false;
  }
  return ideal_echelon_.contains(flatten(f));
}

Vector CotangentSpace::coordinates(const GermTuple& f) const {
  if (!in_algebra(f)) fail(ErrorCode::InvalidParameter, render_tuple(f) + " is not a presented germ");
  auto c = quotient_->coordinates(flatten(f));
  return *c;
}

CotangentResult cotangent_space(const GermAlgebraPresentation& alg, unsigned order) {
  CotangentSpace c(alg, order);
  return {c.dim(), c.representative_labels()};
}

ExternalTangentReport external_tangent(const SpacePresentation& space, const Point& x, unsigned order) {
  GermAlgebraPresentation alg = germ_algebra(space, x);
  CotangentSpace lo(alg, order);
  CotangentSpace hi(alg, order + 1);
  if (lo.dim() != hi.dim()) {
    fail(ErrorCode::StabilizationFailure, "cotangent dimension " + std::to_string(lo.dim()) + " at order " +
                                              std::to_string(order) + " but " + std::to_string(hi.dim()) +
                                              " at order " + std::to_string(order + 1));
  }
  ExternalTangentReport rep;
  rep.dim = lo.dim();
  rep.representatives = lo.representative_labels();
  rep.truncation_orders_checked = {order, order + 1};
  for (std::size_t i = 0; i < rep.dim; ++i) rep.derivation_basis.emplace_back(lo.ideal_basis().size());
  for (std::size_t k = 0; k < lo.ideal_basis().size(); ++k) {
    Vector c = lo.coordinates(lo.ideal_basis()[k]);
    for (std::size_t i = 0; i < rep.dim; ++i) rep.derivation_basis[i][k] = c[i];
  }
  return rep;
}

ComparisonReport comparison_beta(const SpacePresentation& space, const Point& x, const TangentOptions& opts) {
  InternalTangent internal(space, x, opts);
  GermAlgebraPresentation alg = germ_algebra(space, x);
  ExternalTangentReport ext = external_tangent(space, x, opts.order);
  CotangentSpace cot(alg, opts.order);
  auto reps = cot.representatives();
  ComparisonReport rep;
  rep.internal_dim = internal.dim();
  rep.external_dim = ext.dim;
  rep.beta = Matrix(rep.external_dim, rep.internal_dim);
  for (std::size_t j = 0; j < rep.internal_dim; ++j) {
    const PolyPlot& c = internal.report().basis_curves[j].plot;
    bool lifted = false;
    for (std::size_t s = 0; s < alg.sheets.size() && !lifted; ++s) {
      auto lift = lift_through_sheet(alg.sheets[s], c.components, 1);
      if (!lift) continue;
      lifted = true;
      for (std::size_t i = 0; i < rep.external_dim; ++i) {
        rep.beta.at(i, j) = pull_back(reps[i][s], *lift, 1).coefficient({1});
      }
    }
    if (!lifted) fail(ErrorCode::Internal, "curve " + c.render() + " does not lift to a germ sheet");
  }
  rep.rank = rank(rep.beta);
  rep.injective = rep.rank == rep.internal_dim;
  rep.surjective = rep.rank == rep.external_dim;
  return rep;
}

Matrix external_pushforward_matrix(const SmoothMap& f, const Point& x, unsigned order) {
  Point y = f.apply(x);
  GermAlgebraPresentation ax = germ_algebra(f.source(), x);
  GermAlgebraPresentation ay = germ_algebra(f.target(), y);
  CotangentSpace cx(ax, order), cy(ay, order);
  auto reps = cy.representatives();
  Matrix m(cy.dim(), cx.dim());
  // lift every source sheet through some target sheet once
  std::vector<std::pair<std::size_t, PolyMap>> lifts;
  for (const auto& s : ax.sheets) {
    PolyPlot image = f.apply(PolyPlot(s.nvars, s.param));
    bool found = false;
    for (std::size_t t = 0; t < ay.sheets.size() && !found; ++t) {
      auto lift = lift_through_sheet(ay.sheets[t], image.components, s.nvars);
      if (!lift) continue;
      lifts.push_back({t, *lift});
      found = true;
    }
    if (!found) fail(ErrorCode::UnsupportedMap, f.name() + " does not map germ sheets to germ sheets");
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    GermTuple pulled;
    for (std::size_t s = 0; s < ax.sheets.size(); ++s) {
      const auto& [t, lift] = lifts[s];
      pulled.push_back(pull_back(reps[i][t], lift, ax.sheets[s].nvars).truncated(order));
    }
    Vector c = cx.coordinates(pulled);
    for (std::size_t j = 0; j < cx.dim(); ++j) m.at(i, j) = c[j];
  }
  return m;
}

}  // namespace difftan
