#include "difftan/internal_tangent.hpp"

#include <algorithm>
#include <set>

namespace difftan {

namespace {

Polynomial tvar() { return Polynomial::variable(1, 0); }

bool is_wedge_like(const Family& f) {
  return std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f) ||
         std::holds_alternative<LinesThroughOriginSub>(f);
}

bool is_wire(const Family& f) {
  const auto* g = std::get_if<Generated>(&f);
  return g && g->k == 1 && g->n >= 2;
}

bool chart_like(const Family& f) {
  return std::holds_alternative<Euclidean>(f) || std::holds_alternative<FineVector>(f) ||
         (std::holds_alternative<Generated>(f) && !is_wire(f));
}

QuadNumber linear_coefficient(const Polynomial& g) { return g.coefficient({1}); }

Polynomial negate_argument(const Polynomial& p) {
  PolyMap sub{-tvar()};
  return p.compose(sub);
}

Polynomial norm_squared(const PolyMap& comps, std::size_t nvars) {
  Polynomial s(nvars);
  for (const auto& c : comps) s += c * c;
  return s;
}

bool is_origin(const Point& x) {
  return std::all_of(x.begin(), x.end(), [](const QuadNumber& v) { return v.is_zero(); });
}

PolyMap displacement(const PolyPlot& c, const Point& x) {
  PolyMap d;
  for (std::size_t i = 0; i < x.size(); ++i) d.push_back(c.components[i] - Polynomial::constant(c.src_dim, x[i]));
  return d;
}

// x + delta(s1) on coordinate p, x + rest(s2) elsewhere
PolyPlot split_two_plot(const Point& x, const PolyMap& delta, std::size_t p) {
  PolyMap s1{Polynomial::variable(2, 0)};
  PolyMap s2{Polynomial::variable(2, 1)};
  PolyMap comps;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const PolyMap& arg = (i == p) ? s1 : s2;
    comps.push_back(Polynomial::constant(2, x[i]) + delta[i].compose(arg));
  }
  return PolyPlot(2, comps);
}

std::vector<Vector> wedge_directions(const Family& f) {
  std::vector<Vector> dirs;
  if (const auto* lines = std::get_if<LinesThroughOriginSub>(&f)) {
    for (const auto& d : lines->directions) dirs.push_back({d[0], d[1]});
  } else {
    std::size_t n = ambient_dim(f);
    for (std::size_t k = 0; k < n; ++k) dirs.push_back(unit_vector(n, k));
  }
  return dirs;
}

std::vector<Vector> chart_directions(const Family& f, const TangentOptions& opts) {
  std::size_t n = ambient_dim(f);
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < n; ++i) dirs.push_back(unit_vector(n, i));
  if (is_wire(f)) {
    for (const auto& a : opts.slopes) {
      if (a.is_zero()) continue;
      Vector v(n);
      v[0] = 1;
      v[1] = a;
      if (std::find(dirs.begin(), dirs.end(), v) == dirs.end()) dirs.push_back(v);
    }
  }
  return dirs;
}

// Writes delta = g*w when possible.
bool along_direction(const PolyMap& delta, const Vector& w, Polynomial* g) {
  std::size_t p = 0;
  while (p < w.size() && w[p].is_zero()) ++p;
  if (p == w.size()) return false;
  Polynomial cand = w[p].inverse() * delta[p];
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] * cand != delta[i]) return false;
  }
  *g = cand;
  return true;
}

BasicRelation factorization(const PolyPlot& c, const PolyPlot& through, const Polynomial& g) {
  BasicRelation r;
  r.kind = RelationKind::Factorization;
  r.terms = {{make_curve(c), 1}, {make_curve(through), -linear_coefficient(g)}};
  r.reparam = g;
  return r;
}

BasicRelation single(RelationKind kind, const PolyPlot& c) {
  BasicRelation r;
  r.kind = kind;
  r.terms = {{make_curve(c), 1}};
  return r;
}

BasicRelation diagonal_split(const PolyPlot& c, const PolyPlot& q) {
  PolyMap first{tvar(), Polynomial(1)};
  PolyMap second{Polynomial(1), tvar()};
  BasicRelation r;
  r.kind = RelationKind::DiagonalSplit;
  r.terms = {{make_curve(c), 1},
             {make_curve(PolyPlot(1, compose_maps(q.components, first))), -1},
             {make_curve(PolyPlot(1, compose_maps(q.components, second))), -1}};
  r.two_plot = q;
  return r;
}

struct LocalOut {
  std::vector<BasicRelation> relations;
  std::vector<PolyPlot> aux;
};

void chart_relations(const Point& x, const PolyPlot& c, const std::vector<Vector>& dirs, bool allow_split,
                     LocalOut& out) {
  PolyMap delta = displacement(c, x);
  for (const auto& w : dirs) {
    Polynomial g(1);
    if (!along_direction(delta, w, &g)) continue;
    PolyPlot gen = line_plot(x, w);
    if (gen.same_components(c)) return;
    out.relations.push_back(factorization(c, gen, g));
    return;
  }
  if (!allow_split) return;
  std::size_t p = 0;
  while (delta[p].is_zero()) ++p;
  PolyPlot q = split_two_plot(x, delta, p);
  BasicRelation r = diagonal_split(c, q);
  out.aux.push_back(r.terms[1].curve.plot);
  out.aux.push_back(r.terms[2].curve.plot);
  out.relations.push_back(std::move(r));
}

void wedge_relations(const Family& f, const Point& x, const PolyPlot& c, LocalOut& out) {
  auto dirs = wedge_directions(f);
  if (!is_origin(x)) {
    bool origin = false;
    PolyMap xs;
    for (const auto& v : x) xs.push_back(Polynomial::constant(0, v));
    auto k = single_branch(f, xs, &origin);
    chart_relations(x, c, {dirs.at(*k)}, false, out);
    return;
  }
  auto k = single_branch(f, c.components, nullptr);
  if (!k) fail(ErrorCode::NotAMember, c.render() + " leaves a single branch");
  Polynomial g(1);
  along_direction(c.components, dirs[*k], &g);
  PolyPlot gen = line_plot(x, dirs[*k]);
  if (gen.same_components(c)) return;
  if (linear_coefficient(g).is_zero() && !std::holds_alternative<WedgeOfLines>(f)) {
    out.relations.push_back(single(RelationKind::FlatCurve, c));
    return;
  }
  out.relations.push_back(factorization(c, gen, g));
}

void half_line_relations(const Point& x, const PolyPlot& c, LocalOut& out) {
  if (!x[0].is_zero()) {
    chart_relations(x, c, {Vector{QuadNumber(1)}}, false, out);
    return;
  }
  const Polynomial& p = c.components[0];
  if (negate_argument(p) == p) {
    out.relations.push_back(single(RelationKind::EvenCurve, c));
    return;
  }
  if (!p.divisible_by_power(0, 2)) fail(ErrorCode::NotAMember, c.render() + " is not a plot at 0");
  Polynomial r = p.divide_by_power(0, 2);
  Polynomial s1 = Polynomial::variable(2, 0);
  Polynomial s2 = Polynomial::variable(2, 1);
  PolyMap sub{s1};
  PolyPlot q(2, {s2 * s2 * r.compose(sub)});
  BasicRelation rel = diagonal_split(c, q);
  out.aux.push_back(rel.terms[1].curve.plot);
  out.aux.push_back(rel.terms[2].curve.plot);
  out.relations.push_back(std::move(rel));
}

void orbit_relations(const Point& x, const PolyPlot& c, LocalOut& out) {
  std::size_t n = x.size();
  if (!is_origin(x)) {
    PolyPlot radial = line_plot(x, Vector(x.begin(), x.end()));
    if (radial.same_components(c)) return;
    Polynomial nc = norm_squared(c.components, 1);
    QuadNumber x2;
    for (const auto& v : x) x2 += v * v;
    BasicRelation r;
    r.kind = RelationKind::Factorization;
    QuadNumber lambda = linear_coefficient(nc) / (QuadNumber(2) * x2);
    r.terms = {{make_curve(c), 1}, {make_curve(radial), -lambda}};
    PolyMap ys;
    for (std::size_t i = 0; i < n; ++i) ys.push_back(Polynomial::variable(n, i));
    r.chart = {norm_squared(ys, n)};
    out.relations.push_back(std::move(r));
    return;
  }
  Polynomial nc = norm_squared(c.components, 1);
  if (negate_argument(nc) == nc) {
    out.relations.push_back(single(RelationKind::NegationSymmetry, c));
    return;
  }
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < n; ++i) {
    if (!c.components[i].is_zero()) nonzero.push_back(i);
  }
  if (nonzero.size() >= 2) {
    PolyPlot q = split_two_plot(x, c.components, nonzero[0]);
    BasicRelation r = diagonal_split(c, q);
    out.aux.push_back(r.terms[1].curve.plot);
    out.aux.push_back(r.terms[2].curve.plot);
    out.relations.push_back(std::move(r));
    return;
  }
  std::size_t p = nonzero.at(0);
  PolyPlot axis = line_plot(x, unit_vector(n, p));
  out.relations.push_back(factorization(c, axis, c.components[p]));
  out.aux.push_back(axis);
}

void family_relations(const Family& f, const Point& x, const PolyPlot& c, const TangentOptions& opts,
                      LocalOut& out) {
  if (chart_like(f)) {
    chart_relations(x, c, chart_directions(f, opts), true, out);
  } else if (is_wire(f)) {
    chart_relations(x, c, chart_directions(f, opts), false, out);
  } else if (is_wedge_like(f)) {
    wedge_relations(f, x, c, out);
  } else if (std::holds_alternative<HalfLineSub>(f)) {
    half_line_relations(x, c, out);
  } else if (std::holds_alternative<OrbitQuotient>(f)) {
    orbit_relations(x, c, out);
  } else if (std::holds_alternative<IrrationalTorus>(f)) {
    PolyPlot gen = line_plot(x, Vector{QuadNumber(1)});
    if (!gen.same_components(c)) out.relations.push_back(factorization(c, gen, displacement(c, x)[0]));
  } else if (std::holds_alternative<Indiscrete>(f) || std::holds_alternative<ContinuousLine>(f)) {
    out.relations.push_back(single(RelationKind::ReparametrizationAbsorption, c));
  } else {
    fail(ErrorCode::NotAMember, c.render() + " is not a plot of " + render(f));
  }
}

std::vector<PolyPlot> family_generators(const Family& f, const Point& x, const TangentOptions& opts) {
  std::vector<PolyPlot> gens;
  if (chart_like(f) || is_wire(f)) {
    for (const auto& w : chart_directions(f, opts)) gens.push_back(line_plot(x, w));
  } else if (is_wedge_like(f)) {
    auto dirs = wedge_directions(f);
    if (is_origin(x)) {
      for (const auto& w : dirs) gens.push_back(line_plot(x, w));
    } else {
      PolyMap xs;
      for (const auto& v : x) xs.push_back(Polynomial::constant(0, v));
      bool origin = false;
      gens.push_back(line_plot(x, dirs.at(*single_branch(f, xs, &origin))));
    }
  } else if (std::holds_alternative<HalfLineSub>(f)) {
    if (x[0].is_zero()) {
      gens.push_back(PolyPlot(1, {tvar() * tvar()}));
    } else {
      gens.push_back(line_plot(x, Vector{QuadNumber(1)}));
    }
  } else if (std::holds_alternative<OrbitQuotient>(f)) {
    gens.push_back(is_origin(x) ? line_plot(x, unit_vector(x.size(), 0)) : line_plot(x, Vector(x.begin(), x.end())));
  } else if (std::holds_alternative<IrrationalTorus>(f)) {
    gens.push_back(line_plot(x, Vector{QuadNumber(1)}));
  }
  return gens;
}

// factor curve placed into the product with the other factors at x
PolyPlot embed_curve(const SpacePresentation& space, const Point& x, std::size_t k, const PolyPlot& local) {
  PolyPlot c = constant_plot(local.src_dim, x);
  std::size_t off = space.offset(k);
  for (std::size_t i = 0; i < local.components.size(); ++i) c.components[off + i] = local.components[i];
  return c;
}

class Harvest {
 public:
  Harvest(const SpacePresentation& space, const Point& x, const TangentOptions& opts)
      : space_(space), x_(x), opts_(opts) {}

  void process(const PolyPlot& c) {
    std::string label = make_curve(c).label;
    if (!visited_.insert(label).second) return;
    if (c.is_constant()) {
      relations_.push_back(single(RelationKind::Factorization, c));
      return;
    }
    if (!space_.is_product()) {
      LocalOut out;
      family_relations(space_.family(), x_, c, opts_, out);
      for (auto& r : out.relations) relations_.push_back(std::move(r));
      for (const auto& a : out.aux) process(a);
      return;
    }
    std::vector<std::size_t> varying;
    for (std::size_t k = 0; k < space_.factors().size(); ++k) {
      if (!c.factor(space_, k).is_constant()) varying.push_back(k);
    }
    if (varying.size() >= 2) {
      std::size_t k0 = varying[0];
      std::size_t off = space_.offset(k0);
      std::size_t n0 = ambient_dim(space_.factors()[k0]);
      PolyMap s1{Polynomial::variable(2, 0)};
      PolyMap s2{Polynomial::variable(2, 1)};
      PolyMap comps;
      for (std::size_t i = 0; i < c.components.size(); ++i) {
        bool first = i >= off && i < off + n0;
        comps.push_back(c.components[i].compose(first ? s1 : s2));
      }
      BasicRelation r = diagonal_split(c, PolyPlot(2, comps));
      PolyPlot a = r.terms[1].curve.plot;
      PolyPlot b = r.terms[2].curve.plot;
      relations_.push_back(std::move(r));
      process(a);
      process(b);
      return;
    }
    std::size_t k = varying.at(0);
    LocalOut out;
    family_relations(space_.factors()[k], space_.factor_point(x_, k), c.factor(space_, k), opts_, out);
    for (auto& r : out.relations) {
      for (auto& term : r.terms) term.curve = make_curve(embed_curve(space_, x_, k, term.curve.plot));
      r.factor = k;
      relations_.push_back(std::move(r));
    }
    for (const auto& a : out.aux) process(embed_curve(space_, x_, k, a));
  }

  std::vector<BasicRelation>& relations() { return relations_; }
  std::set<std::string>& visited() { return visited_; }

 private:
  const SpacePresentation& space_;
  const Point& x_;
  const TangentOptions& opts_;
  std::vector<BasicRelation> relations_;
  std::set<std::string> visited_;
};

// Moves torus lifts so that the curve passes through x exactly, and checks the base point.
PolyPlot normalize_curve(const SpacePresentation& space, const Point& x, const PolyPlot& c_in) {
  if (c_in.src_dim != 1) fail(ErrorCode::ShapeMismatch, "curves have one source variable");
  require_member(space, c_in);
  PolyPlot c = c_in;
  c.branches.clear();
  Point at0 = c.at_origin();
  for (std::size_t k = 0; k < space.factors().size(); ++k) {
    const Family& f = space.factors()[k];
    std::size_t off = space.offset(k);
    std::size_t n = ambient_dim(f);
    if (const auto* torus = std::get_if<IrrationalTorus>(&f)) {
      QuadNumber shift = at0[off] - x[off];
      if (!lattice_coordinates(shift, torus->theta, nullptr, nullptr)) {
        fail(ErrorCode::InvalidParameter, c_in.render() + " does not pass through " + render_point(x));
      }
      c.components[off] -= Polynomial::constant(1, shift);
      continue;
    }
    if (std::holds_alternative<OrbitQuotient>(f)) {
      QuadNumber a, b;
      for (std::size_t i = 0; i < n; ++i) {
        a += at0[off + i] * at0[off + i];
        b += x[off + i] * x[off + i];
      }
      if (a != b) fail(ErrorCode::InvalidParameter, c_in.render() + " does not pass through " + render_point(x));
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (at0[off + i] != x[off + i]) {
        fail(ErrorCode::InvalidParameter, c_in.render() + " does not pass through " + render_point(x));
      }
    }
  }
  return c;
}

Vector relation_vector(const BasicRelation& r, const std::map<std::string, std::size_t>& index, std::size_t n) {
  Vector v(n);
  for (const auto& t : r.terms) v[index.at(t.curve.label)] += t.coefficient;
  return v;
}

void index_labels(const std::vector<BasicRelation>& rels, std::vector<std::string>& labels,
                  std::map<std::string, std::size_t>& index) {
  for (const auto& r : rels) {
    for (const auto& t : r.terms) {
      if (index.emplace(t.curve.label, labels.size()).second) labels.push_back(t.curve.label);
    }
  }
}

}  // namespace

CurveGerm make_curve(PolyPlot plot) {
  CurveGerm c;
  c.label = plot.render();
  c.plot = std::move(plot);
  return c;
}

const char* relation_kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::Factorization: return "factorization";
    case RelationKind::EvenCurve: return "even-curve";
    case RelationKind::DiagonalSplit: return "diagonal-split";
    case RelationKind::FlatCurve: return "flat-curve";
    case RelationKind::ReparametrizationAbsorption: return "reparametrization-absorption";
    case RelationKind::NegationSymmetry: return "negation-symmetry";
  }
  return "unknown";
}

std::vector<CurveGerm> generating_curves(const SpacePresentation& space, const Point& x, const TangentOptions& opts) {
  space.require_point(x);
  std::vector<CurveGerm> out;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < space.factors().size(); ++k) {
    for (const auto& g : family_generators(space.factors()[k], space.factor_point(x, k), opts)) {
      CurveGerm c = make_curve(space.is_product() ? embed_curve(space, x, k, g) : g);
      if (seen.insert(c.label).second) out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<BasicRelation> harvest_relations(const SpacePresentation& space, const Point& x,
                                             const std::vector<CurveGerm>& curves, const TangentOptions& opts) {
  space.require_point(x);
  Harvest h(space, x, opts);
  for (const auto& c : curves) h.process(normalize_curve(space, x, c.plot));
  return std::move(h.relations());
}

InternalTangent::InternalTangent(SpacePresentation space, Point x, TangentOptions opts)
    : space_(std::move(space)), x_(std::move(x)), opts_(std::move(opts)) {
  report_.generators = generating_curves(space_, x_, opts_);
  Harvest h(space_, x_, opts_);
  for (const auto& g : report_.generators) h.process(g.plot);
  relation_pool_ = std::move(h.relations());

  std::map<std::string, std::size_t> index;
  for (const auto& g : report_.generators) {
    if (index.emplace(g.label, labels_.size()).second) labels_.push_back(g.label);
  }
  index_labels(relation_pool_, labels_, index);
  std::size_t n = labels_.size();
  std::vector<Vector> units, rels;
  for (std::size_t i = 0; i < n; ++i) units.push_back(unit_vector(n, i));
  for (const auto& r : relation_pool_) rels.push_back(relation_vector(r, index, n));
  QuotientSpace q(LinSpace(n, units), LinSpace(n, rels));
  report_.dim = q.dim();
  std::map<std::string, const CurveGerm*> by_label;
  for (const auto& g : report_.generators) by_label[g.label] = &g;
  for (const auto& r : relation_pool_) {
    for (const auto& t : r.terms) by_label.emplace(t.curve.label, &t.curve);
  }
  for (auto i : q.representative_indices()) {
    report_.basis.push_back(labels_[i]);
    report_.basis_curves.push_back(*by_label.at(labels_[i]));
  }
  report_.classify = Matrix(report_.dim, report_.generators.size());
  for (std::size_t j = 0; j < report_.generators.size(); ++j) {
    Vector v = *q.coordinates(unit_vector(n, index.at(report_.generators[j].label)));
    for (std::size_t i = 0; i < report_.dim; ++i) report_.classify.at(i, j) = v[i];
  }
  report_.relations = relation_pool_;
}

Vector InternalTangent::classify(const PolyPlot& curve_in) const {
  PolyPlot curve = normalize_curve(space_, x_, curve_in);
  Harvest h(space_, x_, opts_);
  for (const auto& l : labels_) h.visited().insert(l);
  h.process(curve);
  std::vector<std::string> labels = labels_;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
  std::string label = make_curve(curve).label;
  if (index.emplace(label, labels.size()).second) labels.push_back(label);
  index_labels(h.relations(), labels, index);
  std::size_t n = labels.size();

  std::vector<Vector> big, rels;
  // basis representatives first so that they are picked again
  std::vector<std::size_t> order;
  std::set<std::size_t> basis_idx;
  for (const auto& b : report_.basis) {
    order.push_back(index.at(b));
    basis_idx.insert(index.at(b));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!basis_idx.count(i)) order.push_back(i);
  }
  for (auto i : order) big.push_back(unit_vector(n, i));
  for (const auto& r : relation_pool_) rels.push_back(relation_vector(r, index, n));
  for (const auto& r : h.relations()) rels.push_back(relation_vector(r, index, n));
  QuotientSpace q(LinSpace(n, big), LinSpace(n, rels));
  const auto& reps = q.representative_indices();
  for (std::size_t i = 0; i < report_.dim; ++i) {
    if (i >= reps.size() || reps[i] != i) {
      fail(ErrorCode::Internal, "relations of " + curve.render() + " collapse existing tangent classes");
    }
  }
  Vector v = *q.coordinates(unit_vector(n, index.at(label)));
  for (std::size_t i = report_.dim; i < v.size(); ++i) {
    if (!v[i].is_zero()) {
      fail(ErrorCode::OutsideGeneratingFamily,
           curve.render() + " is independent of the generating curves of " + space_.render());
    }
  }
  v.resize(report_.dim);
  return v;
}

TangentSpaceReport internal_tangent(const SpacePresentation& space, const Point& x, const TangentOptions& opts) {
  return InternalTangent(space, x, opts).report();
}

Matrix pushforward_matrix(const SmoothMap& f, const Point& x, const TangentOptions& opts) {
  InternalTangent src(f.source(), x, opts);
  InternalTangent tgt(f.target(), f.apply(x), opts);
  Matrix m(tgt.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    Vector v = tgt.classify(f.apply(src.report().basis_curves[j].plot));
    for (std::size_t i = 0; i < tgt.dim(); ++i) m.at(i, j) = v[i];
  }
  return m;
}

Vector pushforward(const SmoothMap& f, const Point& x, const Vector& v, const TangentOptions& opts) {
  return pushforward_matrix(f, x, opts) * v;
}

ProductIsoCertificate product_tangent_iso(const SpacePresentation& a, const SpacePresentation& b, const Point& pa,
                                          const Point& pb, const TangentOptions& opts) {
  a.require_point(pa);
  b.require_point(pb);
  SpacePresentation prod = product_space({a, b});
  Point p = pa;
  p.insert(p.end(), pb.begin(), pb.end());
  std::vector<std::size_t> fa, fb;
  for (std::size_t k = 0; k < a.factors().size(); ++k) fa.push_back(k);
  for (std::size_t k = 0; k < b.factors().size(); ++k) fb.push_back(a.factors().size() + k);

  Matrix pr1 = pushforward_matrix(SmoothMap::product_projection(prod, fa), p, opts);
  Matrix pr2 = pushforward_matrix(SmoothMap::product_projection(prod, fb), p, opts);
  Matrix i1 = pushforward_matrix(SmoothMap::product_inclusion(prod, fa, p), pa, opts);
  Matrix i2 = pushforward_matrix(SmoothMap::product_inclusion(prod, fb, p), pb, opts);

  ProductIsoCertificate cert;
  cert.dim_a = pr1.rows();
  cert.dim_b = pr2.rows();
  cert.dim_product = pr1.cols();
  cert.alpha = Matrix(cert.dim_a + cert.dim_b, cert.dim_product);
  for (std::size_t j = 0; j < cert.dim_product; ++j) {
    for (std::size_t i = 0; i < cert.dim_a; ++i) cert.alpha.at(i, j) = pr1.at(i, j);
    for (std::size_t i = 0; i < cert.dim_b; ++i) cert.alpha.at(cert.dim_a + i, j) = pr2.at(i, j);
  }
  cert.beta = Matrix(cert.dim_product, cert.dim_a + cert.dim_b);
  for (std::size_t i = 0; i < cert.dim_product; ++i) {
    for (std::size_t j = 0; j < cert.dim_a; ++j) cert.beta.at(i, j) = i1.at(i, j);
    for (std::size_t j = 0; j < cert.dim_b; ++j) cert.beta.at(i, cert.dim_a + j) = i2.at(i, j);
  }
  cert.alpha_beta_identity = (cert.alpha * cert.beta).is_identity();
  cert.beta_alpha_identity = (cert.beta * cert.alpha).is_identity();
  return cert;
}

bool verify_relation(const SpacePresentation& space, const Point& x, const BasicRelation& r) {
  if (r.terms.empty()) return false;
  for (const auto& t : r.terms) {
    const PolyPlot& c = t.curve.plot;
    if (c.src_dim != 1 || c.components.size() != space.ambient_dim()) return false;
    if (c.at_origin() != x && !std::any_of(space.factors().begin(), space.factors().end(), [](const Family& f) {
          return std::holds_alternative<OrbitQuotient>(f);
        })) {
      return false;
    }
    if (!plot_check(space, c).member()) return false;
  }
  SpacePresentation local = space;
  Point lx = x;
  std::vector<PolyPlot> curves;
  if (r.factor) {
    std::size_t k = *r.factor;
    if (!space.is_product() || k >= space.factors().size()) return false;
    local = space.factor_space(k);
    lx = space.factor_point(x, k);
    for (const auto& t : r.terms) {
      for (std::size_t j = 0; j < space.factors().size(); ++j) {
        if (j == k) continue;
        PolyPlot other = t.curve.plot.factor(space, j);
        if (!other.is_constant() || other.at_origin() != space.factor_point(x, j)) return false;
      }
      curves.push_back(t.curve.plot.factor(space, k));
    }
  } else {
    for (const auto& t : r.terms) curves.push_back(t.curve.plot);
  }
  const Family& fam = local.family();
  const PolyPlot& c = curves[0];
  if (r.terms[0].coefficient != QuadNumber(1)) return false;
  switch (r.kind) {
    case RelationKind::Factorization: {
      if (curves.size() == 1) return c.is_constant();
      if (curves.size() != 2) return false;
      QuadNumber lambda = -r.terms[1].coefficient;
      if (r.reparam) {
        const Polynomial& g = *r.reparam;
        if (g.nvars() != 1 || !g.constant_term().is_zero()) return false;
        PolyMap sub{g};
        return compose_maps(curves[1].components, sub) == c.components && lambda == linear_coefficient(g);
      }
      if (r.chart.size() != 1 || !std::holds_alternative<OrbitQuotient>(fam) || is_origin(lx)) return false;
      Polynomial uc = r.chart[0].compose(c.components);
      Polynomial uq = r.chart[0].compose(curves[1].components);
      QuadNumber dq = linear_coefficient(uq);
      return uc.constant_term() == uq.constant_term() && !dq.is_zero() && linear_coefficient(uc) == lambda * dq;
    }
    case RelationKind::EvenCurve:
      return curves.size() == 1 && compose_maps(c.components, {-tvar()}) == c.components;
    case RelationKind::FlatCurve:
      if (curves.size() != 1) return false;
      if (!std::holds_alternative<AxesSub>(fam) && !std::holds_alternative<LinesThroughOriginSub>(fam) &&
          !std::holds_alternative<HalfLineSub>(fam)) {
        return false;
      }
      return std::all_of(c.components.begin(), c.components.end(),
                         [](const Polynomial& p) { return linear_coefficient(p).is_zero(); });
    case RelationKind::ReparametrizationAbsorption:
      return curves.size() == 1 &&
             (std::holds_alternative<Indiscrete>(fam) || std::holds_alternative<ContinuousLine>(fam));
    case RelationKind::NegationSymmetry: {
      if (curves.size() != 1 || !std::holds_alternative<OrbitQuotient>(fam)) return false;
      Polynomial nc = norm_squared(c.components, 1);
      return negate_argument(nc) == nc;
    }
    case RelationKind::DiagonalSplit: {
      if (curves.size() != 3 || !r.two_plot) return false;
      if (r.terms[1].coefficient != QuadNumber(-1) || r.terms[2].coefficient != QuadNumber(-1)) return false;
      const PolyPlot& q = *r.two_plot;
      if (q.src_dim != 2) return false;
      PolyPlot qq = q;
      if (r.factor) qq = q.components.size() == local.ambient_dim() ? q : q.factor(space, *r.factor);
      PlotCertificates certs;
      if (std::holds_alternative<HalfLineSub>(fam) && qq.components.size() == 1) {
        // q = s2^2 * w(s1)
        const Polynomial& qc = qq.components[0];
        Polynomial s2 = Polynomial::variable(2, 1);
        if (qc.divisible_by_power(1, 2)) {
          Polynomial w = qc.divide_by_power(1, 2);
          certs.sum_of_squares = std::vector<WeightedSquare>{{w, s2}};
        }
      }
      MembershipWitness w;
      try {
        w = plot_check(local, qq, certs);
      } catch (const Error&) {
        return false;
      }
      if (!w.member()) return false;
      PolyMap diag{tvar(), tvar()}, first{tvar(), Polynomial(1)}, second{Polynomial(1), tvar()};
      return compose_maps(qq.components, diag) == c.components &&
             compose_maps(qq.components, first) == curves[1].components &&
             compose_maps(qq.components, second) == curves[2].components;
    }
  }
  return false;
}

DerivativeClaimReport derivative_claim_check(const PolyPlot& p, unsigned k) {
  SpacePresentation target = SmoothMap::three_lines_target();
  require_member(target, p);
  SmoothMap inv = SmoothMap::three_lines_inverse();
  const Family& fam = target.family();
  DerivativeClaimReport rep;
  PolyPlot fp = inv.apply(p);
  PolyMap dp = p.components;
  PolyMap dfp = fp.components;
  std::vector<QuadNumber> samples = {QuadNumber(-2), QuadNumber(-1), QuadNumber::fraction(-1, 2), QuadNumber(0),
                                     QuadNumber::fraction(1, 2), QuadNumber(1), QuadNumber(2)};
  for (unsigned i = 1; i <= k; ++i) {
    for (auto& c : dp) c = c.derivative(0);
    for (auto& c : dfp) c = c.derivative(0);
    PolyPlot deriv(p.src_dim, dp);
    if (!plot_check(target, deriv).member()) {
      rep.holds = false;
      rep.detail = "derivative " + std::to_string(i) + " leaves the three lines";
      return rep;
    }
    if (inv.apply(deriv).components != dfp) {
      rep.holds = false;
      rep.detail = "derivative " + std::to_string(i) + " does not commute with the inverse map";
      return rep;
    }
    if (p.src_dim == 1) {
      for (const auto& t : samples) {
        Point at{t};
        Point v = evaluate_map(dp, at);
        if (!contains(fam, v)) {
          rep.holds = false;
          rep.detail = "derivative " + std::to_string(i) + " at t=" + t.to_string() + " is off the lines";
          return rep;
        }
        if (inv.apply(v) != evaluate_map(dfp, at)) {
          rep.holds = false;
          rep.detail = "derivative " + std::to_string(i) + " at t=" + t.to_string() + " disagrees";
          return rep;
        }
      }
    }
    rep.checked_orders = i;
  }
  rep.detail = "checked " + std::to_string(k) + " derivatives";
  return rep;
}

}  // namespace difftan
