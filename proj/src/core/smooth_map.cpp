#include "difftan/smooth_map.hpp"

namespace difftan {

namespace {

PolyMap identity_coords(std::size_t n) {
  PolyMap m;
  for (std::size_t i = 0; i < n; ++i) m.push_back(Polynomial::variable(n, i));
  return m;
}

bool wedge_like(const Family& f) {
  return std::holds_alternative<WedgeOfLines>(f) || std::holds_alternative<AxesSub>(f) ||
         std::holds_alternative<LinesThroughOriginSub>(f);
}

SpacePresentation select_factors(const SpacePresentation& product, const std::vector<std::size_t>& factors) {
  if (factors.empty()) fail(ErrorCode::UnsupportedMap, "no factors selected");
  std::vector<SpacePresentation> parts;
  for (auto k : factors) {
    if (k >= product.factors().size()) fail(ErrorCode::UnsupportedMap, "factor index out of range");
    parts.push_back(product.factor_space(k));
  }
  return parts.size() == 1 ? parts.front() : SpacePresentation::product(parts);
}

// Branch formulas for the inverse three-lines map, one per line of the target.
PolyMap three_lines_branch(std::size_t k) {
  Polynomial a = Polynomial::variable(2, 0);
  Polynomial b = Polynomial::variable(2, 1);
  Polynomial z(2);
  switch (k) {
    case 0: return {a, z, z};
    case 1: return {z, b, z};
    default: return {z, z, QuadNumber::sqrt(2) * a};
  }
}

}  // namespace

SmoothMap SmoothMap::identity(const SpacePresentation& space) {
  SmoothMap f(Kind::Identity, space, space, "id");
  f.coords_ = identity_coords(space.ambient_dim());
  return f;
}

SmoothMap SmoothMap::polynomial(std::size_t n, std::size_t m, PolyMap components) {
  if (components.size() != m) fail(ErrorCode::UnsupportedMap, "polynomial map needs " + std::to_string(m) + " components");
  for (const auto& c : components) {
    if (c.nvars() != n) fail(ErrorCode::UnsupportedMap, "polynomial map component in the wrong variables");
  }
  SmoothMap f(Kind::Polynomial, make_space(Euclidean{n}), make_space(Euclidean{m}), "polynomial");
  f.coords_ = std::move(components);
  return f;
}

SmoothMap SmoothMap::branch_inclusion(const SpacePresentation& target, std::size_t branch) {
  if (target.is_product() || !wedge_like(target.family())) {
    fail(ErrorCode::UnsupportedMap, "branch inclusion needs a wedge, axes or lines space");
  }
  std::size_t n = target.ambient_dim();
  Polynomial t = Polynomial::variable(1, 0);
  PolyMap coords(n, Polynomial(1));
  if (const auto* lines = std::get_if<LinesThroughOriginSub>(&target.family())) {
    if (branch >= lines->directions.size()) fail(ErrorCode::UnsupportedMap, "branch index out of range");
    coords[0] = lines->directions[branch][0] * t;
    coords[1] = lines->directions[branch][1] * t;
  } else {
    if (branch >= n) fail(ErrorCode::UnsupportedMap, "branch index out of range");
    coords[branch] = t;
  }
  SmoothMap f(Kind::BranchInclusion, make_space(Euclidean{1}), target,
              "branch " + std::to_string(branch + 1) + " inclusion");
  f.coords_ = std::move(coords);
  return f;
}

SmoothMap SmoothMap::subset_inclusion(const SpacePresentation& source) {
  bool ok = !source.is_product() &&
            (wedge_like(source.family()) || std::holds_alternative<HalfLineSub>(source.family()));
  if (!ok) fail(ErrorCode::UnsupportedMap, "no subset inclusion for " + source.render());
  std::size_t n = source.ambient_dim();
  SmoothMap f(Kind::SubsetInclusion, source, make_space(Euclidean{n}), "inclusion");
  f.coords_ = identity_coords(n);
  return f;
}

SmoothMap SmoothMap::wedge_to_axes(std::size_t j) {
  SmoothMap f(Kind::WedgeToAxes, make_space(WedgeOfLines{j}), make_space(AxesSub{j}), "wedge to axes");
  f.coords_ = identity_coords(j);
  return f;
}

SmoothMap SmoothMap::quotient_projection(const SpacePresentation& target) {
  if (target.is_product()) fail(ErrorCode::UnsupportedMap, "quotient projection onto a product");
  std::size_t n = target.ambient_dim();
  if (!std::holds_alternative<IrrationalTorus>(target.family()) &&
      !std::holds_alternative<OrbitQuotient>(target.family())) {
    fail(ErrorCode::UnsupportedMap, "no quotient projection onto " + target.render());
  }
  SmoothMap f(Kind::QuotientProjection, make_space(Euclidean{n}), target, "quotient projection");
  f.coords_ = identity_coords(n);
  return f;
}

SmoothMap SmoothMap::product_projection(const SpacePresentation& product, std::vector<std::size_t> factors) {
  if (!product.is_product()) fail(ErrorCode::UnsupportedMap, "projection from a non-product");
  SpacePresentation target = select_factors(product, factors);
  std::size_t n = product.ambient_dim();
  PolyMap coords;
  for (auto k : factors) {
    std::size_t off = product.offset(k);
    for (std::size_t i = 0; i < ambient_dim(product.factors()[k]); ++i) {
      coords.push_back(Polynomial::variable(n, off + i));
    }
  }
  SmoothMap f(Kind::ProductProjection, product, target, "projection");
  f.coords_ = std::move(coords);
  return f;
}

SmoothMap SmoothMap::product_inclusion(const SpacePresentation& product, std::vector<std::size_t> factors,
                                       const Point& base) {
  if (!product.is_product()) fail(ErrorCode::UnsupportedMap, "inclusion into a non-product");
  product.require_point(base);
  SpacePresentation source = select_factors(product, factors);
  std::size_t m = source.ambient_dim();
  PolyMap coords;
  for (std::size_t i = 0; i < product.ambient_dim(); ++i) coords.push_back(Polynomial::constant(m, base[i]));
  std::size_t var = 0;
  for (auto k : factors) {
    std::size_t off = product.offset(k);
    for (std::size_t i = 0; i < ambient_dim(product.factors()[k]); ++i) {
      coords[off + i] = Polynomial::variable(m, var++);
    }
  }
  SmoothMap f(Kind::ProductInclusion, source, product, "inclusion");
  f.coords_ = std::move(coords);
  return f;
}

SpacePresentation SmoothMap::three_lines_source() { return make_space(AxesSub{3}); }

SpacePresentation SmoothMap::three_lines_target() {
  return make_space(LinesThroughOriginSub{{Direction{QuadNumber(1), QuadNumber(0)},
                                           Direction{QuadNumber(0), QuadNumber(1)},
                                           Direction{QuadNumber(1), QuadNumber(1)}}});
}

SmoothMap SmoothMap::three_lines() {
  SmoothMap f(Kind::ThreeLines, three_lines_source(), three_lines_target(), "three lines");
  Polynomial x = Polynomial::variable(3, 0);
  Polynomial y = Polynomial::variable(3, 1);
  Polynomial z = Polynomial::variable(3, 2);
  QuadNumber h = QuadNumber::sqrt(2).inverse();
  f.coords_ = {x + h * z, y + h * z};
  return f;
}

SmoothMap SmoothMap::three_lines_inverse() {
  return SmoothMap(Kind::ThreeLinesInverse, three_lines_target(), three_lines_source(), "three lines inverse");
}

SmoothMap SmoothMap::compose(const SmoothMap& g, const SmoothMap& f) {
  if (!(f.target_ == g.source_)) {
    fail(ErrorCode::UnsupportedMap, "cannot compose: " + f.target_.render() + " vs " + g.source_.render());
  }
  SmoothMap h(Kind::Composite, f.source_, g.target_, g.name_ + " o " + f.name_);
  auto append = [&](const SmoothMap& m) {
    if (m.kind_ == Kind::Composite) {
      h.parts_.insert(h.parts_.end(), m.parts_.begin(), m.parts_.end());
    } else {
      h.parts_.push_back(m);
    }
  };
  append(f);
  append(g);
  return h;
}

PolyPlot SmoothMap::apply(const PolyPlot& p) const {
  if (p.components.size() != source_.ambient_dim()) {
    fail(ErrorCode::ShapeMismatch, name_ + " expects plots with " + std::to_string(source_.ambient_dim()) +
                                       " components");
  }
  if (kind_ == Kind::Composite) {
    PolyPlot q = p;
    for (const auto& part : parts_) q = part.apply(q);
    return q;
  }
  if (kind_ == Kind::ThreeLinesInverse) {
    bool origin = false;
    auto branch = single_branch(source_.family(), p.components, &origin);
    if (origin) return constant_plot(p.src_dim, Point(3));
    if (!branch) fail(ErrorCode::NotAMember, p.render() + " does not stay on one line");
    return PolyPlot(p.src_dim, compose_maps(three_lines_branch(*branch), p.components));
  }
  return PolyPlot(p.src_dim, compose_maps(coords_, p.components));
}

Point SmoothMap::apply(const Point& x) const {
  PolyMap comps;
  for (const auto& v : x) comps.push_back(Polynomial::constant(0, v));
  PolyPlot q = apply(PolyPlot(0, comps));
  return q.at_origin();
}

}  // namespace difftan
