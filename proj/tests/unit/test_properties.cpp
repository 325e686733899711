// Randomized batteries over the whole catalog. Generators are seeded so failures replay.
#include <gtest/gtest.h>

#include <random>

#include "difftan/dsl.hpp"
#include "difftan/external_tangent.hpp"
#include "difftan/internal_tangent.hpp"
#include "difftan/tangent_bundle.hpp"
#include "oracles.hpp"

using namespace difftan;

namespace {

QuadNumber q(long n) { return QuadNumber(n); }
Polynomial t() { return Polynomial::variable(1, 0); }

struct Sample {
  SpacePresentation space;
  Point point;
};

// A catalog space together with a point on it, chosen at random.
Sample random_sample(std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(-3, 3);
  switch (rng() % 9) {
    case 0: {
      std::size_t n = 1 + rng() % 3;
      Point x(n);
      for (auto& c : x) c = q(coord(rng));
      return {make_space(Euclidean{n}), x};
    }
    case 1: {
      std::size_t j = 2 + rng() % 3;
      Point x(j);
      if (rng() % 2) x[rng() % j] = q(1 + rng() % 4);
      return {make_space(WedgeOfLines{j}), x};
    }
    case 2: {
      std::size_t j = 2 + rng() % 2;
      Point x(j);
      if (rng() % 2) x[rng() % j] = q(-1 - static_cast<long>(rng() % 4));
      return {make_space(AxesSub{j}), x};
    }
    case 3:
      return {make_space(HalfLineSub{}), {rng() % 2 ? q(0) : q(2)}};
    case 4: {
      std::size_t n = 1 + rng() % 3;
      return {make_space(OrbitQuotient{n}), Point(n)};
    }
    case 5:
      return {make_space(IrrationalTorus{QuadNumber::sqrt(2)}), {q(coord(rng))}};
    case 6: {
      std::size_t d = 1 + rng() % 3;
      return {make_space(FineVector{d}), Point(d)};
    }
    case 7:
      return {make_space(Discrete{1}), {q(coord(rng))}};
    default:
      return {make_space(Generated{2 + rng() % 2, 2}), Point(2)};
  }
}

Sample fix_generated(Sample s) {
  if (s.point.size() != s.space.ambient_dim()) s.point = s.space.origin();
  return s;
}

Point concat(const Point& a, const Point& b) {
  Point out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Random member curve through the origin of a wedge-like space: a polynomial on one branch.
PolyPlot random_branch_curve(std::mt19937& rng, std::size_t j, long* speed, std::size_t* branch) {
  *branch = rng() % j;
  *speed = static_cast<long>(rng() % 7) - 3;
  PolyMap comps(j, Polynomial(1));
  comps[*branch] = q(*speed) * t() + t() * t() * oracle::random_poly(rng, 1, 3);
  return PolyPlot(1, comps);
}

}  // namespace

TEST(Properties, InternalDimensionIsAdditiveOnProducts) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    Sample a = fix_generated(random_sample(rng)), b = fix_generated(random_sample(rng));
    auto prod = product_space({a.space, b.space});
    Point x = concat(a.point, b.point);
    std::size_t da = internal_tangent(a.space, a.point).dim;
    std::size_t db = internal_tangent(b.space, b.point).dim;
    EXPECT_EQ(internal_tangent(prod, x).dim, da + db) << prod.render();
  }
}

TEST(Properties, ExternalDimensionIsAdditiveOnProducts) {
  std::mt19937 rng(102);
  for (int trial = 0; trial < 40; ++trial) {
    Sample a = fix_generated(random_sample(rng)), b = fix_generated(random_sample(rng));
    auto prod = product_space({a.space, b.space});
    Point x = concat(a.point, b.point);
    std::size_t da = external_tangent(a.space, a.point).dim;
    std::size_t db = external_tangent(b.space, b.point).dim;
    EXPECT_EQ(external_tangent(prod, x).dim, da + db) << prod.render();
  }
}

TEST(Properties, ProductIsoComposites) {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    Sample a = fix_generated(random_sample(rng)), b = fix_generated(random_sample(rng));
    auto cert = product_tangent_iso(a.space, b.space, a.point, b.point);
    EXPECT_TRUE(cert.alpha_beta_identity) << a.space.render() << " x " << b.space.render();
    EXPECT_TRUE(cert.beta_alpha_identity) << a.space.render() << " x " << b.space.render();
  }
}

TEST(Properties, StabilizationAcrossOrders) {
  std::mt19937 rng(104);
  for (int trial = 0; trial < 40; ++trial) {
    Sample s = fix_generated(random_sample(rng));
    std::size_t d3 = external_tangent(s.space, s.point, 3).dim;
    EXPECT_EQ(external_tangent(s.space, s.point, 4).dim, d3) << s.space.render();
    EXPECT_EQ(external_tangent(s.space, s.point, 5).dim, d3) << s.space.render();
  }
}

TEST(Properties, EuclideanClassIsFirstJet) {
  std::mt19937 rng(105);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 3;
    auto s = make_space(Euclidean{n});
    Point x(n);
    PolyMap comps;
    Vector expected;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = q(static_cast<long>(rng() % 5) - 2);
      Polynomial p = oracle::random_poly(rng, 1, 4);
      p = p - Polynomial::constant(1, p.coefficient({0})) + Polynomial::constant(1, x[i]);
      comps.push_back(p);
      expected.push_back(p.coefficient({1}));
    }
    InternalTangent tan(s, x);
    EXPECT_EQ(tan.classify(PolyPlot(1, comps)), expected);
  }
}

TEST(Properties, WedgeClassIsBranchSpeed) {
  std::mt19937 rng(106);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t j = 2 + rng() % 4;
    auto s = make_space(WedgeOfLines{j});
    InternalTangent tan(s, s.origin());
    long speed;
    std::size_t branch;
    PolyPlot c = random_branch_curve(rng, j, &speed, &branch);
    Vector expected(j);
    expected[branch] = q(speed);
    EXPECT_EQ(tan.classify(c), expected) << c.components[branch].to_string();
  }
}

TEST(Properties, SuppliedCurveRelationsClassifyToZero) {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t j = 2 + rng() % 3;
    auto s = make_space(AxesSub{j});
    std::vector<CurveGerm> curves;
    for (int k = 0; k < 4; ++k) {
      long speed;
      std::size_t branch;
      curves.push_back(make_curve(random_branch_curve(rng, j, &speed, &branch)));
    }
    InternalTangent tan(s, s.origin());
    for (const auto& r : harvest_relations(s, s.origin(), curves)) {
      EXPECT_TRUE(verify_relation(s, s.origin(), r));
      Vector acc(tan.dim());
      for (const auto& term : r.terms) {
        Vector v = tan.classify(term.curve.plot);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term.coefficient * v[i];
      }
      EXPECT_EQ(acc, Vector(tan.dim())) << relation_kind_name(r.kind);
    }
  }
}

TEST(Properties, PushforwardFunctorialOnPolynomialMaps) {
  std::mt19937 rng(108);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 3, k = 1 + rng() % 3;
    PolyMap fc, gc;
    for (std::size_t i = 0; i < m; ++i) fc.push_back(oracle::random_poly(rng, n, 2));
    for (std::size_t i = 0; i < k; ++i) gc.push_back(oracle::random_poly(rng, m, 2));
    auto f = SmoothMap::polynomial(n, m, fc);
    auto g = SmoothMap::polynomial(m, k, gc);
    Point x(n);
    for (auto& c : x) c = q(static_cast<long>(rng() % 5) - 2);
    Matrix lhs = pushforward_matrix(SmoothMap::compose(g, f), x);
    Matrix rhs = pushforward_matrix(g, f.apply(x)) * pushforward_matrix(f, x);
    EXPECT_EQ(lhs, rhs);
    // The pushforward of a polynomial map is its Jacobian at x.
    Matrix jac(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) jac.at(i, j) = fc[i].derivative(j).evaluate(x);
    EXPECT_EQ(pushforward_matrix(f, x), jac);
    EXPECT_EQ(external_pushforward_matrix(f, x), jac);
  }
}

TEST(Properties, HectorMembersAreDvsMembersOnProducts) {
  std::mt19937 rng(109);
  auto prod = product_space({make_space(WedgeOfLines{2}), make_space(Euclidean{1})});
  std::size_t hector = 0;
  for (int trial = 0; trial < 80; ++trial) {
    PolyMap base(3, Polynomial(1)), fibre(3, Polynomial(1));
    if (rng() % 2) base[rng() % 2] = t() * oracle::random_poly(rng, 1, 2);
    base[2] = oracle::random_poly(rng, 1, 2);
    for (auto& f : fibre)
      if (rng() % 2) f = oracle::random_poly(rng, 1, 2);
    BundlePlotCandidate c{PolyPlot(1, base), fibre};
    if (hector_membership(prod, c).member()) {
      ++hector;
      EXPECT_TRUE(dvs_membership(prod, c).member()) << c.render();
    }
  }
  EXPECT_GT(hector, 0u);
}

TEST(Properties, TorusLiftsAreUnique) {
  std::mt19937 rng(110);
  QuadNumber theta = QuadNumber::sqrt(2);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial f = oracle::random_poly(rng, 1, 4);
    long m = static_cast<long>(rng() % 5) - 2, n = static_cast<long>(rng() % 5) - 2;
    // g differs from f by a lattice element, so both lift the same plot.
    Polynomial g = f + Polynomial::constant(1, q(m) + q(n) * theta);
    Polynomial diff = f - g;
    for (unsigned e = 1; e <= 4; ++e) EXPECT_TRUE(diff.coefficient({e}).is_zero());
    if (f.coefficient({0}) == g.coefficient({0})) EXPECT_EQ(f, g);
    auto torus = make_space(IrrationalTorus{theta});
    EXPECT_EQ(plot_check(torus, PolyPlot(1, {f})).member(), true);
  }
}

TEST(Properties, RenderParseRoundTrip) {
  std::mt19937 rng(111);
  for (int trial = 0; trial < 60; ++trial) {
    Sample a = random_sample(rng);
    SpacePresentation s = a.space;
    if (rng() % 3 == 0) s = product_space({s, random_sample(rng).space});
    auto again = parse_space(s.render());
    EXPECT_EQ(again.render(), s.render());
    EXPECT_EQ(again.ambient_dim(), s.ambient_dim());
  }
}

TEST(Properties, LeibnizOnGluedProducts) {
  std::mt19937 rng(112);
  std::vector<SpacePresentation> spaces = {
      make_space(WedgeOfLines{3}), make_space(AxesSub{2}),
      product_space({make_space(WedgeOfLines{2}), make_space(Euclidean{1})}),
      product_space({make_space(HalfLineSub{}), make_space(WedgeOfLines{2})})};
  for (const auto& s : spaces) {
    auto alg = germ_algebra(s, s.origin());
    CotangentSpace cot(alg, 4);
    const auto& basis = cot.ideal_basis();
    for (int trial = 0; trial < 30; ++trial) {
      // Random element: constant plus a combination of the ideal's spanning germs.
      auto pick = [&]() {
        GermTuple f = cot.constant(q(static_cast<long>(rng() % 5) - 2));
        for (const auto& b : basis) {
          QuadNumber c(static_cast<long>(rng() % 3) - 1);
          for (std::size_t k = 0; k < f.size(); ++k) f[k] += c * b[k];
        }
        return f;
      };
      GermTuple f = pick(), g = pick();
      ASSERT_TRUE(cot.in_algebra(f));
      Vector fg = cot.coordinates(cot.multiply(f, g));
      Vector df = cot.coordinates(f), dg = cot.coordinates(g);
      QuadNumber f0 = cot.value_at_base(f), g0 = cot.value_at_base(g);
      for (std::size_t i = 0; i < cot.dim(); ++i) EXPECT_EQ(fg[i], f0 * dg[i] + g0 * df[i]) << s.render();
    }
  }
}
