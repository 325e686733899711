#include <gtest/gtest.h>

#include <random>

#include "difftan/external_tangent.hpp"
#include "oracles.hpp"

using namespace difftan;

namespace {

QuadNumber q(long n) { return QuadNumber(n); }
Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial t() { return var(1, 0); }

TangentOptions wire_opts(std::size_t m) {
  TangentOptions o;
  for (std::size_t i = 0; i < m; ++i) o.slopes.push_back(QuadNumber(static_cast<long>(i) + 1));
  return o;
}

// Random element of the presented algebra: a polynomial in the generators of each sheet,
// sharing one constant so that glued sheets stay compatible when there is only one sheet.
GermTuple random_germ(std::mt19937& rng, const GermAlgebraPresentation& alg) {
  GermTuple out;
  QuadNumber c(static_cast<long>(rng() % 5) - 2);
  for (const auto& sheet : alg.sheets) {
    Polynomial f = Polynomial::constant(sheet.nvars, c);
    for (const auto& g : sheet.generators) {
      f += QuadNumber(static_cast<long>(rng() % 5) - 2) * g;
      f += QuadNumber(static_cast<long>(rng() % 3) - 1) * g * g;
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST(GermAlgebra, Forms) {
  EXPECT_EQ(germ_algebra(make_space(HalfLineSub{}), {q(0)}).form, GermForm::FreeSeries);
  auto torus = make_space(IrrationalTorus{QuadNumber::sqrt(2)});
  EXPECT_EQ(germ_algebra(torus, torus.origin()).form, GermForm::ConstantsOnly);
  auto wire = germ_algebra(make_space(Generated{3, 1}), Point(3));
  EXPECT_EQ(wire.form, GermForm::FreeSeries);
  ASSERT_EQ(wire.sheets.size(), 1u);
  EXPECT_EQ(wire.sheets[0].generators.size(), 3u);
  EXPECT_EQ(germ_algebra(make_space(WedgeOfLines{3}), Point(3)).form, GermForm::WedgeTuples);
  EXPECT_EQ(germ_algebra(make_space(Discrete{1}), {q(2)}).form, GermForm::ConstantsOnly);
}

TEST(GermAlgebra, HalfLineGeneratorIsSquare) {
  auto alg = germ_algebra(make_space(HalfLineSub{}), {q(0)});
  ASSERT_EQ(alg.sheets.size(), 1u);
  ASSERT_EQ(alg.sheets[0].generators.size(), 1u);
  EXPECT_EQ(alg.sheets[0].generators[0], t() * t());
}

TEST(GermAlgebra, PointOutsideSpaceRejected) {
  try {
    germ_algebra(make_space(HalfLineSub{}), {q(-1)});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointNotInSpace);
  }
}

TEST(Cotangent, SquareGenerator) {
  auto alg = GermAlgebraPresentation::free_series(1, {t() * t()});
  EXPECT_EQ(cotangent_space(alg, 5).dim, 1u);
}

TEST(Cotangent, Plane) {
  auto alg = GermAlgebraPresentation::free_series(2, {var(2, 0), var(2, 1)});
  EXPECT_EQ(cotangent_space(alg, 3).dim, 2u);
}

TEST(Cotangent, WedgeTuples) {
  EXPECT_EQ(cotangent_space(GermAlgebraPresentation::wedge_tuples(3), 3).dim, 3u);
}

TEST(Cotangent, ConstantsOnly) {
  EXPECT_EQ(cotangent_space(GermAlgebraPresentation::constants_only(), 4).dim, 0u);
}

TEST(Cotangent, CuspMatchesMonomialOracle) {
  // Oracle: span of t^(2a+3b) with a+b >= 1 modulo span with a+b >= 2, counted directly.
  for (unsigned k : {6u, 7u}) {
    std::vector<bool> in_i(k + 1, false), in_i2(k + 1, false);
    for (unsigned a = 0; 2 * a <= k; ++a)
      for (unsigned b = 0; 2 * a + 3 * b <= k; ++b) {
        if (a + b >= 1) in_i[2 * a + 3 * b] = true;
        if (a + b >= 2) in_i2[2 * a + 3 * b] = true;
      }
    std::size_t expected = 0;
    for (unsigned e = 0; e <= k; ++e) expected += in_i[e] && !in_i2[e];
    auto alg = GermAlgebraPresentation::free_series(1, {t().pow(2), t().pow(3)});
    EXPECT_EQ(cotangent_space(alg, k).dim, expected) << k;
    EXPECT_EQ(expected, 2u);
  }
}

TEST(ExternalTangent, ReferenceDimensions) {
  EXPECT_EQ(external_tangent(make_space(OrbitQuotient{4}), Point(4)).dim, 1u);
  EXPECT_EQ(external_tangent(make_space(WedgeOfLines{2}), Point(2)).dim, 2u);
  EXPECT_EQ(external_tangent(make_space(Discrete{1}), {q(5)}).dim, 0u);
  EXPECT_EQ(external_tangent(make_space(HalfLineSub{}), {q(0)}).dim, 1u);
  auto torus = make_space(IrrationalTorus{QuadNumber::sqrt(2)});
  EXPECT_EQ(external_tangent(torus, torus.origin()).dim, 0u);
  EXPECT_EQ(external_tangent(make_space(Generated{2, 1}), Point(2)).dim, 2u);
}

TEST(ExternalTangent, RecordsBothOrders) {
  auto rep = external_tangent(make_space(Euclidean{2}), Point(2), 4);
  EXPECT_EQ(rep.truncation_orders_checked, (std::pair<unsigned, unsigned>{4, 5}));
  EXPECT_EQ(rep.derivation_basis.size(), rep.dim);
}

TEST(ExternalTangent, AxesAndWedgeAgree) {
  for (std::size_t j = 2; j <= 4; ++j) {
    Point origin(j);
    auto a = external_tangent(make_space(WedgeOfLines{j}), origin);
    auto b = external_tangent(make_space(AxesSub{j}), origin);
    EXPECT_EQ(a.dim, j);
    EXPECT_EQ(a.dim, b.dim);
    EXPECT_EQ(a.representatives, b.representatives);
    EXPECT_EQ(a.derivation_basis, b.derivation_basis);
  }
}

TEST(ExternalTangent, ProductAddsDimensions) {
  auto a = make_space(WedgeOfLines{2});
  auto b = make_space(HalfLineSub{});
  auto prod = product_space({a, b});
  EXPECT_EQ(external_tangent(prod, prod.origin()).dim,
            external_tangent(a, a.origin()).dim + external_tangent(b, b.origin()).dim);
}

TEST(ExternalTangent, StableAcrossOrders) {
  std::vector<SpacePresentation> spaces = {make_space(Euclidean{2}),      make_space(WedgeOfLines{3}),
                                           make_space(AxesSub{2}),        make_space(HalfLineSub{}),
                                           make_space(OrbitQuotient{2}),  make_space(FineVector{3}),
                                           make_space(Generated{2, 2}),   make_space(Indiscrete{1})};
  for (const auto& s : spaces) {
    std::size_t d3 = external_tangent(s, s.origin(), 3).dim;
    EXPECT_EQ(external_tangent(s, s.origin(), 4).dim, d3) << s.render();
    EXPECT_EQ(external_tangent(s, s.origin(), 5).dim, d3) << s.render();
  }
}

TEST(Derivations, ConstantsVanish) {
  std::vector<SpacePresentation> spaces = {make_space(Euclidean{2}), make_space(WedgeOfLines{2}),
                                           make_space(HalfLineSub{}), make_space(OrbitQuotient{3})};
  for (const auto& s : spaces) {
    CotangentSpace cot(germ_algebra(s, s.origin()), 4);
    for (long c : {0L, 1L, -3L}) {
      Vector v = cot.coordinates(cot.constant(q(c)));
      for (const auto& x : v) EXPECT_TRUE(x.is_zero()) << s.render();
    }
  }
}

TEST(Derivations, LeibnizOnSamples) {
  std::mt19937 rng(3);
  std::vector<SpacePresentation> spaces = {make_space(Euclidean{2}), make_space(HalfLineSub{}),
                                           make_space(OrbitQuotient{2}), make_space(Generated{2, 1})};
  for (const auto& s : spaces) {
    auto alg = germ_algebra(s, s.origin());
    CotangentSpace cot(alg, 4);
    for (int trial = 0; trial < 25; ++trial) {
      GermTuple f = random_germ(rng, alg), g = random_germ(rng, alg);
      Vector fg = cot.coordinates(cot.multiply(f, g));
      Vector df = cot.coordinates(f), dg = cot.coordinates(g);
      QuadNumber f0 = cot.value_at_base(f), g0 = cot.value_at_base(g);
      for (std::size_t i = 0; i < cot.dim(); ++i) EXPECT_EQ(fg[i], f0 * dg[i] + g0 * df[i]) << s.render();
    }
  }
}

TEST(Beta, EuclideanIdentity) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rep = comparison_beta(make_space(Euclidean{n}), Point(n));
    EXPECT_TRUE(rep.beta.is_identity()) << n;
    EXPECT_TRUE(rep.injective);
    EXPECT_TRUE(rep.surjective);
  }
}

TEST(Beta, TorusIsNotInjective) {
  auto torus = make_space(IrrationalTorus{QuadNumber::sqrt(2)});
  auto rep = comparison_beta(torus, torus.origin());
  EXPECT_EQ(rep.beta.rows(), 0u);
  EXPECT_EQ(rep.beta.cols(), 1u);
  EXPECT_FALSE(rep.injective);
}

TEST(Beta, OrbitIsNotSurjective) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rep = comparison_beta(make_space(OrbitQuotient{n}), Point(n));
    EXPECT_EQ(rep.beta.rows(), 1u);
    EXPECT_EQ(rep.beta.cols(), 0u);
    EXPECT_FALSE(rep.surjective);
  }
}

TEST(Beta, WireHasRankTwo) {
  for (std::size_t m : {3u, 5u, 8u}) {
    auto rep = comparison_beta(make_space(Generated{2, 1}), Point(2), wire_opts(m));
    EXPECT_EQ(rep.rank, 2u);
    EXPECT_EQ(oracle::quad_rank(rep.beta), 2u);
    EXPECT_EQ(rep.internal_dim, m + 2);
  }
}

TEST(Beta, NaturalForChartInclusions) {
  std::vector<SpacePresentation> sources = {make_space(WedgeOfLines{2}), make_space(AxesSub{3}),
                                            make_space(HalfLineSub{})};
  for (const auto& s : sources) {
    auto f = SmoothMap::subset_inclusion(s);
    Point x = s.origin();
    Matrix lhs = comparison_beta(f.target(), f.apply(x)).beta * pushforward_matrix(f, x);
    Matrix rhs = external_pushforward_matrix(f, x) * comparison_beta(s, x).beta;
    EXPECT_EQ(lhs, rhs) << s.render();
  }
}

TEST(Beta, NaturalForProductProjections) {
  auto prod = product_space({make_space(WedgeOfLines{2}), make_space(Euclidean{2})});
  for (std::vector<std::size_t> factors : {std::vector<std::size_t>{0}, std::vector<std::size_t>{1}}) {
    auto f = SmoothMap::product_projection(prod, factors);
    Point x = prod.origin();
    Matrix lhs = comparison_beta(f.target(), f.apply(x)).beta * pushforward_matrix(f, x);
    Matrix rhs = external_pushforward_matrix(f, x) * comparison_beta(prod, x).beta;
    EXPECT_EQ(lhs, rhs);
  }
}
