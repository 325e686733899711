#include <gtest/gtest.h>

#include <algorithm>

#include "difftan/dsl.hpp"

using namespace difftan;

namespace {

QuadNumber q(long n) { return QuadNumber(n); }

ParseError parse_failure(std::string_view text) {
  try {
    parse_space(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for " << text;
  return ParseError(0, 0, 0, {}, "");
}

bool expects(const ParseError& e, const std::string& what) {
  std::string quoted = "'" + what + "'";
  return std::find(e.expected().begin(), e.expected().end(), quoted) != e.expected().end();
}

}  // namespace

TEST(ParseSpace, Families) {
  EXPECT_EQ(parse_space("euclidean(3)").family(), Family{Euclidean{3}});
  EXPECT_EQ(parse_space("wedge(2)").family(), Family{WedgeOfLines{2}});
  EXPECT_EQ(parse_space("axes_sub(4)").family(), Family{AxesSub{4}});
  EXPECT_EQ(parse_space("half_line").family(), Family{HalfLineSub{}});
  EXPECT_EQ(parse_space("half_line()").family(), Family{HalfLineSub{}});
  EXPECT_EQ(parse_space("orbit_quotient(2)").family(), Family{OrbitQuotient{2}});
  EXPECT_EQ(parse_space("fine_vector(5)").family(), Family{FineVector{5}});
  EXPECT_EQ(parse_space("generated(2, 1)").family(), (Family{Generated{2, 1}}));
  EXPECT_EQ(parse_space("discrete").family(), Family{Discrete{1}});
  EXPECT_EQ(parse_space("irrational_torus(sqrt(2))").family(), Family{IrrationalTorus{QuadNumber::sqrt(2)}});
}

TEST(ParseSpace, TorusSlopeSimplifies) {
  EXPECT_EQ(parse_space("irrational_torus(sqrt(8))").family(),
            Family{IrrationalTorus{q(2) * QuadNumber::sqrt(2)}});
}

TEST(ParseSpace, LinesSub) {
  auto s = parse_space("lines_sub((1, 0), (1, sqrt(2)), (0, 1))");
  const auto* lines = std::get_if<LinesThroughOriginSub>(&s.family());
  ASSERT_NE(lines, nullptr);
  ASSERT_EQ(lines->directions.size(), 3u);
  EXPECT_EQ(lines->directions[1][1], QuadNumber::sqrt(2));
}

TEST(ParseSpace, Product) {
  auto s = parse_space("product[euclidean(1), wedge(2)]");
  ASSERT_TRUE(s.is_product());
  EXPECT_EQ(s.factors().size(), 2u);
  EXPECT_EQ(s.ambient_dim(), 3u);
}

TEST(ParseSpace, WhitespaceAndNewlines) {
  auto s = parse_space("  product[\n  euclidean( 2 ) ,\n  half_line ]  ");
  EXPECT_EQ(s.ambient_dim(), 3u);
}

TEST(ParseSpace, RenderRoundTrip) {
  std::vector<std::string> texts = {"euclidean(2)",
                                    "discrete(2)",
                                    "indiscrete(1)",
                                    "continuous_line",
                                    "wedge(3)",
                                    "axes_sub(2)",
                                    "lines_sub((1, 0), (1, sqrt(2)))",
                                    "half_line",
                                    "orbit_quotient(3)",
                                    "irrational_torus(1/2 + sqrt(3))",
                                    "fine_vector(2)",
                                    "generated(3, 2)",
                                    "product[euclidean(1), product[wedge(2), half_line]]"};
  for (const auto& t : texts) {
    auto s = parse_space(t);
    auto again = parse_space(s.render());
    EXPECT_EQ(again.render(), s.render()) << t;
    EXPECT_EQ(again.ambient_dim(), s.ambient_dim()) << t;
  }
}

TEST(ParseSpace, UnknownFamilyReportsPosition) {
  auto e = parse_failure("product[euclidean(1), banana(2)]");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 23u);
  EXPECT_EQ(e.found(), "banana");
  EXPECT_TRUE(expects(e, "wedge"));
  EXPECT_TRUE(expects(e, "product"));
}

TEST(ParseSpace, ErrorOnSecondLine) {
  auto e = parse_failure("product[\n  euclidean(1) wedge(2)]");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 16u);
  EXPECT_TRUE(expects(e, "]"));
  EXPECT_TRUE(expects(e, ","));
}

TEST(ParseSpace, MissingArgument) {
  auto e = parse_failure("euclidean()");
  EXPECT_EQ(e.column(), 11u);
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
}

TEST(ParseSpace, TrailingInput) {
  auto e = parse_failure("wedge(2) wedge(3)");
  EXPECT_EQ(e.column(), 10u);
}

TEST(ParseSpace, MessageHasLineAndColumn) {
  auto e = parse_failure("wedge(2");
  std::string msg = e.what();
  EXPECT_NE(msg.find("1:8"), std::string::npos) << msg;
}

TEST(ParseSpace, InvalidParametersAreNotParseErrors) {
  try {
    parse_space("wedge(1)");
    FAIL() << "expected an error";
  } catch (const ParseError&) {
    FAIL() << "should be a parameter error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
}

TEST(ParseNumber, Forms) {
  EXPECT_EQ(parse_number("3"), q(3));
  EXPECT_EQ(parse_number("-3/4"), QuadNumber::fraction(-3, 4));
  EXPECT_EQ(parse_number("1 + sqrt(2)"), q(1) + QuadNumber::sqrt(2));
  EXPECT_EQ(parse_number("2*sqrt(3)/3"), q(2) * QuadNumber::sqrt(3) / q(3));
  EXPECT_EQ(parse_number("sqrt(12)"), q(2) * QuadNumber::sqrt(3));
  EXPECT_EQ(parse_number("sqrt(9)"), q(3));
  EXPECT_EQ(parse_number("(1 + sqrt(2))*(1 - sqrt(2))"), q(-1));
}

TEST(ParseNumber, ToStringRoundTrip) {
  std::vector<QuadNumber> xs = {q(0), QuadNumber::fraction(-7, 3), QuadNumber::sqrt(5),
                                QuadNumber::fraction(1, 2) - q(3) * QuadNumber::sqrt(7)};
  for (const auto& x : xs) EXPECT_EQ(parse_number(x.to_string()), x) << x.to_string();
}

TEST(ParseNumber, List) {
  auto xs = parse_number_list("1, 1/2, sqrt(2)");
  EXPECT_EQ(xs, (std::vector<QuadNumber>{q(1), QuadNumber::fraction(1, 2), QuadNumber::sqrt(2)}));
}

TEST(ParseNumber, Rejects) {
  EXPECT_THROW(parse_number("x"), ParseError);
  EXPECT_THROW(parse_number("1 +"), ParseError);
  EXPECT_THROW(parse_number("sqrt(2) + sqrt(3)"), Error);
}

TEST(ParsePoint, Forms) {
  auto wedge = parse_space("wedge(2)");
  EXPECT_EQ(parse_point("origin", wedge), Point(2));
  EXPECT_EQ(parse_point("(0, 3/2)", wedge), (Point{q(0), QuadNumber::fraction(3, 2)}));
  auto line = parse_space("euclidean(1)");
  EXPECT_EQ(parse_point("-2", line), Point{q(-2)});
}

TEST(ParsePoint, OutsideSpace) {
  auto wedge = parse_space("wedge(2)");
  try {
    parse_point("(1, 1)", wedge);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointNotInSpace);
  }
}

TEST(ParsePolynomial, Expressions) {
  std::vector<std::string> uv = {"u", "v"};
  Polynomial u = Polynomial::variable(2, 0), v = Polynomial::variable(2, 1);
  EXPECT_EQ(parse_polynomial("u^2 - 3*u*v + 1/2", uv), u * u - q(3) * u * v + Polynomial::constant(2, QuadNumber::fraction(1, 2)));
  EXPECT_EQ(parse_polynomial("(u + v)^2", uv), u * u + q(2) * u * v + v * v);
  EXPECT_EQ(parse_polynomial("sqrt(2)*u/2", uv), (QuadNumber::sqrt(2) / q(2)) * u);
  EXPECT_EQ(parse_polynomial("0", uv), Polynomial(2));
}

TEST(ParsePolynomial, RejectsUnknownVariableAndDivision) {
  std::vector<std::string> u = {"u"};
  EXPECT_THROW(parse_polynomial("w + 1", u), ParseError);
  EXPECT_THROW(parse_polynomial("1/u", u), Error);
}

TEST(ParsePolynomial, RenderRoundTrip) {
  std::vector<std::string> xy = default_variable_names(2);
  Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  std::vector<Polynomial> ps = {x * x * y - q(2) * y, (QuadNumber::sqrt(2) + q(1)) * x + Polynomial::constant(2, q(-4)),
                                Polynomial(2), x.pow(5)};
  for (const auto& p : ps) EXPECT_EQ(parse_polynomial(p.to_string(), xy), p) << p.to_string();
}

TEST(ParsePolynomial, Tuples) {
  std::vector<std::string> u = {"u"};
  Polynomial t = Polynomial::variable(1, 0);
  EXPECT_EQ(parse_polynomial_tuple("(u, 0, u^2)", u), (PolyMap{t, Polynomial(1), t * t}));
  EXPECT_EQ(parse_polynomial_tuple("u + 1", u), (PolyMap{t + Polynomial::constant(1, q(1))}));
  EXPECT_TRUE(parse_polynomial_tuple("()", u).empty());
}

TEST(SplitNames, Commas) {
  EXPECT_EQ(split_names("u, v ,w"), (std::vector<std::string>{"u", "v", "w"}));
  EXPECT_EQ(split_names("t"), (std::vector<std::string>{"t"}));
}
