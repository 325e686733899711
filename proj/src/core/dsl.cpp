#include "difftan/dsl.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "difftan/error.hpp"

namespace difftan {

namespace {

struct Token {
  enum Kind { End, Ident, Int, Punct } kind = End;
  std::string text;
  std::size_t offset = 0, line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(std::vector<std::string> expected) const {
    throw ParseError(tok_.offset, tok_.line, tok_.column, std::move(expected), tok_.text);
  }

  bool accept(std::string_view punct) {
    if (tok_.kind == Token::Punct && tok_.text == punct) {
      advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view punct) {
    if (!accept(punct)) error({"'" + std::string(punct) + "'"});
  }

  // Closing bracket of a comma-separated list, where another item is also allowed.
  void expect_close(std::string_view punct) {
    if (!accept(punct)) error({"','", "'" + std::string(punct) + "'"});
  }

  void expect_end() {
    if (tok_.kind != Token::End) error({"end of input"});
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.offset = pos_;
    tok_.line = line_;
    tok_.column = pos_ - line_start_ + 1;
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    std::size_t start = pos_;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      tok_.kind = Token::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      tok_.kind = Token::Int;
    } else {
      ++pos_;
      tok_.kind = Token::Punct;
    }
    tok_.text = std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, line_start_ = 0;
  Token tok_;
};

QuadNumber exact_sqrt(const mpz_class& n) {
  if (n < 0) fail(ErrorCode::InvalidParameter, "square root of a negative number");
  if (n == 0) return QuadNumber();
  // n = s^2 * d with d squarefree
  mpz_class s = 1, d = 1, rest = n;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      s *= p;
    }
    if (rest % p == 0) {
      rest /= p;
      d *= p;
    }
  }
  d *= rest;
  if (d == 1) return QuadNumber(Rational(s));
  if (!d.fits_ulong_p()) fail(ErrorCode::InvalidParameter, "square root argument too large");
  return QuadNumber(Rational(s)) * QuadNumber::sqrt(d.get_ui());
}

// Expressions over a fixed variable list; numbers are constant polynomials.
class ExprParser {
 public:
  ExprParser(Lexer& lex, const std::vector<std::string>& vars) : lex_(lex), vars_(vars) {}

  Polynomial expr() {
    Polynomial acc(vars_.size());
    bool first = true;
    for (;;) {
      bool negate = false;
      if (lex_.accept("-")) {
        negate = true;
      } else if (!first && !lex_.accept("+")) {
        break;
      } else if (first) {
        lex_.accept("+");
      }
      Polynomial t = term();
      acc = negate ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  QuadNumber number() {
    Polynomial p = expr();
    if (!p.is_constant()) fail(ErrorCode::InvalidParameter, "expected a number, got " + p.to_string(vars_));
    return p.constant_term();
  }

 private:
  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      if (lex_.accept("*")) {
        acc = acc * power();
      } else if (lex_.accept("/")) {
        Polynomial d = power();
        if (!d.is_constant()) fail(ErrorCode::InvalidParameter, "division by a non-constant");
        acc = d.constant_term().inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (lex_.accept("^")) {
      if (lex_.peek().kind != Token::Int) lex_.error({"exponent"});
      base = base.pow(static_cast<unsigned>(std::stoul(lex_.take().text)));
    }
    return base;
  }

  Polynomial atom() {
    const Token& t = lex_.peek();
    std::size_t n = vars_.size();
    if (t.kind == Token::Int) {
      return Polynomial::constant(n, QuadNumber(Rational(mpz_class(lex_.take().text))));
    }
    if (t.kind == Token::Punct && t.text == "-") {
      lex_.take();
      return -atom();
    }
    if (t.kind == Token::Punct && t.text == "(") {
      lex_.take();
      Polynomial p = expr();
      lex_.expect(")");
      return p;
    }
    if (t.kind == Token::Ident) {
      if (t.text == "sqrt") {
        lex_.take();
        lex_.expect("(");
        if (lex_.peek().kind != Token::Int) lex_.error({"integer"});
        mpz_class v(lex_.take().text);
        lex_.expect(")");
        return Polynomial::constant(n, exact_sqrt(v));
      }
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == t.text) {
          lex_.take();
          return Polynomial::variable(n, i);
        }
      }
    }
    std::vector<std::string> expected = {"number", "'sqrt'", "'('"};
    for (const auto& v : vars_) expected.push_back("'" + v + "'");
    lex_.error(expected);
  }

  Lexer& lex_;
  const std::vector<std::string>& vars_;
};

const std::vector<std::string> kFamilies = {"euclidean",      "discrete",         "indiscrete",  "continuous_line",
                                            "wedge",          "axes_sub",         "lines_sub",   "half_line",
                                            "orbit_quotient", "irrational_torus", "fine_vector", "generated",
                                            "product"};

class SpaceParser {
 public:
  explicit SpaceParser(Lexer& lex) : lex_(lex), num_(lex, no_vars_) {}

  SpacePresentation space() {
    const Token& t = lex_.peek();
    if (t.kind != Token::Ident) expected_family();
    std::string name = t.text;
    if (name == "product") {
      lex_.take();
      lex_.expect("[");
      std::vector<SpacePresentation> parts{space()};
      while (lex_.accept(",")) parts.push_back(space());
      lex_.expect_close("]");
      return product_space(parts);
    }
    auto it = std::find(kFamilies.begin(), kFamilies.end(), name);
    if (it == kFamilies.end()) expected_family();
    lex_.take();
    if (name == "half_line" || name == "continuous_line") {
      if (lex_.accept("(")) lex_.expect(")");
      return make_space(name == "half_line" ? Family{HalfLineSub{}} : Family{ContinuousLine{}});
    }
    if (name == "lines_sub") {
      lex_.expect("(");
      LinesThroughOriginSub l;
      do {
        lex_.expect("(");
        QuadNumber a = num_.number();
        lex_.expect(",");
        QuadNumber b = num_.number();
        lex_.expect(")");
        l.directions.push_back({a, b});
      } while (lex_.accept(","));
      lex_.expect_close(")");
      return make_space(l);
    }
    if (name == "irrational_torus") {
      lex_.expect("(");
      QuadNumber theta = num_.number();
      lex_.expect(")");
      return make_space(IrrationalTorus{theta});
    }
    if ((name == "discrete" || name == "indiscrete") && !(lex_.peek().kind == Token::Punct && lex_.peek().text == "(")) {
      return make_space(name == "discrete" ? Family{Discrete{1}} : Family{Indiscrete{1}});
    }
    lex_.expect("(");
    std::size_t a = count();
    if (name == "generated") {
      lex_.expect(",");
      std::size_t k = count();
      lex_.expect(")");
      return make_space(Generated{a, k});
    }
    lex_.expect(")");
    if (name == "euclidean") return make_space(Euclidean{a});
    if (name == "discrete") return make_space(Discrete{a});
    if (name == "indiscrete") return make_space(Indiscrete{a});
    if (name == "wedge") return make_space(WedgeOfLines{a});
    if (name == "axes_sub") return make_space(AxesSub{a});
    if (name == "orbit_quotient") return make_space(OrbitQuotient{a});
    return make_space(FineVector{a});
  }

 private:
  [[noreturn]] void expected_family() {
    std::vector<std::string> e;
    for (const auto& f : kFamilies) e.push_back("'" + f + "'");
    lex_.error(e);
  }

  std::size_t count() {
    QuadNumber v = num_.number();
    if (!v.is_rational() || v.a().get_den() != 1 || v.a() < 0 || !v.a().get_num().fits_uint_p()) {
      fail(ErrorCode::InvalidParameter, "expected a natural number, got " + v.to_string());
    }
    return v.a().get_num().get_ui();
  }

  Lexer& lex_;
  std::vector<std::string> no_vars_;
  ExprParser num_;
};

}  // namespace

SpacePresentation parse_space(std::string_view text) {
  Lexer lex(text);
  SpaceParser p(lex);
  SpacePresentation s = p.space();
  lex.expect_end();
  return s;
}

QuadNumber parse_number(std::string_view text) {
  Lexer lex(text);
  std::vector<std::string> none;
  ExprParser p(lex, none);
  QuadNumber v = p.number();
  lex.expect_end();
  return v;
}

std::vector<QuadNumber> parse_number_list(std::string_view text) {
  Lexer lex(text);
  std::vector<std::string> none;
  ExprParser p(lex, none);
  std::vector<QuadNumber> out;
  if (lex.peek().kind == Token::End) return out;
  do {
    out.push_back(p.number());
  } while (lex.accept(","));
  lex.expect_end();
  return out;
}

namespace {

// '(' e (',' e)* ')' or a single bare expression
PolyMap tuple(Lexer& lex, ExprParser& p) {
  PolyMap out;
  if (lex.accept("(")) {
    if (lex.accept(")")) {
      lex.expect_end();
      return out;
    }
    do {
      out.push_back(p.expr());
    } while (lex.accept(","));
    lex.expect_close(")");
  } else {
    out.push_back(p.expr());
  }
  lex.expect_end();
  return out;
}

}  // namespace

Point parse_point(std::string_view text, const SpacePresentation& space) {
  Lexer lex(text);
  Point x;
  if (lex.peek().kind == Token::Ident && lex.peek().text == "origin") {
    lex.take();
    lex.expect_end();
    x = space.origin();
  } else {
    for (const auto& c : parse_polynomial_tuple(text, {})) x.push_back(c.constant_term());
  }
  space.require_point(x);
  return x;
}

PolyMap parse_polynomial_tuple(std::string_view text, const std::vector<std::string>& vars) {
  try {
    Lexer lex(text);
    ExprParser p(lex, vars);
    return tuple(lex, p);
  } catch (const ParseError&) {
    // "(u+1)*u" is one polynomial, not a tuple
    return {parse_polynomial(text, vars)};
  }
}

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
  Lexer lex(text);
  ExprParser p(lex, vars);
  Polynomial v = p.expr();
  lex.expect_end();
  return v;
}

std::vector<std::string> split_names(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace difftan
