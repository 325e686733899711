#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "difftan/linalg.hpp"

namespace difftan {

struct Euclidean {
  std::size_t n = 1;
  bool operator==(const Euclidean&) const = default;
};
// the underlying set is R^n in all three cases
struct Discrete {
  std::size_t n = 1;
  bool operator==(const Discrete&) const = default;
};
struct Indiscrete {
  std::size_t n = 1;
  bool operator==(const Indiscrete&) const = default;
};
struct ContinuousLine {
  bool operator==(const ContinuousLine&) const = default;
};
struct WedgeOfLines {
  std::size_t j = 2;
  bool operator==(const WedgeOfLines&) const = default;
};
struct AxesSub {
  std::size_t j = 2;
  bool operator==(const AxesSub&) const = default;
};
using Direction = std::array<QuadNumber, 2>;
struct LinesThroughOriginSub {
  std::vector<Direction> directions;
  bool operator==(const LinesThroughOriginSub&) const = default;
};
struct HalfLineSub {
  bool operator==(const HalfLineSub&) const = default;
};
// R^n/O(n); points and plots are given by lifts to R^n
struct OrbitQuotient {
  std::size_t n = 1;
  bool operator==(const OrbitQuotient&) const = default;
};
// R/(Z + theta Z); points and plots are given by lifts to R
struct IrrationalTorus {
  QuadNumber theta;
  bool operator==(const IrrationalTorus&) const = default;
};
struct FineVector {
  std::size_t dim = 1;
  bool operator==(const FineVector&) const = default;
};
// R^n with the diffeology generated by smooth maps out of R^k
struct Generated {
  std::size_t n = 2;
  std::size_t k = 1;
  bool operator==(const Generated&) const = default;
};

using Family = std::variant<Euclidean, Discrete, Indiscrete, ContinuousLine, WedgeOfLines, AxesSub,
                            LinesThroughOriginSub, HalfLineSub, OrbitQuotient, IrrationalTorus,
                            FineVector, Generated>;

std::size_t ambient_dim(const Family& f);
std::string render(const Family& f);
std::string family_name(const Family& f);
void validate(const Family& f);
bool contains(const Family& f, const Point& x);

class SpacePresentation {
 public:
  static SpacePresentation make(Family f);
  static SpacePresentation product(const std::vector<SpacePresentation>& parts);

  bool is_product() const { return product_; }
  const std::vector<Family>& factors() const { return factors_; }
  const Family& family() const { return factors_.front(); }
  std::size_t ambient_dim() const;
  std::size_t offset(std::size_t factor) const;

  Point origin() const { return Point(ambient_dim()); }
  bool contains(const Point& x) const;
  void require_point(const Point& x) const;
  Point factor_point(const Point& x, std::size_t factor) const;
  SpacePresentation factor_space(std::size_t factor) const;

  std::string render() const;
  bool operator==(const SpacePresentation&) const = default;

 private:
  bool product_ = false;
  std::vector<Family> factors_;
};

SpacePresentation make_space(Family f);
SpacePresentation product_space(const std::vector<SpacePresentation>& parts);

std::string render_point(const Point& x);

struct PolyPlot {
  std::size_t src_dim = 1;
  PolyMap components;
  // one optional tag per factor; empty means untagged everywhere
  std::vector<std::optional<std::size_t>> branches;

  PolyPlot() = default;
  PolyPlot(std::size_t src, PolyMap comps) : src_dim(src), components(std::move(comps)) {}

  Point at_origin() const;
  bool is_constant() const;
  PolyPlot factor(const SpacePresentation& space, std::size_t k) const;
  PolyPlot compose(const PolyMap& reparam) const;  // this o reparam
  std::string render() const;
  bool same_components(const PolyPlot& o) const { return components == o.components; }
};

PolyPlot constant_plot(std::size_t src_dim, const Point& x);
// x + t*v
PolyPlot line_plot(const Point& x, const Vector& v);
// image plot in a product from factor plots
PolyPlot join_plots(const std::vector<PolyPlot>& parts);

struct PolyFactorization {
  PolyMap inner;  // src -> R^m
  PolyMap outer;  // R^m -> ambient
};

// One summand w*q^2 of a weighted sum of squares; the weight may use at most one
// source variable and must be nonnegative as a germ in it.
struct WeightedSquare {
  Polynomial weight;
  Polynomial root;
};

enum class Verdict { Member, Nonmember };

enum class Reason {
  Constant,
  AlwaysMember,
  LiftPresented,
  BranchCertificate,
  PolynomialIdentityViolated,
  BranchTagMismatch,
  FactorizationFound,
  SourceDimensionBound,
  GermNonnegative,
  GermSignViolated,
  SumOfSquares,
  ComponentwiseProduct,
};

const char* reason_name(Reason r);

struct MembershipWitness {
  Verdict verdict = Verdict::Nonmember;
  Reason reason = Reason::Constant;
  std::string detail;
  std::optional<std::size_t> branch;
  std::optional<PolyFactorization> factorization;
  std::vector<WeightedSquare> sum_of_squares;
  std::vector<MembershipWitness> factor_witnesses;

  bool member() const { return verdict == Verdict::Member; }
};

struct PlotCertificates {
  std::optional<PolyFactorization> factorization;
  std::optional<std::vector<WeightedSquare>> sum_of_squares;
};

MembershipWitness plot_check(const SpacePresentation& space, const PolyPlot& p,
                             const PlotCertificates& certs = {});
// Re-checks the certificate carried by a member verdict.
bool revalidate(const SpacePresentation& space, const PolyPlot& p, const MembershipWitness& w);
// plot_check that throws NotAMember on a nonmember verdict.
MembershipWitness require_member(const SpacePresentation& space, const PolyPlot& p,
                                 const PlotCertificates& certs = {});

// Branch index of a polynomial plot into a wedge-like factor, if single-branch.
// Constant plots at the origin report nullopt with *is_origin set.
std::optional<std::size_t> single_branch(const Family& f, const PolyMap& comps, bool* at_origin);

// Writes c = m + n*theta when c lies in Z + theta Z.
bool lattice_coordinates(const QuadNumber& c, const QuadNumber& theta, mpz_class* m, mpz_class* n);
// Two lifts present the same plot into the torus.
bool torus_lifts_equivalent(const Polynomial& f, const Polynomial& g, const QuadNumber& theta);

}  // namespace difftan
