#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "difftan/linalg.hpp"
#include "difftan/smooth_map.hpp"
#include "difftan/space.hpp"

namespace difftan {

struct TangentOptions {
  // slopes for Generated(n, 1): curves x + t*(1, a, 0, ...)
  std::vector<QuadNumber> slopes;
  unsigned order = 4;
};

struct CurveGerm {
  PolyPlot plot;
  std::string label;
};

CurveGerm make_curve(PolyPlot plot);

enum class RelationKind {
  Factorization,
  EvenCurve,
  DiagonalSplit,
  FlatCurve,
  ReparametrizationAbsorption,
  NegationSymmetry,
};

const char* relation_kind_name(RelationKind k);

struct RelationTerm {
  CurveGerm curve;
  QuadNumber coefficient;
};

struct BasicRelation {
  RelationKind kind = RelationKind::Factorization;
  std::vector<RelationTerm> terms;
  // factor of a product whose rules justify the relation; unset means the whole space
  std::optional<std::size_t> factor;
  // Factorization: terms[0] = terms[1] o reparam
  std::optional<Polynomial> reparam;
  // Factorization through a chart: the chart coordinate functions
  PolyMap chart;
  // DiagonalSplit: q(t,t) = terms[0], q(t,0) = terms[1], q(0,t) = terms[2]
  std::optional<PolyPlot> two_plot;
};

// Re-checks the side conditions of a relation.
bool verify_relation(const SpacePresentation& space, const Point& x, const BasicRelation& r);

struct TangentSpaceReport {
  std::size_t dim = 0;
  std::vector<std::string> basis;
  std::vector<CurveGerm> basis_curves;
  std::vector<CurveGerm> generators;
  // dim x generators.size()
  Matrix classify;
  std::vector<BasicRelation> relations;
};

std::vector<CurveGerm> generating_curves(const SpacePresentation& space, const Point& x,
                                         const TangentOptions& opts = {});
std::vector<BasicRelation> harvest_relations(const SpacePresentation& space, const Point& x,
                                             const std::vector<CurveGerm>& curves,
                                             const TangentOptions& opts = {});

class InternalTangent {
 public:
  InternalTangent(SpacePresentation space, Point x, TangentOptions opts = {});

  const TangentSpaceReport& report() const { return report_; }
  const SpacePresentation& space() const { return space_; }
  const Point& point() const { return x_; }
  std::size_t dim() const { return report_.dim; }

  // Class of a member curve through x in basis coordinates.
  Vector classify(const PolyPlot& curve) const;

 private:
  SpacePresentation space_;
  Point x_;
  TangentOptions opts_;
  TangentSpaceReport report_;
  std::vector<std::string> labels_;
  std::vector<BasicRelation> relation_pool_;
};

TangentSpaceReport internal_tangent(const SpacePresentation& space, const Point& x,
                                    const TangentOptions& opts = {});

// Matrix of T_x(f) in the basis of both reports.
Matrix pushforward_matrix(const SmoothMap& f, const Point& x, const TangentOptions& opts = {});
Vector pushforward(const SmoothMap& f, const Point& x, const Vector& v, const TangentOptions& opts = {});

struct ProductIsoCertificate {
  std::size_t dim_a = 0, dim_b = 0, dim_product = 0;
  Matrix alpha;  // T(AxB) -> T(A) + T(B)
  Matrix beta;   // T(A) + T(B) -> T(AxB)
  bool alpha_beta_identity = false;
  bool beta_alpha_identity = false;
  bool holds() const { return alpha_beta_identity && beta_alpha_identity; }
};

ProductIsoCertificate product_tangent_iso(const SpacePresentation& a, const SpacePresentation& b,
                                          const Point& pa, const Point& pb, const TangentOptions& opts = {});

struct DerivativeClaimReport {
  bool holds = true;
  unsigned checked_orders = 0;
  std::string detail;
};

// For a plot p into the three-lines space: every derivative of p stays in the space and
// commutes with the inverse three-lines map.
DerivativeClaimReport derivative_claim_check(const PolyPlot& p, unsigned k);

}  // namespace difftan
