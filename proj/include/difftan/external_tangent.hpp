#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "difftan/internal_tangent.hpp"
#include "difftan/linalg.hpp"
#include "difftan/space.hpp"

namespace difftan {

enum class GermForm { FreeSeries, WedgeTuples, ConstantsOnly, GluedSheets };

const char* germ_form_name(GermForm f);

// One local description of germs: functions pulled back along param, in the
// series algebra generated by the generators.
struct GermSheet {
  std::size_t nvars = 0;
  PolyMap param;                    // local variables -> ambient coordinates
  std::vector<bool> absorbed;       // ambient coordinates no germ depends on
  std::vector<Polynomial> generators;
};

// Germs on sheets a and b agree after zeroing the listed variables; the
// remaining variables are identified in order.
struct SheetGluing {
  std::size_t a = 0, b = 0;
  std::vector<std::size_t> zero_a, zero_b;
};

struct GermAlgebraPresentation {
  GermForm form = GermForm::ConstantsOnly;
  std::size_t wedge_j = 0;
  std::vector<GermSheet> sheets;
  std::vector<SheetGluing> gluings;

  static GermAlgebraPresentation free_series(std::size_t nvars, std::vector<Polynomial> generators);
  static GermAlgebraPresentation wedge_tuples(std::size_t j);
  static GermAlgebraPresentation constants_only();

  std::string describe() const;
};

GermAlgebraPresentation germ_algebra(const SpacePresentation& space, const Point& x);

// A presented germ: one truncated series per sheet.
using GermTuple = std::vector<Polynomial>;

class CotangentSpace {
 public:
  CotangentSpace(const GermAlgebraPresentation& alg, unsigned order);

  unsigned order() const { return order_; }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<GermTuple>& ideal_basis() const { return ideal_; }
  std::vector<GermTuple> representatives() const;
  std::vector<std::string> representative_labels() const;

  // Coordinates of f - f(0) in I/I^2; f must be a germ of the presented algebra.
  Vector coordinates(const GermTuple& f) const;
  GermTuple multiply(const GermTuple& f, const GermTuple& g) const;
  GermTuple constant(const QuadNumber& c) const;
  QuadNumber value_at_base(const GermTuple& f) const;
  bool in_algebra(const GermTuple& f) const;

 private:
  Vector flatten(const GermTuple& f) const;

  GermAlgebraPresentation alg_;
  unsigned order_;
  std::vector<std::vector<Exponent>> monomials_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
  std::vector<GermTuple> ideal_;
  std::vector<std::size_t> reps_;
  EchelonBasis ideal_echelon_{0};
  std::vector<Vector> ideal_vectors_;
  std::vector<Vector> square_vectors_;
  std::unique_ptr<QuotientSpace> quotient_;
};

struct CotangentResult {
  std::size_t dim = 0;
  std::vector<std::string> basis;
};

CotangentResult cotangent_space(const GermAlgebraPresentation& alg, unsigned order);

struct ExternalTangentReport {
  std::size_t dim = 0;
  std::vector<std::string> representatives;
  // derivation_basis[i][k] = D_i applied to the k-th spanning germ of I
  std::vector<Vector> derivation_basis;
  std::pair<unsigned, unsigned> truncation_orders_checked{0, 0};
};

ExternalTangentReport external_tangent(const SpacePresentation& space, const Point& x, unsigned order = 4);

struct ComparisonReport {
  Matrix beta;  // external dim x internal dim
  std::size_t internal_dim = 0, external_dim = 0;
  std::size_t rank = 0;
  bool injective = false, surjective = false;
};

ComparisonReport comparison_beta(const SpacePresentation& space, const Point& x, const TangentOptions& opts = {});

// Matrix of the induced map on external tangent spaces.
Matrix external_pushforward_matrix(const SmoothMap& f, const Point& x, unsigned order = 4);

}  // namespace difftan
