#pragma once

#include <memory>
#include <string>
#include <vector>

#include "difftan/space.hpp"

namespace difftan {

// The catalog of smooth maps that tangent functors are evaluated on.
class SmoothMap {
 public:
  enum class Kind {
    Identity,
    Polynomial,
    BranchInclusion,
    SubsetInclusion,
    WedgeToAxes,
    QuotientProjection,
    ProductProjection,
    ProductInclusion,
    ThreeLines,
    ThreeLinesInverse,
    Composite,
  };

  static SmoothMap identity(const SpacePresentation& space);
  // Polynomial map between Euclidean spaces.
  static SmoothMap polynomial(std::size_t n, std::size_t m, PolyMap components);
  // R -> wedge-like space onto branch k, t |-> t*v_k
  static SmoothMap branch_inclusion(const SpacePresentation& target, std::size_t branch);
  // wedge, axes, lines or half-line into the ambient Euclidean space
  static SmoothMap subset_inclusion(const SpacePresentation& source);
  static SmoothMap wedge_to_axes(std::size_t j);
  // R -> irrational torus or R^n -> R^n/O(n)
  static SmoothMap quotient_projection(const SpacePresentation& target);
  // product onto the listed factors (in order)
  static SmoothMap product_projection(const SpacePresentation& product, std::vector<std::size_t> factors);
  // listed factors into the product, the other factors held at base
  static SmoothMap product_inclusion(const SpacePresentation& product, std::vector<std::size_t> factors,
                                     const Point& base);
  // axes of R^3 onto three lines of R^2, (x,y,z) |-> (x + z/sqrt2, y + z/sqrt2)
  static SmoothMap three_lines();
  static SmoothMap three_lines_inverse();
  // g o f
  static SmoothMap compose(const SmoothMap& g, const SmoothMap& f);

  static SpacePresentation three_lines_source();
  static SpacePresentation three_lines_target();

  Kind kind() const { return kind_; }
  const SpacePresentation& source() const { return source_; }
  const SpacePresentation& target() const { return target_; }
  std::string name() const { return name_; }

  PolyPlot apply(const PolyPlot& p) const;
  Point apply(const Point& x) const;

 private:
  SmoothMap(Kind kind, SpacePresentation source, SpacePresentation target, std::string name)
      : kind_(kind), source_(std::move(source)), target_(std::move(target)), name_(std::move(name)) {}

  Kind kind_;
  SpacePresentation source_, target_;
  std::string name_;
  PolyMap coords_;  // ambient formula for the polynomial kinds
  std::vector<SmoothMap> parts_;  // composite: applied first to last
};

}  // namespace difftan
