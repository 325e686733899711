#pragma once

#include <optional>
#include <string>
#include <vector>

#include "difftan/linalg.hpp"
#include "difftan/space.hpp"

namespace difftan {

// A polynomial map into TX: base point plus a fibre vector in the family's
// fibre coordinates (branch coordinates for wedge-like families).
struct BundlePlotCandidate {
  PolyPlot base;
  PolyMap fibre;

  std::size_t src_dim() const { return base.src_dim; }
  std::string render() const;
};

BundlePlotCandidate zero_section(const PolyPlot& base, std::size_t fibre_dim);

// Number of fibre coordinates used by candidates into TX.
std::size_t fibre_dim(const Family& f);
std::size_t fibre_dim(const SpacePresentation& space);

enum class BundleReason {
  ZeroSection,
  ConstantCandidate,
  ChartSurjective,
  BranchFactorization,
  FibreOffBranch,
  FibreNotOnOneBranch,
  FibreOrderBound,
  FibreMustVanish,
  BaseNotMember,
  LinearDecomposition,
  NoDecomposition,
  Componentwise,
};

const char* bundle_reason_name(BundleReason r);

struct DecompositionTerm {
  Polynomial scalar;
  PolyMap fibre;  // a Hector member over the same base
};

struct BundleWitness {
  Verdict verdict = Verdict::Nonmember;
  BundleReason reason = BundleReason::ZeroSection;
  std::string detail;
  std::optional<std::size_t> branch;
  std::vector<DecompositionTerm> decomposition;
  std::vector<BundleWitness> factor_witnesses;
  bool member() const { return verdict == Verdict::Member; }
};

enum class BundleDiffeology { Hector, Dvs };

const char* bundle_diffeology_name(BundleDiffeology d);

BundleWitness hector_membership(const SpacePresentation& space, const BundlePlotCandidate& c);
BundleWitness dvs_membership(const SpacePresentation& space, const BundlePlotCandidate& c);
BundleWitness bundle_membership(const SpacePresentation& space, const BundlePlotCandidate& c, BundleDiffeology d);

enum class FibrewiseOp { Addition, ScalarMultiplication };
enum class OpVerdict { SmoothOnCandidates, Counterexample };

const char* fibrewise_op_name(FibrewiseOp op);
const char* op_verdict_name(OpVerdict v);

struct SmoothnessReport {
  FibrewiseOp operation = FibrewiseOp::Addition;
  OpVerdict hector_verdict = OpVerdict::SmoothOnCandidates;
  OpVerdict dvs_verdict = OpVerdict::SmoothOnCandidates;
  std::optional<BundlePlotCandidate> hector_witness, dvs_witness;
  std::size_t candidates_checked = 0;
};

// Sum a+b and the scalar sweep t*v; returns {addition, scalar-multiplication}.
std::vector<SmoothnessReport> check_fibrewise_ops(const SpacePresentation& space, const BundlePlotCandidate& a,
                                                  const BundlePlotCandidate& b);

struct TrivializationReport {
  std::string group;
  std::size_t battery_size = 0;
  bool forward_preserves = false;
  bool inverse_preserves = false;
  bool round_trip = false;
  bool verdicts_coincide = false;
  bool holds() const { return forward_preserves && inverse_preserves && round_trip && verdicts_coincide; }
};

// Left-translation trivialization TG -> G x T_e G checked on a seeded battery.
TrivializationReport group_trivialization(const SpacePresentation& space, std::size_t battery = 40,
                                          unsigned seed = 7);

struct VandermondeCertificate {
  std::vector<Rational> nodes;
  std::size_t rank = 0;
  bool independent() const { return rank == nodes.size(); }
};

// Rows (1, s, ..., s^(N-1)) at N distinct rational nodes.
VandermondeCertificate vandermonde_certificate(std::size_t n);

enum class Fineness { Fine, NotFineCertificate, OutOfScope };

const char* fineness_name(Fineness f);

struct FineReport {
  Fineness verdict = Fineness::OutOfScope;
  std::string detail;
  std::optional<VandermondeCertificate> certificate;
};

FineReport fine_check(const SpacePresentation& space, const Point& x);

struct GammaCertificate {
  std::size_t x_size = 0, n = 0;
  Matrix gamma;
  bool permutation = false;
  bool bijective = false;
  bool membership_preserving = false;
  bool zero_section = false;
  bool holds() const { return permutation && bijective && membership_preserving && zero_section; }
};

// Functions on a finite discrete set into R^n, presented as a product of copies of R^n.
GammaCertificate gamma_finite_discrete(std::size_t x_size, std::size_t n);

}  // namespace difftan
