#pragma once

#include "minproj/projection.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace minproj {

/// T = Σ α_i x_i ⊗ f_i over vertex/dual-vertex pairs with positive weights
/// summing to 1. As a functional on operators, T(L) = Σ α_i f_i(L x_i); as
/// an operator, T(z) = Σ α_i f_i(z) x_i.
struct CMFunctional {
  std::vector<NormingPair> pairs;
  std::vector<Rational> weights;

  std::size_t support() const noexcept { return pairs.size(); }
  /// n × n matrix of the operator form.
  Matrix operator_matrix(const PolyhedralSpace& space) const;
};

struct CMVerification {
  bool weights = false;     // positive, summing to 1, distinct in-range pairs
  bool vanishing = false;   // T(L) = 0 for every L vanishing on Y with range in Y
  bool invariance = false;  // T(Y) ⊆ Y
  bool norming = false;     // f_i(P x_i) = lambda for every pair
  bool trace = false;       // trace(T|_Y) = lambda
  Rational trace_value;     // meaningful when invariance holds
  std::string detail;       // first failed condition

  bool ok() const { return weights && vanishing && invariance && norming && trace; }
};

/// Pairs with positive LP dual weight. Throws CERTIFICATE_INVALID unless all
/// conditions hold against the report's witness.
CMFunctional cm_from_dual(const ProjectionProblem& problem, const MinProjReport& report);

/// Checks every condition exactly; never throws on a bad certificate.
CMVerification verify_cm(const PolyhedralSpace& space, const Subspace& y, const CMFunctional& cm,
                         const Rational& lambda, const Matrix& projection);

/// trace(T|_Y), computed by expressing T y_j in the Y basis. Requires T(Y) ⊆ Y.
Rational restricted_trace(const PolyhedralSpace& space, const Subspace& y, const CMFunctional& cm);

struct SupportSearchLimits {
  std::size_t max_candidates = 24;
  std::uint64_t max_subsets = 1'000'000;
};

struct MinimalSupportResult {
  CMFunctional cm;
  std::size_t support = 0;
  std::uint64_t subsets_tested = 0;
};

/// Smallest subset of candidate_pairs carrying positive weights that sum to
/// 1 and annihilate every operator vanishing on Y with range in Y. Subsets
/// are tried by cardinality, then lexicographically. Throws
/// SUPPORT_BUDGET_EXCEEDED past the limits.
MinimalSupportResult minimal_support_cm(const ProjectionProblem& problem,
                                        const std::vector<NormingPair>& candidate_pairs,
                                        SupportSearchLimits limits = {});

struct RankGap {
  std::size_t rank_full = 0;        // rank of the f_i in X*
  std::size_t rank_restricted = 0;  // rank of the f_i|_Y in Y*
};

/// Throws RANK_GAP_VIOLATION when lambda > 1 and rank_restricted >= rank_full.
RankGap cm_rank_gap(const PolyhedralSpace& space, const Subspace& y, const CMFunctional& cm,
                    const Rational& lambda);

}  // namespace minproj
