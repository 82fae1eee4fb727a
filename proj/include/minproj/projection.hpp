#pragma once

#include "minproj/geometry.hpp"
#include "minproj/lp.hpp"

#include <compare>
#include <utility>
#include <vector>

namespace minproj {

/// Base projection P0 onto Y plus the basis y_i ⊗ g_j of the operators that
/// vanish on Y and map into Y (g_j ranges over the annihilator columns).
struct OperatorBasis {
  Matrix base_projection;
  std::vector<Matrix> ops;
  /// (Y-basis column, annihilator column) of each op.
  std::vector<std::pair<std::size_t, std::size_t>> labels;

  std::size_t size() const noexcept { return ops.size(); }
};

/// P0 is the projection onto Y along the span of the first n - k standard
/// basis vectors that are independent of Y (chosen greedily).
OperatorBasis build_operator_basis(const Subspace& y);

/// A projection P0 + Σ c_ij L_ij, as coordinates over OperatorBasis::ops.
struct OperatorPoint {
  Vector coefficients;
  friend bool operator==(const OperatorPoint&, const OperatorPoint&) = default;
};

/// (primal vertex index, dual vertex index).
struct NormingPair {
  std::size_t vertex = 0;
  std::size_t functional = 0;
  friend auto operator<=>(const NormingPair&, const NormingPair&) = default;
};

/// The exact LP  minimize t  s.t.  f(P x) <= t  over one representative of
/// each antipodal class {(x, f), (-x, -f)} of vertex/dual-vertex pairs.
/// Variables: the k(n-k) coefficients, then t.
class ProjectionProblem {
 public:
  ProjectionProblem(PolyhedralSpace space, Subspace y);

  const PolyhedralSpace& space() const noexcept { return space_; }
  const Subspace& subspace() const noexcept { return y_; }
  const OperatorBasis& basis() const noexcept { return basis_; }
  const LinearProgram& program() const noexcept { return lp_; }
  /// Pair behind each LP row.
  const std::vector<NormingPair>& pairs() const noexcept { return pairs_; }

  std::size_t operator_dim() const noexcept { return basis_.size(); }
  Matrix realize(const OperatorPoint& point) const;
  /// f(P x) for every LP row.
  Vector pair_values(const Matrix& p) const;
  /// Row index of a pair or of its antipode.
  std::size_t row_of(const NormingPair& pair) const;

 private:
  PolyhedralSpace space_;
  Subspace y_;
  OperatorBasis basis_;
  LinearProgram lp_;
  std::vector<NormingPair> pairs_;
};

struct MinProjReport {
  Rational lambda;
  OperatorPoint witness;
  std::vector<NormingPair> norming_pairs_of_witness;
  /// Positive LP dual weights, one per pair; they sum to 1.
  std::vector<std::pair<NormingPair, Rational>> dual_certificate;

  // Filled by face_dimension.
  bool face_analyzed = false;
  std::size_t face_dim = 0;
  std::vector<NormingPair> implicit_pairs;
  OperatorPoint relative_interior;
};

/// Solves for λ(Y, X), a minimal projection and the dual certificate.
MinProjReport projection_constant(const ProjectionProblem& problem);

/// Pairs with f(P x) = lambda, one per antipodal class. Throws NOT_MINIMAL
/// when some pair exceeds lambda.
std::vector<NormingPair> norming_pairs(const ProjectionProblem& problem, const Matrix& p,
                                       const Rational& lambda);

/// Decides which constraints are tight on the whole optimal face and fills
/// face_dim, implicit_pairs and relative_interior.
void face_dimension(const ProjectionProblem& problem, MinProjReport& report);

struct MaxNormingResult {
  OperatorPoint point;
  std::vector<NormingPair> pairs;
};

/// Greedy tightening over the optimal face, starting from the witness:
/// returns a minimal projection whose norming-pair set is inclusion-maximal.
MaxNormingResult max_norming_projection(const ProjectionProblem& problem,
                                        const MinProjReport& report);

}  // namespace minproj
