#pragma once

#include "minproj/matrix.hpp"

#include <cstdint>
#include <vector>

namespace minproj {

/// Finite-dimensional space whose unit ball is conv(primal vertices). Both
/// signs of every vertex are stored, for the ball and for its polar.
class PolyhedralSpace {
 public:
  /// Computes the dual vertices with polar_dual, then validates.
  static PolyhedralSpace from_vertices(std::vector<Vector> vertices);

  /// Uses caller-supplied dual vertices after a validation pass.
  static PolyhedralSpace from_vertices_and_duals(std::vector<Vector> vertices,
                                                 std::vector<Vector> dual_vertices);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Vector>& primal() const noexcept { return primal_; }
  const std::vector<Vector>& dual() const noexcept { return dual_; }

  /// Index of -primal()[i] / -dual()[j].
  std::size_t primal_negation(std::size_t i) const { return primal_neg_[i]; }
  std::size_t dual_negation(std::size_t j) const { return dual_neg_[j]; }

 private:
  PolyhedralSpace() = default;
  void validate();

  std::size_t dim_ = 0;
  std::vector<Vector> primal_;
  std::vector<Vector> dual_;
  std::vector<std::size_t> primal_neg_;
  std::vector<std::size_t> dual_neg_;
};

/// Proper subspace Y of Qⁿ with 1 <= dim Y <= n - 1.
class Subspace {
 public:
  /// Y = span of the given vectors, which must be linearly independent.
  static Subspace from_basis(std::size_t ambient_dim, const std::vector<Vector>& basis);
  /// Y = common kernel of the given (independent) functionals.
  static Subspace from_equations(std::size_t ambient_dim, const std::vector<Vector>& functionals);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  /// n × k, columns span Y.
  const Matrix& basis() const noexcept { return basis_; }
  /// n × (n - k), columns are functionals vanishing on Y.
  const Matrix& annihilator() const noexcept { return annihilator_; }

  bool contains(std::span<const Rational> x) const;

 private:
  Subspace(Matrix basis, Matrix annihilator)
      : basis_(std::move(basis)), annihilator_(std::move(annihilator)) {}

  Matrix basis_;
  Matrix annihilator_;
};

/// Norm of x: max over dual vertices f of f·x.
Rational norm_eval(const PolyhedralSpace& space, std::span<const Rational> x);

/// Vertices of {f : f·v <= 1 for all input v}, by incremental double
/// description over the rationals. Output is sorted lexicographically.
std::vector<Vector> polar_dual(const std::vector<Vector>& vertices);

/// True iff vertices[index] is not a convex combination of the other listed
/// points (decided by LP feasibility).
bool is_extreme(const std::vector<Vector>& vertices, std::size_t index);

struct GeneralPositionResult {
  enum class WitnessKind { None, VertexSpan, KernelIntersection };

  bool in_general_position = true;
  WitnessKind witness_kind = WitnessKind::None;
  /// Indices into primal() (VertexSpan) or dual() (KernelIntersection).
  std::vector<std::size_t> witness;
  std::size_t subsets_examined = 0;
};

const char* to_string(GeneralPositionResult::WitnessKind kind);

inline constexpr std::uint64_t kDefaultSubsetCap = 1'000'000;

/// Checks Y against every distinct span of at most n vertices and every
/// distinct intersection of at most n dual-vertex kernels. Subsets are
/// visited by cardinality, then lexicographically, with one representative
/// per antipodal pair; the first violating subset is the witness.
GeneralPositionResult general_position_check(const PolyhedralSpace& space, const Subspace& y,
                                             std::uint64_t subset_cap = kDefaultSubsetCap);

}  // namespace minproj
