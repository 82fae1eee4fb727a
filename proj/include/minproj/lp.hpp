#pragma once

#include "minproj/matrix.hpp"

#include <functional>
#include <vector>

namespace minproj {

/// minimize objective·v subject to constraints·v <= rhs, v free.
struct LinearProgram {
  Vector objective;
  Matrix constraints;
  Vector rhs;

  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus status);

/// On Optimal:
///   constraints·primal <= rhs,
///   dual >= 0 with constraintsᵀ·dual + objective = 0,
///   value = objective·primal = -(rhs·dual),
///   dual[i] > 0 implies i is in tight_set.
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  Vector primal;
  Vector dual;
  std::vector<std::size_t> tight_set;
};

/// Exact two-phase simplex on the split v = v⁺ - v⁻ with Bland's rule.
LPSolution solve(const LinearProgram& lp);

/// Called after every solve with the program and its result. Process-wide
/// and unsynchronized: install it before any solving starts. An empty
/// function removes it.
using SolveObserver = std::function<void(const LinearProgram&, const LPSolution&)>;
void set_solve_observer(SolveObserver callback);

/// Optimizes `secondary` over {v : constraints·v <= rhs, objective·v = fixed_value}.
/// The equality is appended as two inequality rows (indices m and m + 1).
LPSolution solve_on_face(const LinearProgram& lp, const Rational& fixed_value,
                         std::span<const Rational> secondary);

/// Indices i with row_i·v == rhs_i.
std::vector<std::size_t> tight_rows(const Matrix& a, std::span<const Rational> b,
                                    std::span<const Rational> v);

}  // namespace minproj
