#pragma once

#include "minproj/matrix.hpp"

#include <optional>
#include <vector>

namespace minproj {

/// Rank over Q by fraction-free (Bareiss) elimination on the
/// integer-scaled rows.
std::size_t rank(const Matrix& m);

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Gauss-Jordan reduction with the first nonzero entry of each column as
/// pivot. The result is the canonical basis of the row space.
RowEchelon reduced_row_echelon(const Matrix& m);

/// Columns form a basis of {v : m v = 0}, one column per free variable
/// (free variable set to 1, the others to 0).
Matrix nullspace_basis(const Matrix& m);

/// Some exact solution of a v = b, or nullopt when none exists. Free
/// variables are set to zero.
std::optional<Vector> solve_linear(const Matrix& a, std::span<const Rational> b);

}  // namespace minproj
