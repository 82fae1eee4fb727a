#include "minproj/linalg.hpp"

#include "minproj/error.hpp"

#include <utility>

namespace minproj {

namespace {

// Scales a rational row by the lcm of its denominators.
std::vector<mpz_class> integer_row(std::span<const Rational> row) {
  mpz_class scale = 1;
  for (const auto& x : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = row[i].get_num() * (scale / row[i].get_den());
  }
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpz_class>> a;
  a.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) a.push_back(integer_row(m.row(r)));

  mpz_class prev = 1;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t p = pivot_row;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[pivot_row]);
    const mpz_class& piv = a[pivot_row][col];
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        // Bareiss step: the division is exact.
        mpz_class t = piv * a[r][c] - a[r][col] * a[pivot_row][c];
        mpz_divexact(a[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = piv;
    ++pivot_row;
  }
  return pivot_row;
}

RowEchelon reduced_row_echelon(const Matrix& m) {
  Matrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t p = pivot_row;
    while (p < rows && sgn(a(p, col)) == 0) ++p;
    if (p == rows) continue;
    if (p != pivot_row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a(p, c), a(pivot_row, c));
    }
    const Rational inv = 1 / a(pivot_row, col);
    for (std::size_t c = col; c < cols; ++c) a(pivot_row, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || sgn(a(r, col)) == 0) continue;
      const Rational factor = a(r, col);
      for (std::size_t c = col; c < cols; ++c) {
        if (sgn(a(pivot_row, c)) != 0) a(r, c) -= factor * a(pivot_row, c);
      }
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  Matrix reduced(pivot_row, cols);
  for (std::size_t r = 0; r < pivot_row; ++r)
    for (std::size_t c = 0; c < cols; ++c) reduced(r, c) = a(r, c);
  return {std::move(reduced), std::move(pivots)};
}

Matrix nullspace_basis(const Matrix& m) {
  const auto [reduced, pivots] = reduced_row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(basis, cols);
}

std::optional<Vector> solve_linear(const Matrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_linear: rhs length != row count");
  }
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto [reduced, pivots] = reduced_row_echelon(aug);
  Vector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == a.cols()) return std::nullopt;
    x[pivots[r]] = reduced(r, a.cols());
  }
  return x;
}

}  // namespace minproj
