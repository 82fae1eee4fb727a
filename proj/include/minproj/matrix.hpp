#pragma once

#include "minproj/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace minproj {

using Vector = std::vector<Rational>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<Rational> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;
  const std::vector<Rational>& entries() const noexcept { return entries_; }

  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& m);
Vector operator*(const Matrix& a, std::span<const Rational> x);

/// [a | b], requires equal row counts.
Matrix hconcat(const Matrix& a, const Matrix& b);

/// Rank-one matrix u vᵀ, i.e. the operator x -> (v·x) u.
Matrix outer(std::span<const Rational> u, std::span<const Rational> v);

}  // namespace minproj
