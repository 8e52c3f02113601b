#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mstfan/rational.hpp"

namespace mstfan {

// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(Matrix m);

std::size_t rank(Matrix m);

// Basis of the right null space {x : m x = 0}.
std::vector<RationalVector> kernel(Matrix m);

// Unique solution of a square nonsingular system, or nullopt when singular.
std::optional<RationalVector> solve(Matrix a, RationalVector b);

}  // namespace mstfan
