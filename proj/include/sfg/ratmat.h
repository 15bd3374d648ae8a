#pragma once

#include <string>
#include <vector>

#include "sfg/sfrat.h"

namespace sfg {

using IntMat = std::vector<std::vector<long>>;

// Dense exact rational matrix.
class RatMat {
 public:
  RatMat() = default;
  RatMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RatMat identity(size_t n);
  static RatMat from_int(const IntMat& m, size_t cols_if_empty = 0);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rat& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  RatMat transpose() const;
  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat scaled(const Rat& c) const;
  bool operator==(const RatMat& o) const;
  bool is_zero() const;
  bool is_integer() const;
  IntMat to_int() const;  // throws if not integral
  RatMat cols_subset(const std::vector<size_t>& cols) const;
  RatMat rows_subset(const std::vector<size_t>& rows) const;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Reduced row echelon form; pivot columns are returned in order.
RatMat rref(const RatMat& m, std::vector<size_t>* pivots = nullptr);
size_t rank(const RatMat& m);
Rat det(const RatMat& m);
RatMat inverse(const RatMat& m);  // throws std::domain_error when singular
// Basis of {v : m v = 0}, one column per free variable.
RatMat nullspace(const RatMat& m);
// Some Z with Z * A = W.  Free variables are set to free_value; throws if inconsistent.
RatMat solve_left(const RatMat& A, const RatMat& W, const Rat& free_value = 0);

IntMat int_transpose(const IntMat& m);
bool is_skew_symmetric(const IntMat& m);

}  // namespace sfg
