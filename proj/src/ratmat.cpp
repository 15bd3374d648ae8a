#include "sfg/ratmat.h"

#include <stdexcept>

namespace sfg {

RatMat RatMat::identity(size_t n) {
  RatMat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_int(const IntMat& m, size_t cols_if_empty) {
  size_t c = m.empty() ? cols_if_empty : m[0].size();
  RatMat r(m.size(), c);
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != c) throw std::invalid_argument("ragged matrix");
    for (size_t j = 0; j < c; ++j) r(i, j) = m[i][j];
  }
  return r;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RatMat r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Rat& x = (*this)(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  RatMat r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const { return *this + o.scaled(-1); }

RatMat RatMat::scaled(const Rat& c) const {
  RatMat r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

bool RatMat::operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

bool RatMat::is_zero() const {
  for (auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool RatMat::is_integer() const {
  for (auto& x : a_)
    if (x.get_den() != 1) return false;
  return true;
}

IntMat RatMat::to_int() const {
  if (!is_integer()) throw std::domain_error("matrix has non-integer entries");
  IntMat m(rows_, std::vector<long>(cols_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m[i][j] = (*this)(i, j).get_num().get_si();
  return m;
}

RatMat RatMat::cols_subset(const std::vector<size_t>& cols) const {
  RatMat r(rows_, cols.size());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(i, cols[j]);
  return r;
}

RatMat RatMat::rows_subset(const std::vector<size_t>& rows) const {
  RatMat r(rows.size(), cols_);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(rows[i], j);
  return r;
}

std::vector<std::vector<std::string>> RatMat::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(cols_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).get_str();
  return out;
}

RatMat rref(const RatMat& m, std::vector<size_t>* pivots) {
  RatMat r = m;
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
    size_t p = row;
    while (p < r.rows() && r(p, c) == 0) ++p;
    if (p == r.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
    Rat inv = 1 / r(row, c);
    for (size_t j = 0; j < r.cols(); ++j) r(row, j) *= inv;
    for (size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, c) == 0) continue;
      Rat f = r(i, c);
      for (size_t j = 0; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  if (pivots) *pivots = piv;
  return r;
}

size_t rank(const RatMat& m) {
  std::vector<size_t> piv;
  rref(m, &piv);
  return piv.size();
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  RatMat r = m;
  size_t n = m.rows();
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && r(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(r(p, j), r(c, j));
      d = -d;
    }
    d *= r(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (r(i, c) == 0) continue;
      Rat f = r(i, c) / r(c, c);
      for (size_t j = c; j < n; ++j) r(i, j) -= f * r(c, j);
    }
  }
  return d;
}

RatMat inverse(const RatMat& m) {
  size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  RatMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<size_t> piv;
  RatMat r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  RatMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

RatMat nullspace(const RatMat& m) {
  std::vector<size_t> piv;
  RatMat r = rref(m, &piv);
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t p : piv) is_piv[p] = true;
  std::vector<size_t> free;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  RatMat ns(m.cols(), free.size());
  for (size_t k = 0; k < free.size(); ++k) {
    ns(free[k], k) = 1;
    for (size_t i = 0; i < piv.size(); ++i) ns(piv[i], k) = -r(i, free[k]);
  }
  return ns;
}

RatMat solve_left(const RatMat& A, const RatMat& W, const Rat& free_value) {
  // Z A = W  <=>  A^T Z^T = W^T; solve column by column.
  if (A.cols() != W.cols()) throw std::invalid_argument("solve_left: shape mismatch");
  RatMat At = A.transpose();
  size_t n = At.cols();
  RatMat Z(W.rows(), A.rows());
  for (size_t row = 0; row < W.rows(); ++row) {
    RatMat aug(At.rows(), n + 1);
    for (size_t i = 0; i < At.rows(); ++i) {
      for (size_t j = 0; j < n; ++j) aug(i, j) = At(i, j);
      aug(i, n) = W(row, i);
    }
    std::vector<size_t> piv;
    RatMat r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == n) throw std::domain_error("solve_left: inconsistent system");
    std::vector<bool> is_piv(n, false);
    for (size_t p : piv) is_piv[p] = true;
    for (size_t j = 0; j < n; ++j)
      if (!is_piv[j]) Z(row, j) = free_value;
    for (size_t i = 0; i < piv.size(); ++i) {
      Rat v = r(i, n);
      for (size_t j = 0; j < n; ++j)
        if (!is_piv[j]) v -= r(i, j) * free_value;
      Z(row, piv[i]) = v;
    }
  }
  return Z;
}

IntMat int_transpose(const IntMat& m) {
  if (m.empty()) return {};
  IntMat t(m[0].size(), std::vector<long>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

bool is_skew_symmetric(const IntMat& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != -m[j][i]) return false;
  return true;
}

}  // namespace sfg
