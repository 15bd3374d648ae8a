#include "sfg/boundary.h"

#include <stdexcept>

namespace sfg {

namespace {

void check_cols(const BoundaryMatrix& c, const std::vector<int>& cols) {
  for (int j : cols)
    if (j < 0 || static_cast<size_t>(j) >= c.f()) throw std::out_of_range("column label out of range");
}

}  // namespace

BoundaryMatrix BoundaryMatrix::from_rows(Mat<SFRat> rows) {
  for (auto& row : rows)
    if (row.size() != rows[0].size()) throw std::invalid_argument("ragged boundary matrix");
  BoundaryMatrix c;
  c.entries = std::move(rows);
  return c;
}

BoundaryMatrix BoundaryMatrix::normalized(size_t r, size_t f) {
  if (r > f) throw std::invalid_argument("need r <= f");
  Mat<SFRat> m(r, std::vector<SFRat>(f, SFRat(0L)));
  for (size_t i = 0; i < r; ++i) m[i][i] = SFRat(1L);
  return from_rows(std::move(m));
}

BoundaryMatrix transport(const BoundaryMatrix& c0, const std::vector<ElementaryMove>& moves) {
  BoundaryMatrix c = c0;
  for (auto& mv : moves) {
    check_cols(c, {mv.a, mv.b});
    if (mv.a == mv.b) throw std::invalid_argument("elementary move needs a != b");
    size_t a = static_cast<size_t>(mv.a), b = static_cast<size_t>(mv.b);
    for (auto& row : c.entries) row[b] = row[b] + mv.gamma * row[a];
    c.gauge_log.push_back(mv);
  }
  return c;
}

SFRat minor(const BoundaryMatrix& c, const std::vector<int>& cols) {
  if (cols.size() != c.r()) throw std::invalid_argument("minor needs exactly r columns");
  check_cols(c, cols);
  return det_generic(columns(c.entries, cols));
}

Mat<SFRat> projector(const BoundaryMatrix& c, const std::vector<int>& O) {
  SFRat d = minor(c, O);
  if (d.is_zero()) throw std::domain_error("anchor minor vanishes");
  Mat<SFRat> M(c.r(), std::vector<SFRat>(c.f()));
  for (size_t al = 0; al < c.r(); ++al)
    for (size_t j = 0; j < c.f(); ++j) {
      std::vector<int> cols = O;
      cols[al] = static_cast<int>(j);
      M[al][j] = minor(c, cols) / d;
    }
  return M;
}

BcfwResult bcfw_check(const BoundaryMatrix& c, const std::vector<int>& O, const std::vector<int>& B) {
  if (B.size() != c.r() + 1) throw std::invalid_argument("window needs r+1 columns");
  check_cols(c, B);
  Mat<SFRat> M = projector(c, O);
  SFRat d = minor(c, O);
  BcfwResult res;
  res.lhs = berezin_delta(columns(M, B), B);
  res.support.B = B;
  for (size_t a = 0; a < B.size(); ++a) {
    std::vector<int> T;
    for (size_t i = 0; i < B.size(); ++i)
      if (i != a) T.push_back(B[i]);
    SFRat ratio = minor(c, T) / d;
    res.rhs = res.rhs + ExtElem<SFRat>::term(ratio, T);
    res.support.cofactors.push_back(a % 2 == 0 ? ratio : -ratio);
  }
  res.equal = res.lhs == res.rhs;
  res.null_ok = true;
  for (size_t al = 0; al < c.r(); ++al) {
    SFRat s(0L);
    for (size_t a = 0; a < B.size(); ++a) s = s + M[al][static_cast<size_t>(B[a])] * res.support.cofactors[a];
    if (!s.is_zero()) res.null_ok = false;
  }
  return res;
}

}  // namespace sfg
