#pragma once

#include <vector>

#include "sfg/grassmann.h"
#include "sfg/sfrat.h"

namespace sfg {

// Column a is added gamma times to column b, i.e. right multiplication by 1 + gamma E_ab.
struct ElementaryMove {
  int a = 0;
  int b = 0;
  SFRat gamma;
};

struct BoundaryMatrix {
  Mat<SFRat> entries;
  std::vector<ElementaryMove> gauge_log;

  size_t r() const { return entries.size(); }
  size_t f() const { return entries.empty() ? 0 : entries[0].size(); }
  static BoundaryMatrix from_rows(Mat<SFRat> rows);
  // (1_r | 0), r x f
  static BoundaryMatrix normalized(size_t r, size_t f);
};

BoundaryMatrix transport(const BoundaryMatrix& c0, const std::vector<ElementaryMove>& moves);
SFRat minor(const BoundaryMatrix& c, const std::vector<int>& cols);
// (C|_O)^{-1} C via Cramer: row alpha, column j is Delta_{O with o_alpha -> j} / Delta_O.
Mat<SFRat> projector(const BoundaryMatrix& c, const std::vector<int>& O);

struct OddSupport {
  std::vector<int> B;
  std::vector<SFRat> cofactors;  // c_a = (-1)^a Delta_{B minus b_a} / Delta_O
};

struct BcfwResult {
  ExtElem<SFRat> lhs;
  ExtElem<SFRat> rhs;
  bool equal = false;
  OddSupport support;
  bool null_ok = false;  // M|_B c = 0
};

BcfwResult bcfw_check(const BoundaryMatrix& c, const std::vector<int>& O, const std::vector<int>& B);

}  // namespace sfg
