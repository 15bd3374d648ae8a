#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sfg/sfrat.h"

namespace sfg {

// prod_v X_v^{B_v} prod_k (1 + X_k^{sigma_k})^{A_k}
struct TransferWeight {
  std::map<std::string, int> B;
  std::map<std::string, int> A;
  std::map<std::string, int> sigma;  // +-1, defaults to +1

  SFRat value() const;
  double eval(const std::map<std::string, double>& X) const;
};

// A closed product of transfer weights; traversal -1 uses the reciprocal.
using LetterSpec = std::vector<std::pair<TransferWeight, int>>;
double eval_letter(const LetterSpec& spec, const std::map<std::string, double>& X);
double eval_letter(const TransferWeight& w, const std::map<std::string, double>& X);

// gamma * X_k^{b} (1 + X_k^{s})^{a}.  When k already carries a factor with the opposite sign it is
// rewritten through (1 + X^{-1}) = X^{-1}(1 + X).
TransferWeight flip_update(const TransferWeight& g, const std::string& k, int b, int a, int s);

using ZMat = std::vector<std::vector<mpz_class>>;
ZMat zmat(const std::vector<std::vector<long>>& m);
ZMat zmul(const ZMat& a, const ZMat& b);
mpz_class zdet(const ZMat& m);

struct SmithForm {
  ZMat U, D, S;  // U M S = D
  size_t rank = 0;
};
SmithForm smith_normal_form(const ZMat& M);

// Laurent polynomial in the letters with SFRat coefficients.  Exponent vectors index `letters`.
struct LetterPoly {
  std::map<std::vector<int>, SFRat> terms;
  void add(const std::vector<int>& e, const SFRat& c);
  bool is_zero() const { return terms.empty(); }
  std::string str(const std::vector<std::string>& names) const;
};
LetterPoly lp_mul(const LetterPoly& a, const LetterPoly& b);
LetterPoly lp_add(const LetterPoly& a, const LetterPoly& b);
// Divide by the common monomial and by the coefficient of the lexicographically first exponent.
LetterPoly saturate(const LetterPoly& p);

struct VerticalSystem {
  std::vector<std::string> letters;
  std::vector<std::vector<long>> binomials;  // rows over letters
  std::vector<SFRat> units;                  // one per binomial row
  std::vector<LetterPoly> laurents;
};

struct FiberCurve {
  LetterPoly P;                             // over (x, y)
  std::vector<std::string> free_names;      // letter names standing for x and y when available
  std::vector<std::vector<int>> free_monomials;  // x, y as monomials in the letters
  std::vector<std::vector<int>> letter_in_free;  // each letter as a monomial in (x, y) ...
  std::vector<SFRat> letter_unit;                // ... times this unit
  bool used_resultant = false;
  bool coefficients_sf = false;
};

FiberCurve eliminate(const VerticalSystem& sys);

struct NewtonGenus {
  std::vector<std::pair<long, long>> polygon;  // hull vertices, counterclockwise
  long interior = 0;
  long boundary = 0;
  mpz_class area2;  // twice the area
  bool degenerate = false;
  bool pick_check = false;
  long genus = 0;
};
NewtonGenus newton_genus(const std::vector<std::pair<long, long>>& support);
NewtonGenus newton_genus(const LetterPoly& P);

struct DlogResidue {
  int sign = 1;
  std::vector<SFRat> survivors;  // restricted to the divisor where possible
  std::vector<size_t> poles;     // survivor positions that could not be restricted
  std::vector<size_t> vanishing;  // survivor positions that vanish on the divisor
};
// a is 0-based here; the sign is (-1)^a.
DlogResidue residue_dlog(const std::vector<SFRat>& letters, size_t a);

}  // namespace sfg
