#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace sfg {

using Rat = mpq_class;
using Exps = std::vector<int>;

// Natural ordering on variable names: "x2" < "x10".
bool var_less(const std::string& a, const std::string& b);

// Laurent polynomial over Q in named variables.  Exponent vectors are
// indexed by vars(), which is kept sorted under var_less.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT
  LaurentPoly(const Rat& c);  // NOLINT

  static LaurentPoly variable(const std::string& name, int power = 1);
  static LaurentPoly monomial(const std::vector<std::string>& vars, const Exps& e, const Rat& c);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exps, Rat>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool all_nonneg() const;
  Rat constant_term() const;

  // Re-express over a superset of the current variables.
  LaurentPoly over(const std::vector<std::string>& vars) const;
  // Drop variables that no term uses.
  LaurentPoly trimmed() const;

  Exps min_exponents() const;
  Exps max_exponents() const;
  int total_degree() const;  // max over terms of the exponent sum
  int degree_in(const std::string& v) const;
  bool is_polynomial() const;  // no negative exponents

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly scaled(const Rat& c) const;
  LaurentPoly shifted(const std::vector<std::string>& vars, const Exps& e) const;  // times x^e
  LaurentPoly pow(unsigned k) const;

  // v * d/dv
  LaurentPoly euler_derivative(const std::string& v) const;
  // Set variable v to a value; v^-k requires a nonzero value.
  LaurentPoly substitute(const std::string& v, const Rat& value) const;

  Rat eval(const std::map<std::string, Rat>& point) const;
  double eval(const std::map<std::string, double>& point) const;

  std::string str() const;

 private:
  void clean();
  std::vector<std::string> vars_;
  std::map<Exps, Rat> terms_;
};

// Merged sorted variable list.
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Exact division of polynomials (no negative exponents).  Returns false if b does not divide a.
bool poly_divide_exact(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& q);
// Greatest common divisor of two polynomials, normalized to a positive leading coefficient
// and integer content 1.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);
// Divide out the numeric content so coefficients are coprime integers with positive leading term.
LaurentPoly primitive_part(const LaurentPoly& p, Rat* content = nullptr);

// Rational function num/den with a subtraction-free marker.  The marker is set when the
// numerator is nonzero and both parts have only nonnegative coefficients.
class SFRat {
 public:
  SFRat() : num_(0), den_(1) {}
  SFRat(long c);  // NOLINT
  SFRat(const Rat& c);  // NOLINT
  SFRat(const LaurentPoly& num);  // NOLINT
  SFRat(const LaurentPoly& num, const LaurentPoly& den);

  static SFRat var(const std::string& name) { return SFRat(LaurentPoly::variable(name)); }
  static SFRat parse(const std::string& text);

  // Degree bound above which gcd cancellation is skipped.
  static int& gcd_degree_bound();

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool sf() const { return sf_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  // True when the denominator is a monomial, i.e. the value is a Laurent polynomial.
  bool is_laurent() const { return den_.is_monomial(); }
  std::vector<std::string> vars() const;

  SFRat operator-() const;
  friend SFRat operator+(const SFRat& a, const SFRat& b);
  friend SFRat operator-(const SFRat& a, const SFRat& b);
  friend SFRat operator*(const SFRat& a, const SFRat& b);
  friend SFRat operator/(const SFRat& a, const SFRat& b);
  SFRat& operator+=(const SFRat& o) { return *this = *this + o; }
  SFRat& operator-=(const SFRat& o) { return *this = *this - o; }
  SFRat& operator*=(const SFRat& o) { return *this = *this * o; }
  SFRat& operator/=(const SFRat& o) { return *this = *this / o; }
  SFRat pow(int k) const;
  SFRat inverse() const;

  bool equals(const SFRat& o) const;
  friend bool operator==(const SFRat& a, const SFRat& b) { return a.equals(b); }
  friend bool operator!=(const SFRat& a, const SFRat& b) { return !a.equals(b); }

  SFRat euler_derivative(const std::string& v) const;
  SFRat substitute(const std::string& v, const Rat& value) const;

  Rat eval_positive(const std::map<std::string, Rat>& point) const;
  double eval_positive(const std::map<std::string, double>& point) const;
  Rat eval(const std::map<std::string, Rat>& point) const;
  double eval(const std::map<std::string, double>& point) const;

  std::string str() const;

 private:
  void normalize(bool cancel);
  static SFRat from_parts(const LaurentPoly& num, const LaurentPoly& den, bool cancel);
  LaurentPoly num_, den_;
  bool sf_ = false;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);
std::ostream& operator<<(std::ostream& os, const SFRat& r);

}  // namespace sfg
