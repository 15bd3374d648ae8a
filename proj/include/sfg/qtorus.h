#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "sfg/ratmat.h"
#include "sfg/seedcore.h"

namespace sfg {

// consistent: X_i X_j = q^{-2 eps_ij} X_j X_i, X_i theta_a = q^{2 W_ai} theta_a X_i, mutation factors
//   (1 + q^{-(2s-1)} X_k^{-sgn})^{-sgn} and theta' = theta P_w(X_k).
// literal: X_i X_j = q^{eps_ij} X_j X_i, X_i theta_a = q^{W_ai} theta_a X_i, factors
//   (1 + q^{(2s-1) sgn} X_k^{-sgn})^{-sgn}, theta' = theta.
enum class QConvention { consistent, literal };
QConvention parse_q_convention(const std::string& s);
std::string to_string(QConvention c);

// Laurent polynomial in q with integer coefficients.
class QPoly {
 public:
  QPoly() = default;
  static QPoly monomial(int power, long coeff = 1);
  const std::map<int, mpz_class>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // a single term +-q^p
  bool is_unit(int* power = nullptr, int* sign = nullptr) const;
  QPoly shifted(int p) const;
  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  mpz_class at_one() const;
  std::string str() const;

 private:
  void add(int p, const mpz_class& v);
  std::map<int, mpz_class> c_;
};

struct QMono {
  std::vector<int> a;  // even exponents
  std::vector<int> S;  // sorted odd indices
  int degree() const;
  friend bool operator<(const QMono& x, const QMono& y) { return x.a != y.a ? x.a < y.a : x.S < y.S; }
  friend bool operator==(const QMono& x, const QMono& y) { return x.a == y.a && x.S == y.S; }
};

inline constexpr int kExactPrec = 1 << 28;

// Truncated series graded by total even degree.  Every term of degree < prec is known.
struct QSeries {
  std::map<QMono, QPoly> terms;
  int prec = kExactPrec;

  bool exact() const { return prec >= kExactPrec; }
  int min_degree() const;  // kExactPrec when there are no terms
  std::string str(const std::string& x = "X", const std::string& th = "theta") const;
};

struct QTorus {
  IntMat eps_hat;
  IntMat W;
  QConvention conv = QConvention::consistent;

  size_t n() const { return eps_hat.size(); }
  size_t r() const { return W.size(); }
  int lambda() const { return conv == QConvention::consistent ? -2 : 1; }
  int mu() const { return conv == QConvention::consistent ? 2 : 1; }

  QSeries one() const;
  QSeries x(int i, int power = 1) const;
  QSeries theta(int a) const;
  QSeries constant(const QPoly& c) const;

  QSeries add(const QSeries& a, const QSeries& b) const;
  QSeries sub(const QSeries& a, const QSeries& b) const;
  QSeries scale(const QSeries& a, const QPoly& c) const;
  QSeries mul(const QSeries& a, const QSeries& b, int cap = kExactPrec) const;
  // Needs a unique lowest-degree term, even, with a unit coefficient.
  QSeries inverse(const QSeries& a, int cap) const;
  QSeries pow(const QSeries& a, int k, int cap) const;
  void truncate(QSeries& a, int cap) const;

  // q power and sign for (X^a theta^S)(X^b theta^T); sign 0 when an odd generator repeats.
  int mono_mul(const QMono& x, const QMono& y, QMono& out, int& sign) const;
};

// Integer data only: all d_i = 1 and eps skew-symmetric.
QTorus make_qtorus(const ExchangeData& e, const IntMat& W, QConvention conv = QConvention::consistent);

struct QLetter {
  bool odd = false;
  int index = 0;
  int power = 1;
};
QSeries normal_form(const QTorus& t, const std::vector<QLetter>& word);

// a - b restricted to degrees below `order`; true when empty.  certified gets the usable order.
bool series_agree(const QTorus& t, const QSeries& a, const QSeries& b, int order, int* certified = nullptr);

// Z prod_{s=1}^{|c|} (1 + q^{(2s-1)sgn c} Y^{sgn c})^{-sgn c}.  Requires Y Z = q^c Z Y.
QSeries phi_adjoint(const QTorus& t, const QSeries& Z, const QSeries& Y, int c, int cap);

// Generators of the current seed written in the initial torus.
struct QState {
  QTorus base;
  ExchangeData ex;
  IntMat W;
  std::vector<QSeries> X;
  std::vector<QSeries> theta;
  int cap = 10;
};
QState initial_qstate(const QTorus& t, const ExchangeData& e, int cap);
QState q_mutate(const QState& s, int k);

struct QRelation {
  std::string kind;  // "XX", "Xtheta", "thetatheta"
  int i = 0;
  int j = 0;
  long power = 0;
  bool ok = false;
  int certified = 0;
};
// Relations of the current seed among the current generators, checked below degree N+1.
std::vector<QRelation> check_q_relations(const QState& s, int N);
// Mutates along seq from the initial seed, widening the working truncation until every relation
// is certified at order N (or the widening gives up; uncertified relations then report ok = false).
struct RelationRun {
  QState state;
  std::vector<QRelation> relations;
  bool certified = false;
};
RelationRun mutate_and_check(const QTorus& t, const ExchangeData& e, const std::vector<int>& seq, int N);

struct PentagonReport {
  bool ok = false;
  int order = 0;
  int certified = 0;
  int working_cap = 0;
  std::vector<std::string> notes;
};
// mu_1 mu_2 mu_1 mu_2 mu_1 followed by the index swap, compared at order N.
PentagonReport pentagon_check(int N, const IntMat& eps = {{0, 1}, {-1, 0}}, const IntMat& W = {},
                              QConvention conv = QConvention::consistent);
// Same composition for an arbitrary mutation sequence; expected[i] is the index the i-th generator should return to.
PentagonReport sequence_check(int N, const IntMat& eps, const IntMat& W, QConvention conv, const std::vector<int>& seq,
                              const std::vector<int>& expected);

}  // namespace sfg
