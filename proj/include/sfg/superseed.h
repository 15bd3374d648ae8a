#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sfg/ratmat.h"
#include "sfg/seedcore.h"
#include "sfg/sfrat.h"

namespace sfg {

enum class SuperMode { consistent, paper_literal };

SuperMode parse_super_mode(const std::string& s);
std::string to_string(SuperMode m);

struct SuperSeed {
  ExchangeData ex;
  std::vector<SFRat> x;
  IntMat W;                             // r rows, one column per index
  std::vector<SFRat> theta_prefactor;   // theta'_a = prefactor_a * theta_a (initial theta)
  std::vector<std::string> names;       // names of the even generators, used by bracket()

  size_t r() const { return W.size(); }
  void validate() const;
};

// x1..xn as generators, prefactors 1.
SuperSeed initial_superseed(const ExchangeData& e, const IntMat& W, const std::string& prefix = "x");

SuperSeed mutate_super(const SuperSeed& s, int k, SuperMode mode = SuperMode::consistent);
IntMat mutate_w(const IntMat& W, const IntMat& eps, int k);

// Element of k[X^{+-1}] (x) Lambda[theta].  Keys are sorted lists of odd indices.
class GradedElem {
 public:
  using Key = std::vector<int>;
  GradedElem() = default;
  GradedElem(const SFRat& c);  // NOLINT
  static GradedElem theta(int a);
  static GradedElem term(const SFRat& c, Key odd);

  const std::map<Key, SFRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // 0 or 1 for homogeneous elements, -1 for mixed parity; zero counts as even.
  int parity() const;
  SFRat coeff(const Key& k) const;

  GradedElem operator-() const;
  friend GradedElem operator+(const GradedElem& a, const GradedElem& b);
  friend GradedElem operator-(const GradedElem& a, const GradedElem& b);
  friend GradedElem operator*(const GradedElem& a, const GradedElem& b);
  friend bool operator==(const GradedElem& a, const GradedElem& b);

  std::string str() const;

 private:
  void add(const Key& k, const SFRat& c);
  std::map<Key, SFRat> terms_;
};

// Product theta_S * theta_T as a sign times the merged key; sign 0 if S and T overlap.
int odd_product(const GradedElem::Key& s, const GradedElem::Key& t, GradedElem::Key& out);

// The log-canonical graded bracket of the seed, extended by the graded Leibniz rule.
GradedElem bracket(const GradedElem& f, const GradedElem& g, const SuperSeed& s);

struct HorizontalData {
  RatMat Z;                                // Z * eps_hat_mut = W_mut, r x n_mut
  std::optional<std::vector<SFRat>> factors;  // prod_j x_j^{-Z_aj}; empty if Z is not integral
};

// free_value picks the representative when eps_hat is singular on the mutable block.
HorizontalData horizontal_data(const SuperSeed& s, const Rat& free_value = 0);
// Z carried through a mutation at k so that the horizontal frame is unchanged.  On an
// invertible block this agrees with horizontal_data of the mutated seed; on a singular
// block it picks the representative matching the old one.
RatMat transport_z(const RatMat& Z, const ExchangeData& e, int k);
std::vector<double> horizontal_values(const SuperSeed& s, const RatMat& Z, const std::map<std::string, double>& point);

struct IsotropyReport {
  bool admissible = false;
  bool isotropic = false;
  bool left_kernel = false;
};
bool is_admissible(const ExchangeData& e, const IntMat& W);
IsotropyReport check_isotropy(const SuperSeed& s);

struct DualData {
  ExchangeData ex;
  IntMat W;
};
DualData langlands_dual(const SuperSeed& s);

// W -> G W for G in GL_r(Z).  Only meaningful on a seed whose prefactors are all 1.
SuperSeed odd_gauge(const SuperSeed& s, const IntMat& G);

struct RelationCheck {
  std::string kind;  // "XX" or "thetaX"
  int i = 0, j = 0;  // for thetaX, i is the odd index
  Rat expected;
  SFRat observed;
  bool ok = false;
};

// Brackets of the primed generators computed in `base`, compared with eps_hat' and W' of `primed`.
std::vector<RelationCheck> check_primed_relations(const SuperSeed& base, const SuperSeed& primed);
bool all_ok(const std::vector<RelationCheck>& checks);

// Skew-symmetric eps with entries in [-emax, emax], d = 1, W admissible.
SuperSeed random_admissible_superseed(std::mt19937_64& g, int n_max = 4, int r_max = 2, int emax = 3);

}  // namespace sfg
