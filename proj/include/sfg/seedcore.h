#pragma once

#include <map>
#include <string>
#include <vector>

#include "sfg/ratmat.h"
#include "sfg/sfrat.h"

namespace sfg {

// Indices are 0-based; the first n_mut indices are mutable.
struct ExchangeData {
  int n_mut = 0;
  int n_frozen = 0;
  IntMat eps;
  std::vector<long> d;

  size_t n() const { return static_cast<size_t>(n_mut + n_frozen); }
  void validate() const;
  bool symmetrizer_ok() const;
  bool is_mutable(int k) const { return k >= 0 && k < n_mut; }
  // eps_hat(i,j) = eps(i,j) / d_j over all indices.
  RatMat eps_hat() const;
  // The mutable block of eps_hat.
  RatMat eps_hat_mut() const;
  bool operator==(const ExchangeData& o) const = default;
};

ExchangeData make_exchange(const IntMat& eps, std::vector<long> d = {}, int n_frozen = 0);
ExchangeData mutate_epsilon(const ExchangeData& e, int k);

struct XSeed {
  ExchangeData ex;
  std::vector<SFRat> x;  // one entry per index, frozen included
};

struct ASeed {
  ExchangeData ex;
  std::vector<SFRat> a;  // frozen entries are the coefficients c_j
};

// x1..xn or a1..an as plain variables.
XSeed initial_xseed(const ExchangeData& e, const std::string& prefix = "x");
ASeed initial_aseed(const ExchangeData& e, const std::string& prefix = "a");
std::vector<std::string> variable_names(size_t n, const std::string& prefix);

XSeed mutate_x(const XSeed& s, int k);
ASeed mutate_a(const ASeed& s, int k);
bool seeds_equal(const XSeed& a, const XSeed& b);
bool seeds_equal(const ASeed& a, const ASeed& b);

// X_i = prod_j A_j^{eps_ij} for each mutable i.
std::vector<SFRat> p_map(const ASeed& s);

// Floating-point versions of the mutation formulas.
std::vector<double> mutate_x_values(const ExchangeData& e, const std::vector<double>& x, int k);
std::vector<double> mutate_a_values(const ExchangeData& e, const std::vector<double>& a, int k);

// det of d log X'_i / d log X_j by central differences at the given X values.
double mutation_log_jacobian(const ExchangeData& e, int k, const std::vector<double>& x, double h = 1e-5);
double mutation_log_jacobian(const XSeed& s, int k, const std::map<std::string, double>& point, double h = 1e-5);

// Central-difference Jacobian of a map R^n -> R^m.
template <class F>
std::vector<std::vector<double>> fd_jacobian(F&& f, const std::vector<double>& p, double h) {
  std::vector<double> f0 = f(p);
  std::vector<std::vector<double>> J(f0.size(), std::vector<double>(p.size()));
  for (size_t j = 0; j < p.size(); ++j) {
    auto pp = p, pm = p;
    pp[j] += h;
    pm[j] -= h;
    auto fp = f(pp), fm = f(pm);
    for (size_t i = 0; i < f0.size(); ++i) J[i][j] = (fp[i] - fm[i]) / (2 * h);
  }
  return J;
}

double det_double(const std::vector<std::vector<double>>& m);

}  // namespace sfg
