#include "sfg/seedcore.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace sfg {

namespace {

long sgn(long v) { return (v > 0) - (v < 0); }
long pos(long v) { return v > 0 ? v : 0; }

void require_mutable(const ExchangeData& e, int k) {
  if (k < 0 || static_cast<size_t>(k) >= e.n()) throw std::out_of_range("mutation index out of range");
  if (!e.is_mutable(k)) throw std::invalid_argument("cannot mutate at a frozen index");
}

}  // namespace

void ExchangeData::validate() const {
  if (n_mut < 0 || n_frozen < 0) throw std::invalid_argument("negative index counts");
  size_t N = n();
  if (eps.size() != N) throw std::invalid_argument("epsilon has wrong number of rows");
  for (auto& row : eps)
    if (row.size() != N) throw std::invalid_argument("epsilon has wrong number of columns");
  if (d.size() != N) throw std::invalid_argument("symmetrizer has wrong length");
  for (long x : d)
    if (x <= 0) throw std::invalid_argument("symmetrizers must be positive");
  for (size_t i = 0; i < N; ++i)
    if (eps[i][i] != 0) throw std::invalid_argument("epsilon has a nonzero diagonal entry");
  if (!symmetrizer_ok()) throw std::invalid_argument("d_i eps_ij != -d_j eps_ji");
}

bool ExchangeData::symmetrizer_ok() const {
  for (size_t i = 0; i < n(); ++i)
    for (size_t j = 0; j < n(); ++j)
      if (d[i] * eps[i][j] != -d[j] * eps[j][i]) return false;
  return true;
}

RatMat ExchangeData::eps_hat() const {
  RatMat m(n(), n());
  for (size_t i = 0; i < n(); ++i)
    for (size_t j = 0; j < n(); ++j) m(i, j) = Rat(eps[i][j]) / d[j];
  return m;
}

RatMat ExchangeData::eps_hat_mut() const {
  size_t m = static_cast<size_t>(n_mut);
  RatMat r(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) r(i, j) = Rat(eps[i][j]) / d[j];
  return r;
}

ExchangeData make_exchange(const IntMat& eps, std::vector<long> d, int n_frozen) {
  ExchangeData e;
  e.eps = eps;
  e.n_frozen = n_frozen;
  e.n_mut = static_cast<int>(eps.size()) - n_frozen;
  e.d = d.empty() ? std::vector<long>(eps.size(), 1) : std::move(d);
  e.validate();
  return e;
}

ExchangeData mutate_epsilon(const ExchangeData& e, int k) {
  require_mutable(e, k);
  ExchangeData out = e;
  size_t N = e.n(), kk = static_cast<size_t>(k);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      if (i == kk || j == kk)
        out.eps[i][j] = -e.eps[i][j];
      else
        out.eps[i][j] = e.eps[i][j] + sgn(e.eps[i][kk]) * pos(e.eps[i][kk] * e.eps[kk][j]);
    }
  return out;
}

std::vector<std::string> variable_names(size_t n, const std::string& prefix) {
  std::vector<std::string> v;
  for (size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i + 1));
  return v;
}

XSeed initial_xseed(const ExchangeData& e, const std::string& prefix) {
  XSeed s{e, {}};
  for (auto& v : variable_names(e.n(), prefix)) s.x.push_back(SFRat::var(v));
  return s;
}

ASeed initial_aseed(const ExchangeData& e, const std::string& prefix) {
  ASeed s{e, {}};
  for (auto& v : variable_names(e.n(), prefix)) s.a.push_back(SFRat::var(v));
  return s;
}

XSeed mutate_x(const XSeed& s, int k) {
  require_mutable(s.ex, k);
  if (s.x.size() != s.ex.n()) throw std::invalid_argument("X seed length does not match exchange data");
  XSeed out{mutate_epsilon(s.ex, k), s.x};
  size_t kk = static_cast<size_t>(k);
  SFRat xk = s.x[kk], xk_inv = s.x[kk].inverse();
  out.x[kk] = xk_inv;
  for (size_t i = 0; i < s.x.size(); ++i) {
    long e = s.ex.eps[i][kk];
    if (i == kk || e == 0) continue;
    SFRat base = SFRat(1L) + (e > 0 ? xk_inv : xk);
    out.x[i] = s.x[i] * base.pow(static_cast<int>(-e));
  }
  return out;
}

ASeed mutate_a(const ASeed& s, int k) {
  require_mutable(s.ex, k);
  if (s.a.size() != s.ex.n()) throw std::invalid_argument("A seed length does not match exchange data");
  ASeed out{mutate_epsilon(s.ex, k), s.a};
  size_t kk = static_cast<size_t>(k);
  SFRat plus(1L), minus(1L);
  for (size_t i = 0; i < s.a.size(); ++i) {
    long e = s.ex.eps[i][kk];
    if (e > 0) plus *= s.a[i].pow(static_cast<int>(e));
    if (e < 0) minus *= s.a[i].pow(static_cast<int>(-e));
  }
  out.a[kk] = (plus + minus) / s.a[kk];
  return out;
}

bool seeds_equal(const XSeed& a, const XSeed& b) {
  if (!(a.ex == b.ex) || a.x.size() != b.x.size()) return false;
  for (size_t i = 0; i < a.x.size(); ++i)
    if (a.x[i] != b.x[i]) return false;
  return true;
}

bool seeds_equal(const ASeed& a, const ASeed& b) {
  if (!(a.ex == b.ex) || a.a.size() != b.a.size()) return false;
  for (size_t i = 0; i < a.a.size(); ++i)
    if (a.a[i] != b.a[i]) return false;
  return true;
}

std::vector<SFRat> p_map(const ASeed& s) {
  std::vector<SFRat> out;
  for (int i = 0; i < s.ex.n_mut; ++i) {
    SFRat x(1L);
    for (size_t j = 0; j < s.ex.n(); ++j)
      if (s.ex.eps[i][j] != 0) x *= s.a[j].pow(static_cast<int>(s.ex.eps[i][j]));
    out.push_back(x);
  }
  return out;
}

std::vector<double> mutate_x_values(const ExchangeData& e, const std::vector<double>& x, int k) {
  require_mutable(e, k);
  std::vector<double> out = x;
  size_t kk = static_cast<size_t>(k);
  out[kk] = 1 / x[kk];
  for (size_t i = 0; i < x.size(); ++i) {
    long v = e.eps[i][kk];
    if (i == kk || v == 0) continue;
    double base = 1 + (v > 0 ? 1 / x[kk] : x[kk]);
    out[i] = x[i] * std::pow(base, static_cast<double>(-v));
  }
  return out;
}

std::vector<double> mutate_a_values(const ExchangeData& e, const std::vector<double>& a, int k) {
  require_mutable(e, k);
  std::vector<double> out = a;
  size_t kk = static_cast<size_t>(k);
  double plus = 1, minus = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    long v = e.eps[i][kk];
    if (v > 0) plus *= std::pow(a[i], static_cast<double>(v));
    if (v < 0) minus *= std::pow(a[i], static_cast<double>(-v));
  }
  out[kk] = (plus + minus) / a[kk];
  return out;
}

double det_double(const std::vector<std::vector<double>>& m) {
  size_t n = m.size();
  Eigen::MatrixXd M(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M(i, j) = m[i][j];
  return M.determinant();
}

double mutation_log_jacobian(const ExchangeData& e, int k, const std::vector<double>& x, double h) {
  for (double v : x)
    if (!(v > 0) || !std::isfinite(v)) throw std::domain_error("log Jacobian needs a strictly positive point");
  std::vector<double> logx(x.size());
  for (size_t i = 0; i < x.size(); ++i) logx[i] = std::log(x[i]);
  auto f = [&](const std::vector<double>& lx) {
    std::vector<double> xv(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) xv[i] = std::exp(lx[i]);
    auto y = mutate_x_values(e, xv, k);
    for (auto& v : y) {
      if (!(v > 0) || !std::isfinite(v)) throw std::domain_error("log Jacobian: point on a pole");
      v = std::log(v);
    }
    return y;
  };
  return det_double(fd_jacobian(f, logx, h));
}

double mutation_log_jacobian(const XSeed& s, int k, const std::map<std::string, double>& point, double h) {
  std::vector<double> x;
  for (auto& v : s.x) x.push_back(v.eval_positive(point));
  return mutation_log_jacobian(s.ex, k, x, h);
}

}  // namespace sfg
