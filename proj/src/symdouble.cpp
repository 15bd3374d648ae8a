#include "sfg/symdouble.h"

#include <cmath>
#include <stdexcept>

namespace sfg {

namespace {

long sgn(long v) { return (v > 0) - (v < 0); }

// log(1 + e^{-t})
double softlog(double t) { return t > 0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t)); }
// d/dt log(1 + e^{-t})
double softlog_d(double t) { return -1 / (1 + std::exp(t)); }

RatMat inverse_block(const SuperSeed& s) {
  try {
    return inverse(s.ex.eps_hat_mut());
  } catch (const std::domain_error&) {
    throw std::domain_error("eps_hat is singular on the mutable block");
  }
}

RatMat w_block(const SuperSeed& s) {
  RatMat w(s.r(), static_cast<size_t>(s.ex.n_mut));
  for (size_t a = 0; a < s.r(); ++a)
    for (size_t j = 0; j < w.cols(); ++j) w(a, j) = s.W[a][j];
  return w;
}

void check_dims(const SuperSeed& s, const DoublePoint& p) {
  size_t m = static_cast<size_t>(s.ex.n_mut);
  if (p.y.size() != m || p.A.size() != m) throw std::invalid_argument("double point has wrong even dimension");
  if (p.theta_pi.size() != s.r()) throw std::invalid_argument("double point has wrong odd dimension");
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

IntMat mutable_block(const ExchangeData& e) {
  size_t m = static_cast<size_t>(e.n_mut);
  IntMat b(m, std::vector<long>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) b[i][j] = e.eps[i][j];
  return b;
}

std::vector<double> moment_residual(const SuperSeed& s, const DoublePoint& p) {
  check_dims(s, p);
  RatMat inv = inverse_block(s), Z = w_block(s) * inv;
  size_t m = p.y.size();
  std::vector<double> mu(m);
  for (size_t i = 0; i < m; ++i) {
    double v = p.A[i];
    for (size_t j = 0; j < m; ++j) v -= 0.5 * inv(i, j).get_d() * p.y[j];
    for (size_t a = 0; a < s.r(); ++a) v -= Z(a, i).get_d() * p.theta_pi[a];
    mu[i] = v;
  }
  return mu;
}

std::vector<double> solve_moment(const SuperSeed& s, const std::vector<double>& y, const std::vector<double>& theta_pi) {
  DoublePoint p{y, std::vector<double>(y.size(), 0.0), theta_pi};
  auto mu = moment_residual(s, p);
  for (auto& v : mu) v = -v;
  return mu;
}

DiracReport dirac_identities(const SuperSeed& s) {
  DiracReport r;
  RatMat e = s.ex.eps_hat_mut(), w = w_block(s);
  r.Z = w * inverse_block(s);
  r.mixed = r.Z * e;
  r.mixed_ok = r.mixed == w;
  // {theta_a, theta_b}_D = -{theta_a, mu_m} eps_mn {mu_n, theta_b} = (Z eps Z^T)_ab theta_a theta_b
  r.theta_theta = (r.Z * e * r.Z.transpose()).scaled(-1);
  r.theta_theta_zero = r.theta_theta.is_zero();
  r.agrees_with_isotropy = r.theta_theta_zero == check_isotropy(s).isotropic;
  return r;
}

std::vector<double> double_map_y(const IntMat& eps, int k, const std::vector<double>& y) {
  size_t kk = static_cast<size_t>(k);
  std::vector<double> out = y;
  out[kk] = -y[kk];
  for (size_t i = 0; i < y.size(); ++i) {
    if (i == kk || eps[i][kk] == 0) continue;
    out[i] = y[i] - eps[i][kk] * softlog(sgn(eps[i][kk]) * y[kk]);
  }
  return out;
}

std::vector<std::vector<double>> double_map_jacobian(const IntMat& eps, int k, const std::vector<double>& y) {
  size_t n = y.size(), kk = static_cast<size_t>(k);
  std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) J[i][i] = 1;
  J[kk][kk] = -1;
  for (size_t i = 0; i < n; ++i) {
    long e = eps[i][kk];
    if (i == kk || e == 0) continue;
    J[i][kk] = -e * sgn(e) * softlog_d(sgn(e) * y[kk]);
  }
  return J;
}

double generating_even(const IntMat& eps, int k, const std::vector<double>& y) {
  size_t kk = static_cast<size_t>(k);
  double f = 0;
  for (size_t j = 0; j < y.size(); ++j) {
    long e = eps[j][kk];
    if (e != 0) f += 0.5 * e * y[j] * softlog(sgn(e) * y[kk]);
  }
  return f;
}

std::vector<double> generating_even_grad(const IntMat& eps, int k, const std::vector<double>& y) {
  size_t kk = static_cast<size_t>(k);
  std::vector<double> g(y.size(), 0.0);
  for (size_t j = 0; j < y.size(); ++j) {
    long e = eps[j][kk];
    if (e == 0) continue;
    g[j] += 0.5 * e * softlog(sgn(e) * y[kk]);
    g[kk] += 0.5 * e * y[j] * sgn(e) * softlog_d(sgn(e) * y[kk]);
  }
  return g;
}

std::vector<double> double_map_a(const IntMat& eps, int k, const std::vector<double>& y, const std::vector<double>& A) {
  auto J = double_map_jacobian(eps, k, y);
  auto g = generating_even_grad(eps, k, y);
  size_t n = y.size(), kk = static_cast<size_t>(k);
  std::vector<double> b(n);
  for (size_t j = 0; j < n; ++j) b[j] = A[j] + g[j];
  // solve J^T A' = b; J is the identity except column k
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i)
    if (i != kk) out[i] = b[i];
  double acc = b[kk];
  for (size_t i = 0; i < n; ++i)
    if (i != kk) acc -= J[i][kk] * out[i];
  out[kk] = acc / J[kk][kk];
  return out;
}

ExactnessReport exactness_check(const SuperSeed& s, int k, const DoublePoint& p, double h) {
  check_dims(s, p);
  if (!s.ex.is_mutable(k)) throw std::invalid_argument("cannot mutate at a frozen index");
  size_t kk = static_cast<size_t>(k), n = p.y.size();
  for (double v : p.y)
    if (!std::isfinite(v)) throw std::domain_error("non-finite point");
  if (std::abs(p.y[kk]) > 30) throw std::domain_error("point too close to the wall: 1+e^{-y_k} is ill-conditioned");
  IntMat eps = mutable_block(s.ex);
  auto Aprime = double_map_a(eps, k, p.y, p.A);

  auto ymap = [&](const std::vector<double>& y) { return double_map_y(eps, k, y); };
  auto Jfd = fd_jacobian(ymap, p.y, h);
  auto F = [&](const std::vector<double>& y) { return std::vector<double>{generating_even(eps, k, y)}; };
  auto dF = fd_jacobian(F, p.y, h);
  double cw = 0;
  for (size_t a = 0; a < s.r(); ++a) cw += p.theta_pi[a] * static_cast<double>(s.W[a][kk]);
  // log of the theta rescaling g_k written from X_k = e^{y_k}, against the odd term of F_k
  auto pull_lit = [](double t) { double x = std::exp(t); return std::log(x / (1 + 1 / x)); };
  auto pull_cons = [](double t) { double x = std::exp(t); return std::log(x / (1 + x)); };
  auto f_odd = [](double t) { return t - softlog(t); };
  double yk = p.y[kk];
  auto cd = [&](auto fn) { return (fn(yk + h) - fn(yk - h)) / (2 * h); };
  double dlit = cd(pull_lit), dcons = cd(pull_cons), dfodd = cd(f_odd);

  ExactnessReport rep;
  std::vector<double> r(n), rc(n);
  for (size_t j = 0; j < n; ++j) {
    double v = -p.A[j] - dF[0][j];
    for (size_t i = 0; i < n; ++i) v += Aprime[i] * Jfd[i][j];
    r[j] = v;
    rc[j] = v;
  }
  // pullback of pi dtheta minus the odd part of dF_k
  r[kk] += cw * (dlit - dfodd);
  rc[kk] += cw * (dcons - dfodd);
  rep.lambda_residual = max_abs(r);
  rep.odd_residual_consistent = max_abs(rc);

  // even two-form: Phi(y, A) = (y', A'), omega = sum dA ^ dy
  std::vector<double> z(2 * n);
  for (size_t i = 0; i < n; ++i) {
    z[i] = p.y[i];
    z[n + i] = p.A[i];
  }
  auto phi = [&](const std::vector<double>& v) {
    std::vector<double> y(v.begin(), v.begin() + static_cast<long>(n)), A(v.begin() + static_cast<long>(n), v.end());
    auto yp = double_map_y(eps, k, y);
    auto ap = double_map_a(eps, k, y, A);
    yp.insert(yp.end(), ap.begin(), ap.end());
    return yp;
  };
  auto K = fd_jacobian(phi, z, h);
  double om = 0;
  for (size_t a = 0; a < 2 * n; ++a)
    for (size_t b = 0; b < 2 * n; ++b) {
      // Omega(u, v) = sum_i u_{A_i} v_{y_i} - u_{y_i} v_{A_i}
      double v = 0;
      for (size_t i = 0; i < n; ++i) v += K[n + i][a] * K[i][b] - K[i][a] * K[n + i][b];
      double want = 0;
      if (a >= n && b + n == a) want = 1;
      if (b >= n && a + n == b) want = -1;
      om = std::max(om, std::abs(v - want));
    }
  rep.omega_residual = om;
  return rep;
}

double omega_a_invariance(const ASeed& s, int k, const std::vector<double>& a, double h) {
  for (double v : a)
    if (!(v > 0) || !std::isfinite(v)) throw std::domain_error("omega_A check needs a strictly positive point");
  size_t n = a.size();
  if (n != s.ex.n()) throw std::invalid_argument("point has wrong length");
  std::vector<double> la(n);
  for (size_t i = 0; i < n; ++i) la[i] = std::log(a[i]);
  auto f = [&](const std::vector<double>& l) {
    std::vector<double> av(n);
    for (size_t i = 0; i < n; ++i) av[i] = std::exp(l[i]);
    auto out = mutate_a_values(s.ex, av, k);
    for (auto& v : out) v = std::log(v);
    return out;
  };
  auto J = fd_jacobian(f, la, h);
  ExchangeData e2 = mutate_epsilon(s.ex, k);
  double res = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double v = 0;
      for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q)
          if (e2.eps[p][q] != 0) v += J[p][i] * static_cast<double>(e2.d[p] * e2.eps[p][q]) * J[q][j];
      res = std::max(res, std::abs(v - static_cast<double>(s.ex.d[i] * s.ex.eps[i][j])));
    }
  return res;
}

}  // namespace sfg
