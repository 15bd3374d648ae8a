#include "sfg/hexagon.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfg {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

double zeta_pos(int s) {
  switch (s) {
    case 2: return kPi * kPi / 6;
    case 3: return 1.2020569031595942853997;
    case 4: return std::pow(kPi, 4) / 90;
    case 6: return std::pow(kPi, 6) / 945;
    case 8: return std::pow(kPi, 8) / 9450;
    case 10: return std::pow(kPi, 10) / 93555;
    case 12: return 691 * std::pow(kPi, 12) / 638512875;
    case 14: return 2 * std::pow(kPi, 14) / 18243225;
    default: break;
  }
  double r = 0;
  for (int m = 40; m >= 1; --m) r += std::pow(m, -s);
  return r;
}

cplx bernoulli_poly(int n, cplx x) {
  switch (n) {
    case 1: return x - 0.5;
    case 2: return x * x - x + 1.0 / 6;
    case 3: return x * x * x - 1.5 * x * x + 0.5 * x;
    case 4: return x * x * x * x - 2.0 * x * x * x + x * x - 1.0 / 30;
    default: throw std::invalid_argument("Bernoulli polynomial degree");
  }
}

cplx li_series(int n, cplx z) {
  cplx sum = 0, zk = z;
  for (int k = 1; k < 400; ++k) {
    cplx t = zk / std::pow(static_cast<double>(k), n);
    sum += t;
    if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    zk *= z;
  }
  return sum;
}

// expansion in w = log z, |w| < 2 pi
cplx li_logseries(int n, cplx z) {
  cplx w = std::log(z);
  if (w == cplx(0)) return zeta_pos(n);
  cplx sum = 0;
  cplx wk = 1;
  double fact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      wk *= w;
      fact *= k;
    }
    if (k == n - 1) {
      double H = 0;
      for (int i = 1; i <= n - 1; ++i) H += 1.0 / i;
      sum += wk / fact * (H - std::log(-w));
    } else if (k < n - 1) {
      sum += zeta_pos(n - k) * wk / fact;
    } else {
      sum += -0.5 * wk / fact;  // zeta(0)
    }
  }
  // k = n + 2j - 1 with zeta(1 - 2j) = (-1)^j 2 (2j-1)! zeta(2j) / (2 pi)^{2j}
  for (int j = 1; j < 200; ++j) {
    int k = n + 2 * j - 1;
    double ratio = 1;  // (2j-1)!/k!
    for (int i = 2 * j; i <= k; ++i) ratio /= i;
    double c = (j % 2 ? -2.0 : 2.0) * ratio * zeta_pos(2 * j) / std::pow(2 * kPi, 2 * j);
    cplx t = c * std::pow(w, k);
    sum += t;
    if (std::abs(t) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

bool is_positive_real(cplx z) { return z.imag() == 0 && z.real() > 0; }

}  // namespace

cplx polylog(int n, cplx z) {
  if (n < 1 || n > 4) throw std::invalid_argument("polylog order must be 1..4");
  if (n == 1) {
    if (z == cplx(1)) throw std::domain_error("Li_1 diverges at 1");
    return -std::log(1.0 - z);
  }
  if (z == cplx(0)) return 0;
  double r = std::abs(z);
  if (r <= 0.5) return li_series(n, z);
  if (r >= 2) {
    cplx inv = li_series(n, 1.0 / z);
    double nf = n == 2 ? 2 : n == 3 ? 6 : 24;
    cplx b = bernoulli_poly(n, 0.5 + std::log(-z) / (2 * kPi * kI));
    return -(n % 2 ? -1.0 : 1.0) * inv - std::pow(2 * kPi * kI, n) / nf * b;
  }
  return li_logseries(n, z);
}

double polylog(int n, double x) {
  if (n == 1) {
    if (x >= 1) throw std::domain_error("Li_1 needs x < 1; use ell1_diff for paired differences");
    return -std::log1p(-x);
  }
  return polylog(n, cplx(x, 0)).real();
}

double ell_n(int n, double x) {
  if (!(x > 0)) throw std::domain_error("ell_n needs x > 0");
  if (n == 1) {
    if (x == 1) throw std::domain_error("ell_1 diverges at 1");
    return 0.5 * (-std::log(std::abs(1 - x)) - std::log(std::abs(1 - 1 / x)));
  }
  double s = n % 2 ? -1 : 1;
  return 0.5 * (polylog(n, cplx(x, 0)).real() - s * polylog(n, cplx(1 / x, 0)).real());
}

cplx ell_n(int n, cplx z) {
  if (is_positive_real(z)) return ell_n(n, z.real());
  if (z == cplx(0)) throw std::domain_error("ell_n at 0");
  double s = n % 2 ? -1 : 1;
  return 0.5 * (polylog(n, z) - s * polylog(n, 1.0 / z));
}

cplx ell1_diff(cplx a, cplx b) {
  if (a == b) return 0;
  if (a == cplx(0) || b == cplx(0) || a == cplx(1) || b == cplx(1)) throw std::domain_error("ell1_diff at a singular point");
  if (a.imag() == 0 && b.imag() == 0) return ell1_diff(a.real(), b.real());
  return 0.5 * (std::log((1.0 - b) / (1.0 - a)) + std::log((1.0 - 1.0 / b) / (1.0 - 1.0 / a)));
}

double ell1_diff(double a, double b) {
  if (a == b) return 0;
  if (a == 0 || b == 0 || a == 1 || b == 1) throw std::domain_error("ell1_diff at a singular point");
  double r1 = (1 - b) / (1 - a), r2 = (1 - 1 / b) / (1 - 1 / a);
  if (!(r1 > 0) || !(r2 > 0)) throw std::domain_error("ell1_diff arguments straddle a singularity");
  return 0.5 * (std::log(r1) + std::log(r2));
}

HexKinematics kinematics(double u, double v, double w) {
  if (!(u > 0) || !(v > 0) || !(w > 0)) throw std::domain_error("kinematics needs u, v, w > 0");
  HexKinematics k;
  k.u = u, k.v = v, k.w = w;
  double s = u + v + w - 1, p = u * v * w;
  // the discriminant cancels badly near u = v = w = 1
  long double sl = static_cast<long double>(u) + v + w - 1;
  long double dl = sl * sl - 4.0L * u * v * w;
  k.delta_kin = static_cast<double>(dl);
  cplx sq;
  if (dl >= 0) {
    sq = static_cast<double>(std::sqrt(dl));
  } else {
    k.complex_branch = true;
    sq = cplx(0, static_cast<double>(std::sqrt(-dl)));
  }
  k.x_plus = (s + sq) / (2 * p);
  k.x_minus = (s - sq) / (2 * p);
  std::array<double, 3> us{u, v, w};
  for (int j = 0; j < 3; ++j) {
    k.xi_plus[j] = us[j] / k.x_plus;
    k.xi_minus[j] = us[j] / k.x_minus;
    k.y[j] = k.xi_minus[j] / k.xi_plus[j];
  }
  return k;
}

FlagChart chart_from_uy(const std::array<double, 3>& u, const std::array<double, 3>& y) {
  FlagChart c;
  for (int j = 0; j < 3; ++j) {
    if (!(u[j] > 0 && u[j] < 1)) throw std::domain_error("chart needs 0 < u < 1");
    if (!(y[j] > 0)) throw std::domain_error("chart needs y > 0");
    c.f_e[j] = u[j] / (1 - u[j]);
    c.f_o[j] = y[j];
  }
  return c;
}

std::array<double, 3> chart_u(const FlagChart& c) {
  std::array<double, 3> u{};
  for (int j = 0; j < 3; ++j) {
    if (!(c.f_e[j] > 0)) throw std::domain_error("chart ratios must be positive");
    u[j] = c.f_e[j] / (1 + c.f_e[j]);
  }
  return u;
}

FlagChart shift_chart(const FlagChart& c, int by) {
  FlagChart r;
  int s = ((by % 3) + 3) % 3;
  for (int j = 0; j < 3; ++j) {
    r.f_o[j] = c.f_o[(j + s) % 3];
    r.f_e[j] = c.f_e[(j + s) % 3];
  }
  return r;
}

cplx L4(cplx xp, cplx xm) {
  static const double dfact[4] = {1, 2, 8, 48};
  cplx L = std::log(xp / xm);
  if (xp.imag() == 0 && xm.imag() == 0) L = std::log(xp.real() / xm.real());
  cplx s = std::pow(L, 4) / 8.0;
  for (int m = 0; m < 4; ++m) {
    if (m >= 1 && L == cplx(0)) continue;
    s += (m % 2 ? -1.0 : 1.0) / dfact[m] * std::pow(L, m) * (ell_n(4 - m, xp) + ell_n(4 - m, xm));
  }
  return s;
}

namespace {

HexPeriod assemble(const std::array<double, 3>& u, const std::array<cplx, 3>& xp, const std::array<cplx, 3>& xm,
                   bool coincident) {
  HexPeriod h;
  h.coincident = coincident;
  double l4 = 0, l2 = 0;
  for (double x : u) {
    l4 += polylog(4, 1 - 1 / x);
    l2 += polylog(2, 1 - 1 / x);
  }
  h.V = -0.5 * l4 - l2 * l2 / 8;
  h.J = 0;
  if (!coincident)
    for (int j = 0; j < 3; ++j) h.J += ell1_diff(xp[j], xm[j]);
  cplx vt = 0;
  for (int j = 0; j < 3; ++j) vt += L4(xp[j], xm[j]);
  vt += std::pow(h.J, 4) / 24.0 + kPi * kPi / 12 * h.J * h.J + std::pow(kPi, 4) / 72;
  h.V_tilde = vt;
  h.total = h.V + h.V_tilde;
  return h;
}

}  // namespace

HexPeriod hexagon_period(double u, double v, double w) {
  auto k = kinematics(u, v, w);
  auto h = assemble({u, v, w}, k.xi_plus, k.xi_minus, k.delta_kin == 0);
  h.delta_kin = k.delta_kin;
  h.complex_branch = k.complex_branch;
  return h;
}

HexPeriod hexagon_period(const std::array<double, 3>& u, const std::array<double, 3>& y) {
  double p = u[0] * u[1] * u[2];
  if (!(u[0] > 0 && u[1] > 0 && u[2] > 0)) throw std::domain_error("u must be positive");
  std::array<cplx, 3> xp, xm;
  bool coincident = true;
  for (int j = 0; j < 3; ++j) {
    if (!(y[j] > 0)) throw std::domain_error("y must be positive");
    // both roots carry the sign of u + v + w - 1
    double a = std::copysign(std::sqrt(y[j] / p), u[0] + u[1] + u[2] - 1), b = a / y[j];
    xp[j] = u[j] / a;
    xm[j] = u[j] / b;
    if (y[j] != 1) coincident = false;
  }
  auto h = assemble(u, xp, xm, coincident);
  h.delta_kin = (1 - u[0] - u[1] - u[2]) * (1 - u[0] - u[1] - u[2]) - 4 * p;
  return h;
}

HexPeriod hexagon_period(const FlagChart& c) { return hexagon_period(chart_u(c), c.f_o); }

namespace {

// f_i(t) = int_0^t f_{i+1}(s)/(s - a_i) ds on N+1 Chebyshev-Lobatto points
cplx g_cheb(const std::vector<cplx>& a, int N) {
  std::vector<double> cs(2 * static_cast<size_t>(N));
  for (int i = 0; i < 2 * N; ++i) cs[static_cast<size_t>(i)] = std::cos(kPi * i / N);
  auto cosjk = [&](long j, long k) { return cs[static_cast<size_t>((j * k) % (2 * N))]; };
  std::vector<double> t(static_cast<size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) t[static_cast<size_t>(j)] = (1 + cs[static_cast<size_t>(j)]) / 2;
  std::vector<cplx> f(static_cast<size_t>(N) + 1, 1.0), g(f.size()), coef(static_cast<size_t>(N) + 1),
      B(static_cast<size_t>(N) + 2);
  for (size_t lvl = a.size(); lvl-- > 0;) {
    for (int j = 0; j <= N; ++j) g[static_cast<size_t>(j)] = f[static_cast<size_t>(j)] / (t[static_cast<size_t>(j)] - a[lvl]);
    for (int k = 0; k <= N; ++k) {
      cplx s = 0;
      for (int j = 0; j <= N; ++j) {
        double wgt = (j == 0 || j == N) ? 0.5 : 1;
        s += wgt * g[static_cast<size_t>(j)] * cosjk(j, k);
      }
      s *= 2.0 / N;
      if (k == 0 || k == N) s *= 0.5;
      coef[static_cast<size_t>(k)] = s;
    }
    std::fill(B.begin(), B.end(), cplx(0));
    B[1] += coef[0];
    if (N >= 1) B[2] += coef[1] / 4.0;
    for (int k = 2; k <= N; ++k) {
      B[static_cast<size_t>(k) + 1] += coef[static_cast<size_t>(k)] / (2.0 * (k + 1));
      B[static_cast<size_t>(k) - 1] -= coef[static_cast<size_t>(k)] / (2.0 * (k - 1));
    }
    cplx at_m1 = 0;
    for (int k = 0; k <= N + 1; ++k) at_m1 += (k % 2 ? -1.0 : 1.0) * B[static_cast<size_t>(k)];
    for (int j = 0; j <= N; ++j) {
      cplx s = 0;
      for (int k = 0; k <= N + 1; ++k) s += B[static_cast<size_t>(k)] * cosjk(j, k);
      f[static_cast<size_t>(j)] = 0.5 * (s - at_m1);
    }
  }
  return f[0];
}

}  // namespace

GResult g_function(const std::vector<cplx>& letters, double tol) {
  if (letters.size() > 6) throw std::invalid_argument("G-functions are supported up to depth 6");
  for (auto& a : letters) {
    if (a == cplx(0)) throw std::invalid_argument("G letters must be nonzero");
    if (a.imag() == 0 && a.real() >= 0 && a.real() <= 1) throw std::domain_error("G letter lies on the integration path");
  }
  GResult r;
  if (letters.empty()) {
    r.value = 1;
    return r;
  }
  cplx prev = g_cheb(letters, 16);
  for (int N = 32; N <= 2048; N *= 2) {
    cplx v = g_cheb(letters, N);
    r.value = v;
    r.error = std::abs(v - prev);
    r.nodes = N + 1;
    if (r.error < tol * std::max(1.0, std::abs(v))) break;
    prev = v;
  }
  return r;
}

std::array<double, 3> uvw_from_twistors(const std::array<std::array<double, 4>, 6>& Z) {
  auto br = [&](int a, int b, int c, int d) {
    double m[4][4];
    int idx[4] = {a - 1, b - 1, c - 1, d - 1};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] = Z[static_cast<size_t>(idx[i])][static_cast<size_t>(j)];
    double det = 1;
    for (int c0 = 0; c0 < 4; ++c0) {
      int p = c0;
      for (int r = c0 + 1; r < 4; ++r)
        if (std::abs(m[r][c0]) > std::abs(m[p][c0])) p = r;
      if (m[p][c0] == 0) return 0.0;
      if (p != c0) {
        for (int j = 0; j < 4; ++j) std::swap(m[p][j], m[c0][j]);
        det = -det;
      }
      det *= m[c0][c0];
      for (int r = c0 + 1; r < 4; ++r) {
        double f = m[r][c0] / m[c0][c0];
        for (int j = c0; j < 4; ++j) m[r][j] -= f * m[c0][j];
      }
    }
    return det;
  };
  double den_u = br(6, 1, 3, 4) * br(2, 3, 5, 6), den_v = br(1, 2, 4, 5) * br(3, 4, 6, 1),
         den_w = br(2, 3, 5, 6) * br(4, 5, 1, 2);
  if (den_u == 0 || den_v == 0 || den_w == 0) throw std::domain_error("degenerate twistor configuration");
  return {br(6, 1, 2, 3) * br(3, 4, 5, 6) / den_u, br(1, 2, 3, 4) * br(4, 5, 6, 1) / den_v,
          br(2, 3, 4, 5) * br(5, 6, 1, 2) / den_w};
}

}  // namespace sfg
