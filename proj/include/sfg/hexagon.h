#pragma once

#include <array>
#include <complex>
#include <vector>

namespace sfg {

using cplx = std::complex<double>;

// Li_n for n = 1..4 on the principal branch.
cplx polylog(int n, cplx z);
// Real Li_n; for x > 1 the real part (n >= 2).  n = 1 needs x < 1.
double polylog(int n, double x);

// (Li_n(x) - (-1)^n Li_n(1/x)) / 2, real parts for positive real x.
double ell_n(int n, double x);
cplx ell_n(int n, cplx z);
// l_1(a) - l_1(b) with the divergent pieces cancelled; 0 when a == b.
cplx ell1_diff(cplx a, cplx b);
double ell1_diff(double a, double b);

struct HexKinematics {
  double u = 0, v = 0, w = 0;
  double delta_kin = 0;
  bool complex_branch = false;
  cplx x_plus, x_minus;
  std::array<cplx, 3> xi_plus, xi_minus;
  std::array<cplx, 3> y;
};
HexKinematics kinematics(double u, double v, double w);

// three odd and three even minor ratios
struct FlagChart {
  std::array<double, 3> f_o{};
  std::array<double, 3> f_e{};
};
FlagChart chart_from_uy(const std::array<double, 3>& u, const std::array<double, 3>& y);
std::array<double, 3> chart_u(const FlagChart& c);
// cyclic relabeling of the chart anchor
FlagChart shift_chart(const FlagChart& c, int by);

struct HexPeriod {
  cplx V, V_tilde, total, J;
  double delta_kin = 0;
  bool complex_branch = false;
  bool coincident = false;  // Delta_kin = 0: J = 0 and only the m = 0 term of L4
};
cplx L4(cplx xp, cplx xm);
HexPeriod hexagon_period(double u, double v, double w);
// x^+ x^- = 1/(uvw) and x^+/x^- = y_j fix the pair used for the j-th term.
HexPeriod hexagon_period(const std::array<double, 3>& u, const std::array<double, 3>& y);
HexPeriod hexagon_period(const FlagChart& c);

// G(a_1, ..., a_m; 1) = int_{0<t_m<...<t_1<1} prod dt_i/(t_i - a_i)
struct GResult {
  cplx value;
  double error = 0;  // difference between the last two resolutions
  int nodes = 0;
};
GResult g_function(const std::vector<cplx>& letters, double tol = 1e-12);

// (u, v, w) from six momentum twistors using
//   u = <6123><3456>/(<6134><2356>), v = <1234><4561>/(<1245><3461>), w = <2345><5612>/(<2356><4512>).
std::array<double, 3> uvw_from_twistors(const std::array<std::array<double, 4>, 6>& Z);

}  // namespace sfg
