#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "sfg/hexagon.h"
#include "testutil.h"

using namespace sfg;
using sfg::testing::rand_real;

namespace {

constexpr double kPi = std::numbers::pi;

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

struct LiRef {
  int n;
  cplx z, v;
};

// mpmath, 30 digits
const LiRef kLi[] = {
    {2, 0.3, 0.32612951007547606},
    {3, 0.3, 0.31240017789289261},
    {4, 0.3, 0.30599453530775615},
    {2, -0.7, -0.60515840233770525},
    {3, -0.7, -0.64866632128523546},
    {4, -0.7, -0.67287426899733099},
    {2, 0.9, 1.2997147230049588},
    {3, 0.9, 1.0496589501864399},
    {4, 0.9, 0.96400537120407806},
    {2, 1.5, 2.3743952702724802},
    {3, 1.5, 2.0608775073202809},
    {4, 1.5, 1.7347570807760621},
    {2, 3.0, 2.3201804233130984},
    {3, 3.0, 3.7421225942407316},
    {4, 3.0, 3.7485098910700996},
    {2, -5.0, -2.7492791260608083},
    {3, -5.0, -3.5375114376186075},
    {4, -5.0, -4.1064679790949703},
    {2, {0.4, 0.3}, {0.40777049929509659, 0.37450315822390492}},
    {3, {0.4, 0.3}, {0.40599530381987772, 0.33476183853388035}},
    {4, {0.4, 0.3}, {0.40356711655206365, 0.31655982324265329}},
    {2, {0.8, -1.1}, {0.38754615053097836, -1.3938321186578149}},
    {3, {0.8, -1.1}, {0.62806555640436033, -1.2896412604149551}},
    {4, {0.8, -1.1}, {0.72953278588654323, -1.2052375503089485}},
    {2, {-2.5, 1.7}, {-1.8156018768864688, 0.82467939736457081}},
    {3, {-2.5, 1.7}, {-2.1165676901646935, 1.1378204617313341}},
    {4, {-2.5, 1.7}, {-2.2950864637358199, 1.3623133582895299}},
    {2, {0.99, 0.05}, {1.5401170207974555, 0.18836530670926068}},
    {3, {0.99, 0.05}, {1.1827127477143331, 0.079309403883707583}},
    {4, {0.99, 0.05}, {1.0698225590648514, 0.059851700633540268}},
};

}  // namespace

TEST_CASE("polylog values") {
  CHECK(std::abs(polylog(2, 1.0) - kPi * kPi / 6) < 1e-12);
  CHECK(std::abs(polylog(4, 1.0) - std::pow(kPi, 4) / 90) < 1e-12);
  CHECK(std::abs(polylog(2, 0.5) - (kPi * kPi / 12 - std::log(2.0) * std::log(2.0) / 2)) < 1e-12);
  CHECK(std::abs(polylog(3, 1.0) - 1.2020569031595942) < 1e-12);
  CHECK(std::abs(polylog(2, -1.0) + kPi * kPi / 12) < 1e-12);
  for (auto& r : kLi) {
    INFO(r.n, " ", r.z);
    double tol = std::abs(r.z) <= 0.5 ? 1e-12 : 1e-10;
    if (r.z.imag() == 0)
      CHECK(std::abs(polylog(r.n, r.z.real()) - r.v.real()) <= tol * std::abs(r.v));
    else
      CHECK(close(polylog(r.n, r.z), r.v, tol));
  }
  CHECK(std::abs(polylog(1, 0.5) - std::log(2.0)) < 1e-15);
  CHECK_THROWS_AS(polylog(1, 1.0), std::domain_error);
  CHECK_THROWS_AS(polylog(1, 2.0), std::domain_error);
  CHECK_THROWS_AS(polylog(5, 0.5), std::invalid_argument);
}

TEST_CASE("polylog regions agree at the seams") {
  // derivative identity z Li_n'(z) = Li_{n-1}(z) across the series / log-series / inversion boundaries
  for (int trial = 0; trial < 200; ++trial) {
    double r = rand_real(0.3, 3), th = rand_real(-kPi, kPi);
    cplx z = std::polar(r, th);
    if (std::abs(th) < 0.05 && r > 0.9) continue;  // keep off the cut
    for (int n = 2; n <= 4; ++n) {
      double h = 1e-5;
      cplx d = (polylog(n, z * std::exp(cplx(h))) - polylog(n, z * std::exp(cplx(-h)))) / (2 * h);
      CHECK(close(d, polylog(n - 1, z), 1e-8));
    }
  }
}

TEST_CASE("ell_n") {
  CHECK(ell_n(4, 1.0) == doctest::Approx(0).epsilon(1e-15));
  CHECK(std::abs(ell_n(2, 2.0) + ell_n(2, 0.5)) < 1e-14);
  CHECK(ell1_diff(0.3, 0.3) == 0);
  CHECK(ell1_diff(cplx(1, 2), cplx(1, 2)) == cplx(0));
  const double ref[4][4] = {{-0.58157540490284039, -0.78635769291346296, 2.5053341493494504, -2.870362683453658},
                            {1.0256353323565696, -0.72375218865376329, 1.3629894401737303, -0.45040062402242589},
                            {1.3351549365596814, 0.61316252482281157, 1.2997180671312429, 0.32492160852073367},
                            {-0.40546510810816438, 0.8968284138472924, 2.3168077824229925, 2.3318890703316761}};
  const double xs[4] = {0.2, 0.7, 1.3, 4.0};
  for (int i = 0; i < 4; ++i)
    for (int n = 1; n <= 4; ++n) CHECK(ell_n(n, xs[i]) == doctest::Approx(ref[i][n - 1]).epsilon(1e-10));
  for (int trial = 0; trial < 100; ++trial) {
    double x = rand_real(0.01, 0.99);
    for (int n = 1; n <= 4; ++n) {
      double s = n % 2 ? 1 : -1;  // l_n(1/x) = -(-1)^n l_n(x)
      CHECK(ell_n(n, 1 / x) == doctest::Approx(s * ell_n(n, x)).epsilon(1e-10));
    }
    double y = rand_real(0.01, 0.99);
    CHECK(ell1_diff(x, y) == doctest::Approx(ell_n(1, x) - ell_n(1, y)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(ell1_diff(0.5, 2.0), std::domain_error);
  CHECK_THROWS_AS(ell1_diff(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(ell_n(2, -1.0), std::domain_error);
}

TEST_CASE("kinematics") {
  auto k = kinematics(1, 1, 1);
  CHECK(k.delta_kin == 0);
  CHECK(k.x_plus == cplx(1));
  CHECK(k.x_minus == cplx(1));
  for (auto& y : k.y) CHECK(y == cplx(1));

  auto k4 = kinematics(1, 1, 4);
  CHECK(k4.delta_kin == 9);
  CHECK(std::abs(k4.x_plus - 1.0) < 1e-15);
  CHECK(std::abs(k4.x_minus - 0.25) < 1e-15);
  CHECK(std::abs(k4.y[0] - 4.0) < 1e-14);

  auto kh = kinematics(0.5, 0.5, 0.5);
  CHECK(kh.delta_kin == doctest::Approx(-0.25));
  CHECK(kh.complex_branch);
  for (auto& y : kh.y) CHECK(std::abs(y) == doctest::Approx(1).epsilon(1e-14));
  CHECK(kh.x_plus.imag() > 0);

  for (int trial = 0; trial < 100; ++trial) {
    double u = rand_real(0.05, 3), v = rand_real(0.05, 3), w = rand_real(0.05, 3);
    auto q = kinematics(u, v, w);
    CHECK(q.delta_kin == doctest::Approx((1 - u - v - w) * (1 - u - v - w) - 4 * u * v * w).epsilon(1e-14));
    // x^+ x^- = 1/(uvw) and both roots solve uvw x^2 - (u+v+w-1) x + 1 = 0
    CHECK(close(q.x_plus * q.x_minus, 1 / (u * v * w), 1e-12));
    for (cplx x : {q.x_plus, q.x_minus}) CHECK(std::abs(u * v * w * x * x - (u + v + w - 1) * x + 1.0) < 1e-10 * std::max(1.0, std::abs(x * x)));
  }
  CHECK_THROWS(kinematics(0, 1, 1));
}

TEST_CASE("hexagon period at the symmetric point") {
  auto h = hexagon_period(1, 1, 1);
  CHECK(h.coincident);
  CHECK(std::abs(h.V) < 1e-15);
  CHECK(std::abs(h.total - std::pow(kPi, 4) / 72) < 1e-9);
  CHECK(h.J == cplx(0));
}

TEST_CASE("hexagon period against mpmath") {
  struct Ref {
    double u, v, w;
    double V;
    cplx Vt, J;
  };
  const Ref refs[] = {
      {0.1, 0.1, 0.1, -7.4703674619790561, 2456.9173875021087, 9.0833216651914128},
      {0.05, 0.2, 0.1, -7.6471083261893876, 2329.7418205312859, 8.8460149088974764},
      {0.3, 0.4, 0.5, 0.60614442066750098, {3.6742447687021529, -2.8579625358304351}, {0, -4.0089800356993125}},
      {0.1, 0.2, 0.9, -0.057023778864065826, {-8.8717858242795712, -6.5844030329737229}, {0, -2.4202152366340377}},
  };
  for (auto& r : refs) {
    auto h = hexagon_period(r.u, r.v, r.w);
    INFO(r.u, " ", r.v, " ", r.w);
    CHECK(close(h.V, r.V, 1e-10));
    CHECK(close(h.V_tilde, r.Vt, 1e-10));
    CHECK(close(h.J, r.J, 1e-10));
    CHECK(close(h.total, r.V + r.Vt, 1e-10));
  }
  // real branch with x^+ and x^- on opposite sides of 1: l_1 difference is outside the supported domain
  CHECK_THROWS_AS(hexagon_period(2, 3, 0.5), std::domain_error);
  // (1,1,4): x_1^+ = 1 sits on the l_1 singularity for every ordering
  CHECK_THROWS_AS(hexagon_period(1, 1, 4), std::domain_error);
  CHECK_THROWS_AS(hexagon_period(4, 1, 1), std::domain_error);
  CHECK_THROWS_AS(hexagon_period(1, 4, 1), std::domain_error);
}

TEST_CASE("hexagon period is dihedrally invariant") {
  for (int trial = 0; trial < 60; ++trial) {
    double u = rand_real(0.05, 1.5), v = rand_real(0.05, 1.5), w = rand_real(0.05, 1.5);
    HexPeriod h;
    try {
      h = hexagon_period(u, v, w);
    } catch (const std::domain_error&) {
      continue;
    }
    for (auto p : {std::array<double, 3>{v, w, u}, {w, u, v}, {w, v, u}, {u, w, v}, {v, u, w}}) {
      auto g = hexagon_period(p[0], p[1], p[2]);
      CHECK(std::abs(g.total - h.total) <= 1e-12 * std::max(1.0, std::abs(h.total)));
    }
  }
}

TEST_CASE("explicit y and flag charts") {
  // y from the kinematics on the real branch reproduces the (u,v,w) evaluation
  for (auto p : {std::array<double, 3>{0.1, 0.1, 0.1}, {0.05, 0.2, 0.1}, {0.02, 0.3, 0.15}}) {
    auto k = kinematics(p[0], p[1], p[2]);
    REQUIRE_FALSE(k.complex_branch);
    std::array<double, 3> y{k.y[0].real(), k.y[1].real(), k.y[2].real()};
    auto a = hexagon_period(p[0], p[1], p[2]);
    auto b = hexagon_period(p, y);
    CHECK(close(b.total, a.total, 1e-11));
    CHECK(close(b.J, a.J, 1e-11));
    auto c = hexagon_period(chart_from_uy(p, y));
    CHECK(close(c.total, a.total, 1e-11));
  }
  // all y = 1: V_tilde is 2 sum l_4(x_j) + pi^4/72 with x_j = +-u_j sqrt(uvw)
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 3> u{rand_real(0.1, 0.9), rand_real(0.1, 0.9), rand_real(0.1, 0.9)};
    auto h = hexagon_period(u, {1, 1, 1});
    CHECK(h.coincident);
    double p = std::sqrt(u[0] * u[1] * u[2]), direct = std::pow(kPi, 4) / 72;
    double sg = u[0] + u[1] + u[2] < 1 ? -1 : 1;
    for (double x : u) {
      double a = sg * x * p;
      direct += polylog(4, a) - polylog(4, 1 / a);
    }
    CHECK(h.V_tilde.real() == doctest::Approx(direct).epsilon(1e-12));
    CHECK(h.J == cplx(0));
  }
  // chart round trip and cyclic relabeling
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 3> u{rand_real(0.05, 0.95), rand_real(0.05, 0.95), rand_real(0.05, 0.95)};
    std::array<double, 3> y{rand_real(0.2, 0.9), rand_real(0.2, 0.9), rand_real(0.2, 0.9)};
    auto c = chart_from_uy(u, y);
    auto back = chart_u(c);
    for (int j = 0; j < 3; ++j) CHECK(back[j] == doctest::Approx(u[j]).epsilon(1e-15));
    HexPeriod h;
    try {
      h = hexagon_period(c);
    } catch (const std::domain_error&) {
      continue;
    }
    for (int s = 1; s < 3; ++s) CHECK(std::abs(hexagon_period(shift_chart(c, s)).total - h.total) <= 1e-12 * std::max(1.0, std::abs(h.total)));
  }
  CHECK_THROWS(chart_from_uy({1.2, 0.5, 0.5}, {1, 1, 1}));
}

TEST_CASE("the symmetric point is not approached continuously") {
  // along u = v = w -> 1 the l_1 differences tend to +-2i (not 0) and the total stays near -1.272
  auto below = hexagon_period(1 - 1e-6, 1 - 1e-6, 1 - 1e-6);
  auto above = hexagon_period(1 + 1e-6, 1 + 1e-6, 1 + 1e-6);
  CHECK(below.J.imag() == doctest::Approx(-2.00084).epsilon(1e-4));
  CHECK(above.J.imag() == doctest::Approx(2.00084).epsilon(1e-4));
  CHECK(below.total.real() == doctest::Approx(-1.27195663895).epsilon(1e-5));
  CHECK(above.total.real() == doctest::Approx(-1.27192115703).epsilon(1e-5));
  double gap = std::abs(hexagon_period(1 - 1e-4, 1 - 1e-4, 1 - 1e-4).total.real() - std::pow(kPi, 4) / 72);
  CHECK(gap > 2.5);
}

TEST_CASE("G-functions") {
  auto g2 = g_function({2.0});
  CHECK(std::abs(g2.value + std::log(2.0)) < 1e-10);
  CHECK(std::abs(g_function({-1.0}).value - std::log(2.0)) < 1e-10);
  auto g23 = g_function({2.0, 3.0}), g32 = g_function({3.0, 2.0});
  CHECK(std::abs(g23.value - 0.14722067695924126) < 1e-10);
  CHECK(std::abs(g32.value - 0.1338263195413663) < 1e-10);
  CHECK(std::abs(g2.value * g_function({3.0}).value - g23.value - g32.value) < 1e-9);
  CHECK(close(g_function({cplx(-1, 2), cplx(0.5, -0.5)}).value, {0.1801687502099773, -0.26028630470949869}, 1e-10));

  // equal letters: log(1 - 1/a)^m / m!
  for (int m = 1; m <= 6; ++m) {
    cplx a(-0.7, 0.9);
    std::vector<cplx> L(static_cast<size_t>(m), a);
    double f = std::tgamma(m + 1);
    CHECK(close(g_function(L).value, std::pow(std::log(1.0 - 1.0 / a), m) / f, m <= 3 ? 1e-10 : 1e-8));
  }

  // depth-2 shuffle on random letters off [0,1]
  for (int trial = 0; trial < 30; ++trial) {
    cplx a(rand_real(-3, 3), rand_real(0.3, 2)), b(rand_real(-3, 3), rand_real(-2, -0.3));
    if (trial % 3 == 0) b = cplx(rand_real(1.5, 4), 0);
    auto ga = g_function({a}), gb = g_function({b});
    auto gab = g_function({a, b}), gba = g_function({b, a});
    CHECK(std::abs(ga.value * gb.value - gab.value - gba.value) < 1e-9);
  }
  // depth 3 shuffle G(a)G(b,c) = G(a,b,c) + G(b,a,c) + G(b,c,a)
  cplx a(-1, 1), b(2, 0.5), c(0.5, -1.5);
  auto lhs = g_function({a}).value * g_function({b, c}).value;
  auto rhs = g_function({a, b, c}).value + g_function({b, a, c}).value + g_function({b, c, a}).value;
  CHECK(std::abs(lhs - rhs) < 1e-9);

  // depth 6 within time
  auto t0 = std::chrono::steady_clock::now();
  auto g6 = g_function({cplx(2, 1), cplx(-1, 1), cplx(3, 0), cplx(-2, -1), cplx(0.5, 1), cplx(1.5, -0.5)});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(g6.error < 1e-8);
  CHECK(secs < 5);

  CHECK_THROWS_AS(g_function({0.5}), std::domain_error);
  CHECK_THROWS_AS(g_function({1.0}), std::domain_error);
  CHECK_THROWS_AS(g_function({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(g_function(std::vector<cplx>(7, 2.0)), std::invalid_argument);
  CHECK(g_function({}).value == cplx(1));
}

TEST_CASE("twistor cross-ratios rotate under cyclic relabeling") {
  for (int trial = 0; trial < 50; ++trial) {
    // points on the moment curve with increasing parameters: a positive configuration
    std::array<double, 6> t{};
    double acc = 0;
    for (auto& x : t) x = (acc += rand_real(0.2, 1.5));
    std::array<std::array<double, 4>, 6> Z{};
    for (int i = 0; i < 6; ++i) Z[i] = {1, t[i], t[i] * t[i], t[i] * t[i] * t[i]};
    auto uvw = uvw_from_twistors(Z);
    for (double x : uvw) CHECK(x > 0);
    // Z_i -> Z_{i+1} with the twisted boundary condition Z_7 = -Z_1
    std::array<std::array<double, 4>, 6> S{};
    for (int i = 0; i < 5; ++i) S[i] = Z[i + 1];
    for (int j = 0; j < 4; ++j) S[5][j] = -Z[0][j];
    auto r = uvw_from_twistors(S);
    CHECK(r[0] == doctest::Approx(uvw[1]).epsilon(1e-10));
    CHECK(r[1] == doctest::Approx(uvw[2]).epsilon(1e-10));
    CHECK(r[2] == doctest::Approx(uvw[0]).epsilon(1e-10));
  }
}
