#include <chrono>

#include "doctest.h"
#include "sfg/qtorus.h"
#include "sfg/superseed.h"
#include "qlimit.h"
#include "testutil.h"

using namespace sfg;
using namespace sfg::testing;

namespace {

const IntMat kA2 = {{0, 1}, {-1, 0}};

QSeries mono(const QTorus& t, std::vector<int> a, int qpow, long c = 1) {
  QSeries s;
  s.terms[QMono{std::move(a), {}}] = QPoly::monomial(qpow, c);
  return s;
}

}  // namespace

TEST_CASE("q polynomials") {
  QPoly a = QPoly::monomial(1) + QPoly::monomial(-2, 3);
  CHECK(a.str() == "3*q^-2+q");
  CHECK((a - a).is_zero());
  CHECK((a * QPoly::monomial(2)).terms().at(3) == 1);
  CHECK(a.at_one() == 4);
  int p = 0, s = 0;
  CHECK(QPoly::monomial(-3, -1).is_unit(&p, &s));
  CHECK(p == -3);
  CHECK(s == -1);
  CHECK_FALSE(a.is_unit());
}

TEST_CASE("normal form, literal relations") {
  auto e = make_exchange(kA2);
  auto t = make_qtorus(e, {{1, 0}}, QConvention::literal);
  auto th = normal_form(t, {{true, 0, 1}, {false, 0, 1}});
  CHECK(t.sub(th, t.mul(mono(t, {1, 0}, -1), t.theta(0))).terms.empty());
  auto xx = normal_form(t, {{false, 1, 1}, {false, 0, 1}});
  CHECK(t.sub(xx, mono(t, {1, 1}, -1)).terms.empty());
  CHECK(normal_form(t, {{true, 0, 1}, {true, 0, 1}}).terms.empty());
  CHECK(normal_form(t, {{true, 0, 2}}).terms.empty());
  CHECK_THROWS(normal_form(t, {{true, 0, -1}}));
}

TEST_CASE("normal form, consistent relations") {
  auto e = make_exchange(kA2);
  auto t = make_qtorus(e, {{1, 0}});
  auto th = normal_form(t, {{true, 0, 1}, {false, 0, 1}});
  CHECK(t.sub(th, t.mul(mono(t, {1, 0}, -2), t.theta(0))).terms.empty());
  auto xx = normal_form(t, {{false, 1, 1}, {false, 0, 1}});
  CHECK(t.sub(xx, mono(t, {1, 1}, 2)).terms.empty());
  // X X^{-1} = 1 regardless of order
  CHECK(t.sub(normal_form(t, {{false, 1, 2}, {false, 0, 1}, {false, 1, -2}, {false, 0, -1}}), t.one()).terms.size() == 1);
  CHECK(t.sub(normal_form(t, {{false, 0, 1}, {false, 0, -1}}), t.one()).terms.empty());
}

TEST_CASE("normal form is idempotent and linear") {
  auto e = make_exchange({{0, 2, -1}, {-2, 0, 1}, {1, -1, 0}});
  auto t = make_qtorus(e, {{1, -1, 0}, {0, 2, 1}});
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<QLetter> w;
    int len = static_cast<int>(rand_int(1, 6));
    for (int i = 0; i < len; ++i) {
      bool odd = rand_int(0, 3) == 0;
      w.push_back({odd, static_cast<int>(rand_int(0, odd ? 1 : 2)), odd ? 1 : static_cast<int>(rand_int(-2, 2))});
    }
    auto nf = normal_form(t, w);
    CHECK(nf.terms.size() <= 1);
    for (auto& [k, c] : nf.terms) {
      std::vector<QLetter> again;
      for (size_t i = 0; i < k.a.size(); ++i)
        if (k.a[i]) again.push_back({false, static_cast<int>(i), k.a[i]});
      for (int s : k.S) again.push_back({true, s, 1});
      auto nf2 = normal_form(t, again);
      REQUIRE(nf2.terms.size() == 1);
      CHECK(nf2.terms.begin()->second == QPoly::monomial(0));
    }
    // concatenation is multiplication
    std::vector<QLetter> w2 = {{false, 1, 1}, {true, 0, 1}};
    auto cat = w;
    cat.insert(cat.end(), w2.begin(), w2.end());
    CHECK(t.sub(normal_form(t, cat), t.mul(nf, normal_form(t, w2))).terms.empty());
  }
  CHECK_THROWS(make_qtorus(make_exchange({{0, 2}, {-1, 0}}, {1, 2}), {}));
}

TEST_CASE("series inverse") {
  auto t = make_qtorus(make_exchange(kA2), {});
  auto u = t.add(t.one(), t.scale(t.x(0), QPoly::monomial(1)));
  auto ui = t.inverse(u, 8);
  CHECK(ui.prec == 8);
  auto p = t.mul(u, ui, 8);
  CHECK(series_agree(t, p, t.one(), 8));
  // lowest term is X_1^{-1}
  auto v = t.add(t.one(), t.scale(t.x(0, -1), QPoly::monomial(-1)));
  auto vi = t.inverse(v, 8);
  CHECK(vi.min_degree() == 1);
  CHECK(series_agree(t, t.mul(vi, v, 8), t.one(), 7));
  CHECK(series_agree(t, t.mul(v, vi, 8), t.one(), 7));
  CHECK_THROWS_AS(t.inverse(t.add(t.x(0), t.x(1)), 8), std::domain_error);
  CHECK_THROWS_AS(t.inverse(t.scale(t.one(), QPoly::monomial(0, 2)), 8), std::domain_error);
}

TEST_CASE("phi adjoint") {
  auto t = make_qtorus(make_exchange(kA2), {}, QConvention::literal);
  auto Y = t.x(0), Z = t.x(1);
  // literal: X_1 X_2 = q X_2 X_1
  CHECK(t.sub(phi_adjoint(t, Z, t.one(), 0, 8), Z).terms.empty());
  auto one = phi_adjoint(t, Z, Y, 1, 8);
  auto want = t.mul(Z, t.inverse(t.add(t.one(), t.scale(Y, QPoly::monomial(1))), 8), 8);
  CHECK(series_agree(t, one, want, 8));
  CHECK_THROWS(phi_adjoint(t, Z, Y, 2, 8));
  // Y = X_2^2 against Z = X_1 gives c = -2
  auto Y2 = t.x(1, 2);
  auto m2 = phi_adjoint(t, Y, Y2, -2, 8);
  auto f1 = t.add(t.one(), t.scale(t.x(1, -2), QPoly::monomial(-1)));
  auto f2 = t.add(t.one(), t.scale(t.x(1, -2), QPoly::monomial(-3)));
  CHECK(t.sub(m2, t.mul(t.mul(Y, f1), f2)).terms.empty());
}

TEST_CASE("quantum mutation examples") {
  auto e = make_exchange(kA2);
  auto t = make_qtorus(e, {{1, 0}});
  auto s = q_mutate(initial_qstate(t, e, 10), 0);
  CHECK(s.X[1].exact());
  CHECK(t.sub(s.X[1], t.add(t.x(1), mono(t, {1, 1}, 1))).terms.empty());  // q^{-1} X_2 X_1 = q X_1 X_2
  CHECK(t.sub(s.X[0], t.x(0, -1)).terms.empty());
  // literal theta stays
  auto tl = make_qtorus(e, {{1, 0}}, QConvention::literal);
  auto sl = q_mutate(initial_qstate(tl, e, 10), 0);
  CHECK(t.sub(sl.theta[0], tl.theta(0)).terms.empty());
  CHECK(sl.W == IntMat{{-1, 1}});
  CHECK(sl.ex.eps == IntMat{{0, -1}, {1, 0}});
  // mutating twice at the same index is the identity
  IntMat e3 = {{0, 1, -1}, {-1, 0, 2}, {1, -2, 0}};
  for (int k = 0; k < 3; ++k) CHECK(sequence_check(8, e3, {}, QConvention::consistent, {k, k}, {0, 1, 2}).ok);
  CHECK(sequence_check(8, e3, {{1, 0, 2}}, QConvention::consistent, {1, 1}, {0, 1, 2}).ok);
  // with W_{a k} != 0 the column rule is not an involution, so theta and W do not come back
  auto r0 = sequence_check(8, e3, {{1, 0, 2}}, QConvention::consistent, {0, 0}, {0, 1, 2});
  CHECK_FALSE(r0.ok);
  CHECK(r0.notes.size() == 2);
  CHECK_THROWS(q_mutate(initial_qstate(make_qtorus(make_exchange({{0, 1}, {-1, 0}}, {}, 1), {}), make_exchange({{0, 1}, {-1, 0}}, {}, 1), 8), 1));
}

TEST_CASE("relations survive mutation") {
  for (int rep = 0; rep < 20; ++rep) {
    size_t n = static_cast<size_t>(rand_int(2, 3)), r = static_cast<size_t>(rand_int(0, 2));
    auto e = make_exchange(rand_skew(n, 2));
    auto W = rand_w(r, n);
    auto t = make_qtorus(e, W);
    int k = static_cast<int>(rand_int(0, static_cast<long>(n) - 1));
    int k2 = (k + 1) % static_cast<int>(n);
    for (auto seq : {std::vector<int>{k}, std::vector<int>{k, k2}}) {
      auto run = mutate_and_check(t, e, seq, 8);
      CHECK(run.certified);
      for (auto& rel : run.relations) {
        CAPTURE(rel.kind);
        CAPTURE(rel.i);
        CAPTURE(rel.j);
        CHECK(rel.ok);
      }
    }
  }
}

TEST_CASE("literal relations fail after mutation") {
  auto e = make_exchange({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  auto t = make_qtorus(e, {{1, 0, 0}}, QConvention::literal);
  auto run = mutate_and_check(t, e, {0}, 6);
  int xx = 0, mixed = 0;
  for (auto& rel : run.relations) {
    CHECK(rel.certified > 6);
    if (!rel.ok && rel.kind == "XX") ++xx;
    if (!rel.ok && rel.kind == "Xtheta") ++mixed;
  }
  CHECK(xx > 0);
  CHECK(mixed > 0);
}

TEST_CASE("classical limit") {
  for (int rep = 0; rep < 10; ++rep) {
    size_t n = static_cast<size_t>(rand_int(2, 3)), r = static_cast<size_t>(rand_int(0, 2));
    auto e = make_exchange(rand_skew(n, 2));
    auto W = rand_w(r, n);
    auto t = make_qtorus(e, W);
    auto qs = initial_qstate(t, e, 12);
    auto ss = initial_superseed(e, W);
    for (int step = 0; step < 2; ++step) {
      int k = static_cast<int>(rand_int(0, static_cast<long>(n) - 1));
      qs = q_mutate(qs, k);
      ss = mutate_super(ss, k, SuperMode::consistent);
      for (size_t i = 0; i < n; ++i) CHECK(matches_rational(qs.X[i], ss.x[i], ss.names));
      for (size_t a = 0; a < r; ++a) CHECK(matches_rational(qs.theta[a], ss.theta_prefactor[a], ss.names, {static_cast<int>(a)}));
    }
  }
}

TEST_CASE("pentagon") {
  auto t0 = std::chrono::steady_clock::now();
  auto r = pentagon_check(8);
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.ok);
  CHECK(r.certified > 8);
  CHECK(sec < 10);
  CHECK(pentagon_check(12).ok);
  // the even part closes up, the odd sector does not: W has period 5 without the swap
  auto odd = pentagon_check(8, kA2, {{1, 0}, {-2, 1}});
  CHECK_FALSE(odd.ok);
  for (auto& note : odd.notes) CHECK(note.find("X") == std::string::npos);
  auto bad = pentagon_check(8, {{0, 2}, {-2, 0}});
  CHECK_FALSE(bad.ok);
  auto lit = pentagon_check(8, kA2, {}, QConvention::literal);
  CHECK_FALSE(lit.ok);
  CHECK_THROWS(pentagon_check(3));
}
