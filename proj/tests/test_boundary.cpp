#include "doctest.h"
#include "sfg/boundary.h"
#include "testutil.h"

using namespace sfg;
using namespace sfg::testing;

namespace {

SFRat g() { return SFRat::var("g"); }

BoundaryMatrix simple() { return BoundaryMatrix::from_rows({{1L, 0L, 1L}, {0L, 1L, 1L}}); }

BoundaryMatrix rand_rational(size_t r, size_t f) {
  Mat<SFRat> m(r, std::vector<SFRat>(f));
  for (auto& row : m)
    for (auto& x : row) {
      Rat q(rand_int(-5, 5), rand_int(1, 4));
      q.canonicalize();
      x = SFRat(q);
    }
  return BoundaryMatrix::from_rows(m);
}

// a nonvanishing r-subset for the anchor
std::vector<int> some_anchor(const BoundaryMatrix& c) {
  for (auto& O : subsets(static_cast<int>(c.f()), static_cast<int>(c.r())))
    if (!minor(c, O).is_zero()) return O;
  return {};
}

}  // namespace

TEST_CASE("transport") {
  auto c0 = BoundaryMatrix::normalized(2, 3);
  auto c = transport(c0, {{0, 2, g()}});
  CHECK(c.entries[0][2] == g());
  CHECK(c.entries[1][2].is_zero());
  CHECK(c.entries[0][0] == SFRat(1L));
  CHECK(c.gauge_log.size() == 1);
  CHECK(transport(c0, {}).entries == c0.entries);
  CHECK_THROWS(transport(c0, {{0, 0, g()}}));
  CHECK_THROWS_AS(transport(c0, {{0, 3, g()}}), std::out_of_range);
  // disjoint columns commute
  auto c4 = BoundaryMatrix::normalized(2, 4);
  SFRat h = SFRat::var("h");
  CHECK(transport(c4, {{0, 2, g()}, {1, 3, h}}).entries == transport(c4, {{1, 3, h}, {0, 2, g()}}).entries);
  // overlapping ones generally do not
  CHECK_FALSE(transport(c4, {{0, 2, g()}, {2, 3, h}}).entries == transport(c4, {{2, 3, h}, {0, 2, g()}}).entries);
}

TEST_CASE("minors") {
  auto c = transport(BoundaryMatrix::normalized(2, 3), {{0, 2, g()}});
  CHECK(minor(c, {0, 1}) == SFRat(1L));
  CHECK(minor(c, {1, 2}) == -g());
  auto s = simple();
  CHECK(minor(s, {0, 1}) == SFRat(1L));
  CHECK(minor(s, {0, 2}) == SFRat(1L));
  CHECK(minor(s, {1, 2}) == SFRat(-1L));
  CHECK_THROWS(minor(s, {0}));
}

TEST_CASE("projector") {
  auto c = transport(BoundaryMatrix::normalized(2, 4), {{0, 2, g()}, {1, 3, SFRat::var("h")}});
  CHECK(projector(c, {0, 1}) == c.entries);
  auto s = simple();
  auto M = projector(s, {0, 1});
  CHECK(det_generic(columns(M, {0, 2})) == SFRat(1L));
  CHECK_THROWS_AS(projector(BoundaryMatrix::from_rows({{1L, 2L, 0L}, {2L, 4L, 1L}}), {0, 1}), std::domain_error);
  for (int t = 0; t < 10; ++t) {
    auto C = rand_rational(3, 6);
    auto O = some_anchor(C);
    REQUIRE(!O.empty());
    auto P = projector(C, O);
    SFRat dO = minor(C, O);
    for (size_t a = 0; a < 3; ++a)
      for (size_t b = 0; b < 3; ++b) CHECK(P[a][static_cast<size_t>(O[b])] == SFRat(a == b ? 1L : 0L));
    for (auto& U : subsets(6, 3)) CHECK(det_generic(columns(P, U)) * dO == minor(C, U));
  }
}

TEST_CASE("BCFW identity") {
  auto s = simple();
  auto r = bcfw_check(s, {0, 1}, {0, 1, 2});
  using S = ExtElem<SFRat>;
  S want = S::term(1L, {0, 1}) + S::term(1L, {0, 2}) - S::term(1L, {1, 2});
  CHECK(r.lhs == want);
  CHECK(r.rhs == want);
  CHECK(r.equal);
  CHECK(r.null_ok);
  CHECK(r.support.cofactors.size() == 3);
  // repeated column
  auto rep = bcfw_check(s, {0, 1}, {0, 2, 2});
  CHECK(rep.equal);
  CHECK(rep.lhs.coeff({0, 2}).is_zero() == false);
  CHECK(rep.lhs.coeff({1, 2}).is_zero());
  CHECK_THROWS(bcfw_check(s, {0, 1}, {0, 1}));
  CHECK_THROWS(bcfw_check(BoundaryMatrix::from_rows({{1L, 2L, 0L}, {2L, 4L, 1L}}), {0, 1}, {0, 1, 2}));

  int ok = 0;
  for (int t = 0; t < 200; ++t) {
    size_t r0 = t % 2 ? 2 : 3, f = r0 == 2 ? 5 : 6;
    auto C = rand_rational(r0, f);
    auto O = some_anchor(C);
    if (O.empty()) continue;
    std::vector<int> B;
    for (size_t i = 0; i <= r0; ++i) B.push_back(static_cast<int>(rand_int(0, static_cast<long>(f) - 1)));
    auto res = bcfw_check(C, O, B);
    CHECK(res.equal);
    CHECK(res.null_ok);
    if (res.equal && res.null_ok) ++ok;
  }
  CHECK(ok >= 195);
}

TEST_CASE("BCFW with symbolic entries") {
  SFRat x = SFRat::var("x1"), y = SFRat::var("x2");
  auto c = transport(BoundaryMatrix::normalized(2, 4), {{1, 2, x}, {2, 3, y}, {0, 1, x + y}});
  auto res = bcfw_check(c, {0, 2}, {1, 2, 3});
  CHECK(res.equal);
  CHECK(res.null_ok);
}

TEST_CASE("gauge covariance") {
  for (int t = 0; t < 20; ++t) {
    auto C = rand_rational(2, 5);
    auto O = some_anchor(C);
    if (O.empty()) continue;
    // moves that leave the anchor columns untouched
    std::vector<ElementaryMove> moves;
    Mat<SFRat> G(5, std::vector<SFRat>(5, SFRat(0L)));
    for (size_t i = 0; i < 5; ++i) G[i][i] = SFRat(1L);
    for (int m = 0; m < 3; ++m) {
      int a = static_cast<int>(rand_int(0, 4)), b = static_cast<int>(rand_int(0, 4));
      if (a == b || std::find(O.begin(), O.end(), b) != O.end()) continue;
      SFRat gm(Rat(rand_int(-3, 3)));
      moves.push_back({a, b, gm});
      Mat<SFRat> E(5, std::vector<SFRat>(5, SFRat(0L)));
      for (size_t i = 0; i < 5; ++i) E[i][i] = SFRat(1L);
      E[static_cast<size_t>(a)][static_cast<size_t>(b)] = gm;
      G = mat_mul(G, E);
    }
    auto CG = transport(C, moves);
    CHECK(CG.entries == mat_mul(C.entries, G));
    auto M = projector(C, O);
    CHECK(projector(CG, O) == mat_mul(M, G));
    // G^{-1} by undoing the moves in reverse order
    std::vector<ElementaryMove> inv;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) inv.push_back({it->a, it->b, -it->gamma});
    auto Ginv = transport(BoundaryMatrix::normalized(5, 5), inv).entries;
    CHECK(mat_mul(G, Ginv) == BoundaryMatrix::normalized(5, 5).entries);
    std::vector<int> gens = {0, 1, 2, 3, 4};
    CHECK(berezin_delta(mat_mul(M, G), gens).substitute(Ginv) == berezin_delta(M, gens));
  }
}

TEST_CASE("positivity of minors") {
  // adjacent left-to-right moves with positive weights keep every minor nonnegative
  std::vector<std::string> vars = {"x1", "x2", "x3"};
  for (int t = 0; t < 15; ++t) {
    size_t r = 2, f = 5;
    std::vector<ElementaryMove> moves;
    for (int m = 0; m < 6; ++m) {
      int a = static_cast<int>(rand_int(0, static_cast<long>(f) - 2));
      moves.push_back({a, a + 1, rand_sfrat(vars, true)});
    }
    auto c = transport(BoundaryMatrix::normalized(r, f), moves);
    for (int p = 0; p < 3; ++p) {
      auto pt = rand_point(vars);
      for (auto& U : subsets(static_cast<int>(f), static_cast<int>(r))) {
        SFRat m = minor(c, U);
        if (m.is_zero()) continue;
        CHECK(m.eval(pt) > 0);
      }
    }
  }
  // a non-adjacent move already produces a negative minor
  auto c = transport(BoundaryMatrix::normalized(2, 3), {{0, 2, g()}});
  CHECK(minor(c, {1, 2}).eval(std::map<std::string, Rat>{{"g", Rat(2)}}) < 0);
}
