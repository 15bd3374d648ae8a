#include "sfg/fibercurve.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sfg/ratmat.h"

namespace sfg {

namespace {

int sigma_of(const TransferWeight& w, const std::string& k) {
  auto it = w.sigma.find(k);
  return it == w.sigma.end() ? 1 : it->second;
}

SFRat unit_pow(const SFRat& c, const mpz_class& e) {
  if (!e.fits_sint_p()) throw std::overflow_error("exponent too large");
  long v = e.get_si();
  if (v == 0) return SFRat(1L);
  if (c.is_zero()) throw std::domain_error("zero unit in a binomial relation");
  return c.pow(static_cast<int>(v));
}

}  // namespace

SFRat TransferWeight::value() const {
  SFRat r(1L);
  for (auto& [v, b] : B)
    if (b != 0) r = r * SFRat::var(v).pow(b);
  for (auto& [k, a] : A) {
    if (a == 0) continue;
    SFRat f = SFRat(1L) + SFRat::var(k).pow(sigma_of(*this, k));
    r = r * f.pow(a);
  }
  return r;
}

double TransferWeight::eval(const std::map<std::string, double>& X) const {
  auto get = [&](const std::string& v) {
    auto it = X.find(v);
    if (it == X.end()) throw std::invalid_argument("missing value for " + v);
    if (!(it->second > 0)) throw std::domain_error("transfer weights need a positive point");
    return it->second;
  };
  double r = 1;
  for (auto& [v, b] : B) r *= std::pow(get(v), b);
  for (auto& [k, a] : A) r *= std::pow(1 + std::pow(get(k), sigma_of(*this, k)), a);
  return r;
}

double eval_letter(const LetterSpec& spec, const std::map<std::string, double>& X) {
  double r = 1;
  for (auto& [w, dir] : spec) {
    double v = w.eval(X);
    r *= dir >= 0 ? v : 1 / v;
  }
  return r;
}

double eval_letter(const TransferWeight& w, const std::map<std::string, double>& X) { return w.eval(X); }

TransferWeight flip_update(const TransferWeight& g, const std::string& k, int b, int a, int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("sign must be +1 or -1");
  TransferWeight w = g;
  w.B[k] += b;
  if (a != 0) {
    auto it = w.A.find(k);
    if (it == w.A.end() || it->second == 0 || sigma_of(w, k) == s) {
      w.A[k] += a;
      w.sigma[k] = s;
    } else {
      // (1 + X^s)^a = X^{s a} (1 + X^{-s})^a
      w.B[k] += s * a;
      w.A[k] += a;
    }
  }
  if (w.B[k] == 0) w.B.erase(k);
  if (w.A.count(k) && w.A[k] == 0) {
    w.A.erase(k);
    w.sigma.erase(k);
  }
  return w;
}

ZMat zmat(const std::vector<std::vector<long>>& m) {
  ZMat z(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (long v : m[i]) z[i].emplace_back(v);
  return z;
}

ZMat zmul(const ZMat& a, const ZMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ZMat r(n, std::vector<mpz_class>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

// Bareiss
mpz_class zdet(const ZMat& m0) {
  size_t n = m0.size();
  if (n == 0) return 1;
  ZMat m = m0;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SmithForm smith_normal_form(const ZMat& M) {
  size_t m = M.size(), n = m ? M[0].size() : 0;
  SmithForm f;
  f.D = M;
  f.U.assign(m, std::vector<mpz_class>(m, 0));
  f.S.assign(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < m; ++i) f.U[i][i] = 1;
  for (size_t j = 0; j < n; ++j) f.S[j][j] = 1;
  auto& D = f.D;
  auto swap_rows = [&](size_t a, size_t b) {
    std::swap(D[a], D[b]);
    std::swap(f.U[a], f.U[b]);
  };
  auto swap_cols = [&](size_t a, size_t b) {
    for (auto& row : D) std::swap(row[a], row[b]);
    for (auto& row : f.S) std::swap(row[a], row[b]);
  };
  // row a += c * row b
  auto add_row = [&](size_t a, size_t b, const mpz_class& c) {
    for (size_t j = 0; j < n; ++j) D[a][j] += c * D[b][j];
    for (size_t j = 0; j < m; ++j) f.U[a][j] += c * f.U[b][j];
  };
  auto add_col = [&](size_t a, size_t b, const mpz_class& c) {
    for (size_t i = 0; i < m; ++i) D[i][a] += c * D[i][b];
    for (size_t i = 0; i < n; ++i) f.S[i][a] += c * f.S[i][b];
  };

  size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      size_t pi = m, pj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (pi == m || abs(D[i][j]) < abs(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (D[i][t] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (D[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (D[t][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: push a bad row into row t and go again
      size_t bad = m;
      for (size_t i = t + 1; i < m && bad == m; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(t, bad, 1);
    }
    if (D[t][t] == 0) break;
    if (D[t][t] < 0) {
      for (size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
      for (size_t j = 0; j < m; ++j) f.U[t][j] = -f.U[t][j];
    }
  }
  f.rank = t;
  return f;
}

void LetterPoly::add(const std::vector<int>& e, const SFRat& c) {
  if (c.is_zero()) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms.erase(it);
}

std::string LetterPoly::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << (i < names.size() ? names[i] : "v" + std::to_string(i + 1));
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

LetterPoly lp_mul(const LetterPoly& a, const LetterPoly& b) {
  LetterPoly r;
  for (auto& [ea, ca] : a.terms)
    for (auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

LetterPoly lp_add(const LetterPoly& a, const LetterPoly& b) {
  LetterPoly r = a;
  for (auto& [e, c] : b.terms) r.add(e, c);
  return r;
}

LetterPoly saturate(const LetterPoly& p) {
  if (p.terms.empty()) return p;
  size_t n = p.terms.begin()->first.size();
  std::vector<int> lo(n, 0);
  for (size_t i = 0; i < n; ++i) {
    lo[i] = p.terms.begin()->first[i];
    for (auto& [e, c] : p.terms) lo[i] = std::min(lo[i], e[i]);
  }
  LetterPoly shifted;
  for (auto& [e, c] : p.terms) {
    std::vector<int> s(n);
    for (size_t i = 0; i < n; ++i) s[i] = e[i] - lo[i];
    shifted.add(s, c);
  }
  SFRat lead = shifted.terms.begin()->second;
  LetterPoly out;
  for (auto& [e, c] : shifted.terms) out.add(e, c / lead);
  return out;
}

namespace {

// Sylvester determinant by cofactor expansion along the first row.
LetterPoly lp_det(const std::vector<std::vector<LetterPoly>>& m, size_t nvars) {
  size_t n = m.size();
  if (n == 0) {
    LetterPoly one;
    one.add(std::vector<int>(nvars, 0), SFRat(1L));
    return one;
  }
  LetterPoly acc;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<LetterPoly>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<LetterPoly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    LetterPoly term = lp_mul(m[0][j], lp_det(minor, nvars));
    if (j % 2) {
      LetterPoly neg;
      for (auto& [e, c] : term.terms) neg.add(e, -c);
      term = neg;
    }
    acc = lp_add(acc, term);
  }
  return acc;
}

// Coefficients in z (index zi) as polynomials in the other letters; exponents shifted to start at 0.
std::vector<LetterPoly> coeffs_in(const LetterPoly& p, size_t zi) {
  int lo = 0, hi = 0;
  bool first = true;
  for (auto& [e, c] : p.terms) {
    lo = first ? e[zi] : std::min(lo, e[zi]);
    hi = first ? e[zi] : std::max(hi, e[zi]);
    first = false;
  }
  std::vector<LetterPoly> out(static_cast<size_t>(hi - lo + 1));
  for (auto& [e, c] : p.terms) {
    std::vector<int> rest;
    for (size_t i = 0; i < e.size(); ++i)
      if (i != zi) rest.push_back(e[i]);
    out[static_cast<size_t>(e[zi] - lo)].add(rest, c);
  }
  return out;
}

LetterPoly resultant(const LetterPoly& f, const LetterPoly& g, size_t zi, size_t nrest) {
  auto a = coeffs_in(f, zi), b = coeffs_in(g, zi);
  size_t p = a.size() - 1, q = b.size() - 1, n = p + q;
  if (n == 0) throw std::invalid_argument("resultant needs a positive degree in the auxiliary letter");
  if (n > 8) throw std::invalid_argument("resultant too large for the supported shape");
  std::vector<std::vector<LetterPoly>> syl(n, std::vector<LetterPoly>(n));
  // rows: q shifts of f, p shifts of g; highest coefficient first
  for (size_t r = 0; r < q; ++r)
    for (size_t i = 0; i <= p; ++i) syl[r][r + i] = a[p - i];
  for (size_t r = 0; r < p; ++r)
    for (size_t i = 0; i <= q; ++i) syl[q + r][r + i] = b[q - i];
  return lp_det(syl, nrest);
}

bool depends_on(const LetterPoly& p, size_t i) {
  for (auto& [e, c] : p.terms)
    if (e[i] != 0) return true;
  return false;
}

}  // namespace

FiberCurve eliminate(const VerticalSystem& sys) {
  size_t m = sys.letters.size();
  if (sys.binomials.size() != sys.units.size()) throw std::invalid_argument("one unit per binomial row");
  for (auto& row : sys.binomials)
    if (row.size() != m) throw std::invalid_argument("binomial row length differs from the letter count");
  for (auto& L : sys.laurents)
    for (auto& [e, c] : L.terms)
      if (e.size() != m) throw std::invalid_argument("Laurent exponent length differs from the letter count");

  // letters as u = prod v^{S}; v_l fixed for l < rank
  ZMat S(m, std::vector<mpz_class>(m, 0));
  for (size_t j = 0; j < m; ++j) S[j][j] = 1;
  size_t rank = 0;
  std::vector<SFRat> fixed;
  if (!sys.binomials.empty()) {
    auto snf = smith_normal_form(zmat(sys.binomials));
    rank = snf.rank;
    S = snf.S;
    size_t R = sys.binomials.size();
    auto rhs = [&](size_t l) {
      SFRat c(1L);
      for (size_t b = 0; b < R; ++b) c = c * unit_pow(sys.units[b], snf.U[l][b]);
      return c;
    };
    for (size_t l = rank; l < R; ++l)
      if (!rhs(l).is_one()) throw std::domain_error("inconsistent binomial relations: no positive solution");
    for (size_t l = 0; l < rank; ++l) {
      SFRat c = rhs(l);
      if (snf.D[l][l] != 1) {
        if (!c.is_one()) throw std::invalid_argument("unsupported elimination shape: binomial needs a root of a unit");
        c = SFRat(1L);
      }
      fixed.push_back(c);
    }
  }
  size_t f = m - rank;
  // choose free letters among the original ones when the kernel allows it, preferring later letters
  std::vector<size_t> F;
  {
    std::vector<bool> pick(m, false);
    std::fill(pick.end() - static_cast<long>(f), pick.end(), true);
    do {
      std::vector<size_t> cand;
      for (size_t j = 0; j < m; ++j)
        if (pick[j]) cand.push_back(j);
      ZMat KF(f, std::vector<mpz_class>(f));
      for (size_t a = 0; a < f; ++a)
        for (size_t b = 0; b < f; ++b) KF[a][b] = S[cand[a]][rank + b];
      mpz_class d = zdet(KF);
      if (d == 1 || d == -1) {
        F = cand;
        RatMat kf(f, f);
        for (size_t a = 0; a < f; ++a)
          for (size_t b = 0; b < f; ++b) kf(a, b) = Rat(KF[a][b]);
        RatMat G = inverse(kf);
        // free columns <- K G, so rows F become the identity
        ZMat K2(m, std::vector<mpz_class>(f, 0));
        for (size_t j = 0; j < m; ++j)
          for (size_t b = 0; b < f; ++b) {
            Rat acc = 0;
            for (size_t a = 0; a < f; ++a) acc += Rat(S[j][rank + a]) * G(a, b);
            K2[j][b] = acc.get_num();
          }
        for (size_t j = 0; j < m; ++j)
          for (size_t b = 0; b < f; ++b) S[j][rank + b] = K2[j][b];
        // clear rows F of the fixed columns with kernel vectors
        for (size_t l = 0; l < rank; ++l)
          for (size_t a = 0; a < f; ++a) {
            mpz_class c = S[F[a]][l];
            if (c == 0) continue;
            for (size_t j = 0; j < m; ++j) S[j][l] -= c * S[j][rank + a];
          }
        break;
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
  }

  FiberCurve fc;
  fc.letter_in_free.assign(m, std::vector<int>(f, 0));
  fc.letter_unit.assign(m, SFRat(1L));
  for (size_t j = 0; j < m; ++j) {
    for (size_t b = 0; b < f; ++b) fc.letter_in_free[j][b] = static_cast<int>(S[j][rank + b].get_si());
    for (size_t l = 0; l < rank; ++l) fc.letter_unit[j] = fc.letter_unit[j] * unit_pow(fixed[l], S[j][l]);
  }
  // free letters as monomials in u: rows of S^{-1}
  {
    RatMat sm(m, m);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) sm(i, j) = Rat(S[i][j]);
    RatMat si = inverse(sm);
    for (size_t b = 0; b < f; ++b) {
      std::vector<int> row(m);
      for (size_t j = 0; j < m; ++j) row[j] = static_cast<int>(si(rank + b, j).get_num().get_si());
      fc.free_monomials.push_back(row);
    }
  }
  for (size_t b = 0; b < f; ++b) fc.free_names.push_back(F.empty() ? "v" + std::to_string(b + 1) : sys.letters[F[b]]);

  std::vector<LetterPoly> sub;
  for (auto& L : sys.laurents) {
    LetterPoly out;
    for (auto& [e, c] : L.terms) {
      std::vector<int> ne(f, 0);
      SFRat coeff = c;
      for (size_t j = 0; j < m; ++j) {
        if (e[j] == 0) continue;
        for (size_t b = 0; b < f; ++b) ne[b] += e[j] * fc.letter_in_free[j][b];
        coeff = coeff * fc.letter_unit[j].pow(e[j]);
      }
      out.add(ne, coeff);
    }
    sub.push_back(out);
  }

  if (f == 2 && sub.size() == 1) {
    fc.P = saturate(sub[0]);
  } else if (f == 3 && sub.size() == 2) {
    size_t zi = 3;
    for (size_t i = 0; i < 3; ++i)
      if (depends_on(sub[0], i) && depends_on(sub[1], i)) zi = i;
    if (zi == 3) throw std::invalid_argument("unsupported elimination shape: no shared auxiliary letter");
    fc.P = saturate(resultant(sub[0], sub[1], zi, 2));
    fc.used_resultant = true;
    fc.free_names.erase(fc.free_names.begin() + static_cast<long>(zi));
    fc.free_monomials.erase(fc.free_monomials.begin() + static_cast<long>(zi));
  } else {
    std::ostringstream os;
    os << "unsupported elimination shape: " << f << " free letters and " << sub.size() << " Laurent relations";
    throw std::invalid_argument(os.str());
  }
  if (fc.P.is_zero()) throw std::domain_error("elimination produced the zero polynomial");
  fc.coefficients_sf = true;
  for (auto& [e, c] : fc.P.terms)
    if (!c.sf()) fc.coefficients_sf = false;
  return fc;
}

NewtonGenus newton_genus(const std::vector<std::pair<long, long>>& support) {
  if (support.empty()) throw std::invalid_argument("empty support");
  using P = std::pair<long, long>;
  std::vector<P> pts = support;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cross = [](const P& o, const P& a, const P& b) -> mpz_class {
    return mpz_class(a.first - o.first) * (b.second - o.second) - mpz_class(a.second - o.second) * (b.first - o.first);
  };
  std::vector<P> hull;
  if (pts.size() < 3) {
    hull = pts;
  } else {
    std::vector<P> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
      h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
      while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
      h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    hull = h;
  }
  NewtonGenus g;
  g.polygon = hull;
  if (hull.size() < 3) {
    g.degenerate = true;
    if (hull.size() == 2)
      g.boundary = std::gcd(std::abs(hull[1].first - hull[0].first), std::abs(hull[1].second - hull[0].second)) + 1;
    else
      g.boundary = 1;
    g.area2 = 0;
    return g;
  }
  mpz_class a2 = 0;
  for (size_t i = 0; i < hull.size(); ++i) {
    auto& p = hull[i];
    auto& q = hull[(i + 1) % hull.size()];
    a2 += mpz_class(p.first) * q.second - mpz_class(q.first) * p.second;
    g.boundary += std::gcd(std::abs(q.first - p.first), std::abs(q.second - p.second));
  }
  g.area2 = abs(a2);
  long x0 = hull[0].first, x1 = x0, y0 = hull[0].second, y1 = y0;
  for (auto& p : hull) {
    x0 = std::min(x0, p.first);
    x1 = std::max(x1, p.first);
    y0 = std::min(y0, p.second);
    y1 = std::max(y1, p.second);
  }
  for (long x = x0 + 1; x < x1; ++x)
    for (long y = y0 + 1; y < y1; ++y) {
      bool inside = true;
      for (size_t i = 0; i < hull.size() && inside; ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], {x, y}) <= 0) inside = false;
      if (inside) ++g.interior;
    }
  g.pick_check = mpz_class(2 * g.interior) == g.area2 - g.boundary + 2;
  g.genus = g.interior;
  return g;
}

NewtonGenus newton_genus(const LetterPoly& P) {
  if (P.is_zero()) throw std::invalid_argument("zero polynomial has no Newton polygon");
  std::vector<std::pair<long, long>> s;
  for (auto& [e, c] : P.terms) {
    if (e.size() != 2) throw std::invalid_argument("Newton genus needs a two-variable polynomial");
    s.emplace_back(e[0], e[1]);
  }
  return newton_genus(s);
}

DlogResidue residue_dlog(const std::vector<SFRat>& letters, size_t a) {
  if (a >= letters.size()) throw std::out_of_range("residue index out of range");
  const SFRat& l = letters[a];
  auto vs = l.vars();
  if (vs.size() != 1 || !(l == SFRat::var(vs[0])))
    throw std::invalid_argument("residue along a non-coordinate letter is not supported");
  std::string v = vs[0];
  DlogResidue r;
  r.sign = a % 2 ? -1 : 1;
  for (size_t b = 0; b < letters.size(); ++b) {
    if (b == a) continue;
    size_t pos = r.survivors.size();
    try {
      SFRat s = letters[b].substitute(v, Rat(0));
      if (s.is_zero()) {
        r.vanishing.push_back(pos);
        r.survivors.push_back(letters[b]);
      } else {
        r.survivors.push_back(s);
      }
    } catch (const std::domain_error&) {
      r.poles.push_back(pos);
      r.survivors.push_back(letters[b]);
    }
  }
  return r;
}

}  // namespace sfg
