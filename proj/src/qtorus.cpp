#include "sfg/qtorus.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sfg/superseed.h"

namespace sfg {

namespace {

int sgn(long v) { return (v > 0) - (v < 0); }

// p + d, keeping exact precision exact
int shift_prec(int p, int d) { return p >= kExactPrec || d >= kExactPrec ? kExactPrec : std::min(p + d, kExactPrec); }

}  // namespace

QConvention parse_q_convention(const std::string& s) {
  if (s == "consistent") return QConvention::consistent;
  if (s == "literal" || s == "paper_literal") return QConvention::literal;
  throw std::invalid_argument("unknown quantum convention: " + s);
}

std::string to_string(QConvention c) { return c == QConvention::consistent ? "consistent" : "literal"; }

QPoly QPoly::monomial(int power, long coeff) {
  QPoly p;
  if (coeff != 0) p.c_[power] = coeff;
  return p;
}

bool QPoly::is_unit(int* power, int* sign) const {
  if (c_.size() != 1) return false;
  auto& [p, v] = *c_.begin();
  if (v != 1 && v != -1) return false;
  if (power) *power = p;
  if (sign) *sign = v > 0 ? 1 : -1;
  return true;
}

void QPoly::add(int p, const mpz_class& v) {
  if (v == 0) return;
  auto it = c_.find(p);
  if (it == c_.end()) {
    c_.emplace(p, v);
    return;
  }
  it->second += v;
  if (it->second == 0) c_.erase(it);
}

QPoly QPoly::shifted(int p) const {
  QPoly r;
  for (auto& [e, v] : c_) r.c_.emplace(e + p, v);
  return r;
}

QPoly QPoly::operator-() const {
  QPoly r;
  for (auto& [e, v] : c_) r.c_.emplace(e, -v);
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly r = a;
  for (auto& [e, v] : b.c_) r.add(e, v);
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  for (auto& [e1, v1] : a.c_)
    for (auto& [e2, v2] : b.c_) r.add(e1 + e2, v1 * v2);
  return r;
}

mpz_class QPoly::at_one() const {
  mpz_class s = 0;
  for (auto& [e, v] : c_) s += v;
  return s;
}

std::string QPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, v] : c_) {
    if (!first) os << (v > 0 ? "+" : "");
    first = false;
    if (e == 0) {
      os << v.get_str();
      continue;
    }
    if (v == -1)
      os << "-";
    else if (v != 1)
      os << v.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

int QMono::degree() const {
  int d = 0;
  for (int v : a) d += v;
  return d;
}

int QSeries::min_degree() const {
  int m = kExactPrec;
  for (auto& [k, c] : terms) m = std::min(m, k.degree());
  return m;
}

std::string QSeries::str(const std::string& x, const std::string& th) const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < k.a.size(); ++i) {
      if (k.a[i] == 0) continue;
      os << "*" << x << i + 1;
      if (k.a[i] != 1) os << "^" << k.a[i];
    }
    for (int s : k.S) os << "*" << th << s + 1;
  }
  if (first) os << "0";
  if (!exact()) os << " + O(" << prec << ")";
  return os.str();
}

QTorus make_qtorus(const ExchangeData& e, const IntMat& W, QConvention conv) {
  e.validate();
  for (long d : e.d)
    if (d != 1) throw std::invalid_argument("quantum torus needs d_i = 1 (integer q-powers only)");
  if (!is_skew_symmetric(e.eps)) throw std::invalid_argument("quantum torus needs a skew-symmetric eps");
  for (auto& row : W)
    if (row.size() != e.n()) throw std::invalid_argument("W row length differs from the number of indices");
  QTorus t;
  t.eps_hat = e.eps;
  t.W = W;
  t.conv = conv;
  return t;
}

QSeries QTorus::one() const { return constant(QPoly::monomial(0)); }

QSeries QTorus::constant(const QPoly& c) const {
  QSeries s;
  if (!c.is_zero()) s.terms[QMono{std::vector<int>(n(), 0), {}}] = c;
  return s;
}

QSeries QTorus::x(int i, int power) const {
  if (i < 0 || static_cast<size_t>(i) >= n()) throw std::out_of_range("even generator index");
  QMono m{std::vector<int>(n(), 0), {}};
  m.a[static_cast<size_t>(i)] = power;
  QSeries s;
  s.terms[m] = QPoly::monomial(0);
  return s;
}

QSeries QTorus::theta(int a) const {
  if (a < 0 || static_cast<size_t>(a) >= r()) throw std::out_of_range("odd generator index");
  QSeries s;
  s.terms[QMono{std::vector<int>(n(), 0), {a}}] = QPoly::monomial(0);
  return s;
}

void QTorus::truncate(QSeries& a, int cap) const {
  a.prec = std::min(a.prec, cap);
  for (auto it = a.terms.begin(); it != a.terms.end();) {
    if (it->first.degree() >= a.prec)
      it = a.terms.erase(it);
    else
      ++it;
  }
}

QSeries QTorus::add(const QSeries& a, const QSeries& b) const {
  QSeries r = a;
  r.prec = std::min(a.prec, b.prec);
  for (auto& [k, c] : b.terms) {
    auto it = r.terms.find(k);
    if (it == r.terms.end()) {
      r.terms.emplace(k, c);
      continue;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) r.terms.erase(it);
  }
  truncate(r, r.prec);
  return r;
}

QSeries QTorus::scale(const QSeries& a, const QPoly& c) const {
  QSeries r;
  r.prec = a.prec;
  for (auto& [k, v] : a.terms) {
    QPoly p = v * c;
    if (!p.is_zero()) r.terms.emplace(k, p);
  }
  return r;
}

QSeries QTorus::sub(const QSeries& a, const QSeries& b) const { return add(a, scale(b, QPoly::monomial(0, -1))); }

int QTorus::mono_mul(const QMono& x, const QMono& y, QMono& out, int& sign) const {
  long qp = 0;
  // theta_a X_i = q^{-mu W_ai} X_i theta_a
  for (int al : x.S)
    for (size_t i = 0; i < n(); ++i) qp -= static_cast<long>(mu()) * W[static_cast<size_t>(al)][i] * y.a[i];
  // X_i^a X_j^b = q^{lambda eps_ij a b} X_j^b X_i^a for i > j
  for (size_t i = 0; i < n(); ++i) {
    if (x.a[i] == 0) continue;
    for (size_t j = 0; j < i; ++j) qp += static_cast<long>(lambda()) * eps_hat[i][j] * x.a[i] * y.a[j];
  }
  out.a.resize(n());
  for (size_t i = 0; i < n(); ++i) out.a[i] = x.a[i] + y.a[i];
  std::vector<int> all = x.S;
  all.insert(all.end(), y.S.begin(), y.S.end());
  sign = 1;
  for (size_t p = 0; p < all.size(); ++p)
    for (size_t q = p + 1; q < all.size(); ++q) {
      if (all[p] == all[q]) {
        sign = 0;
        return 0;
      }
      if (all[p] > all[q]) sign = -sign;
    }
  std::sort(all.begin(), all.end());
  out.S = all;
  return static_cast<int>(qp);
}

QSeries QTorus::mul(const QSeries& a, const QSeries& b, int cap) const {
  QSeries r;
  r.prec = std::min({shift_prec(a.prec, b.min_degree()), shift_prec(b.prec, a.min_degree()), cap});
  bool dropped = false;
  for (auto& [ka, ca] : a.terms) {
    int da = ka.degree();
    for (auto& [kb, cb] : b.terms) {
      if (da + kb.degree() >= r.prec) {
        dropped = true;
        continue;
      }
      QMono m;
      int sign = 0;
      int qp = mono_mul(ka, kb, m, sign);
      if (sign == 0) continue;
      QPoly c = (ca * cb).shifted(qp);
      if (sign < 0) c = -c;
      auto it = r.terms.find(m);
      if (it == r.terms.end()) {
        r.terms.emplace(std::move(m), std::move(c));
        continue;
      }
      it->second = it->second + c;
      if (it->second.is_zero()) r.terms.erase(it);
    }
  }
  // a product of exact polynomials that fit under the cap stays exact
  if (a.exact() && b.exact() && !dropped) r.prec = kExactPrec;
  return r;
}

QSeries QTorus::inverse(const QSeries& u, int cap) const {
  int d = u.min_degree();
  if (d >= u.prec) throw std::domain_error("truncation too small to invert a series");
  const QMono* low = nullptr;
  for (auto& [k, c] : u.terms)
    if (k.degree() == d) {
      if (low) throw std::domain_error("series has several lowest-degree terms; no expansion direction");
      low = &k;
    }
  if (!low->S.empty()) throw std::domain_error("lowest term is nilpotent");
  int qe = 0, sg = 1;
  if (!u.terms.at(*low).is_unit(&qe, &sg)) throw std::domain_error("lowest coefficient is not a unit");
  QMono neg{std::vector<int>(n()), {}};
  for (size_t i = 0; i < n(); ++i) neg.a[i] = -low->a[i];
  QMono id;
  int sign = 1;
  int t = mono_mul(*low, neg, id, sign);
  // (c q^e X^m)^{-1} = c q^{-e-t} X^{-m}
  QSeries minv;
  minv.terms[neg] = QPoly::monomial(-qe - t, sg);
  QSeries rest = u;
  rest.terms.erase(*low);
  if (rest.terms.empty() && u.exact()) return minv;
  int inner = shift_prec(cap, d);
  QSeries s = mul(minv, rest, inner);
  QSeries negs = scale(s, QPoly::monomial(0, -1));
  QSeries geo = one(), term = one();
  geo.prec = std::min(s.prec, inner);
  while (true) {
    term = mul(term, negs, inner);
    if (term.terms.empty()) break;
    geo = add(geo, term);
  }
  geo.prec = std::min(geo.prec, term.prec);
  truncate(geo, geo.prec);
  return mul(geo, minv, cap);
}

QSeries QTorus::pow(const QSeries& a, int k, int cap) const {
  QSeries base = k < 0 ? inverse(a, cap) : a;
  QSeries r = one();
  for (int i = 0; i < std::abs(k); ++i) r = mul(r, base, cap);
  return r;
}

QSeries normal_form(const QTorus& t, const std::vector<QLetter>& word) {
  QSeries r = t.one();
  for (auto& l : word) {
    if (l.odd) {
      if (l.power < 0) throw std::invalid_argument("odd generators have no inverse");
      QSeries f = t.one();
      for (int p = 0; p < l.power; ++p) f = t.mul(f, t.theta(l.index));
      r = t.mul(r, f);
    } else {
      r = t.mul(r, t.x(l.index, l.power));
    }
  }
  return r;
}

bool series_agree(const QTorus& t, const QSeries& a, const QSeries& b, int order, int* certified) {
  QSeries d = t.sub(a, b);
  if (certified) *certified = d.prec;
  for (auto& [k, c] : d.terms)
    if (k.degree() < order) return false;
  return d.prec >= order;
}

QSeries phi_adjoint(const QTorus& t, const QSeries& Z, const QSeries& Y, int c, int cap) {
  QSeries yz = t.mul(Y, Z, cap), zy = t.scale(t.mul(Z, Y, cap), QPoly::monomial(c));
  int cert = 0;
  int order = std::min(yz.prec, zy.prec);
  if (!series_agree(t, yz, zy, order, &cert) || !t.sub(yz, zy).terms.empty())
    throw std::invalid_argument("Y Z != q^c Z Y for the given c");
  QSeries r = Z;
  int s = sgn(c);
  QSeries ys = s > 0 ? Y : t.inverse(Y, cap);
  for (int j = 1; j <= std::abs(c); ++j) {
    QSeries f = t.add(t.one(), t.scale(ys, QPoly::monomial((2 * j - 1) * s)));
    if (s > 0) f = t.inverse(f, cap);
    r = t.mul(r, f, cap);
  }
  return r;
}

QState initial_qstate(const QTorus& t, const ExchangeData& e, int cap) {
  if (e.n() != t.n()) throw std::invalid_argument("exchange data and torus differ in size");
  QState s;
  s.base = t;
  s.ex = e;
  s.W = t.W;
  s.cap = cap;
  for (size_t i = 0; i < t.n(); ++i) s.X.push_back(t.x(static_cast<int>(i)));
  for (size_t a = 0; a < t.r(); ++a) s.theta.push_back(t.theta(static_cast<int>(a)));
  return s;
}

QState q_mutate(const QState& s, int k) {
  if (!s.ex.is_mutable(k)) throw std::invalid_argument("cannot mutate at a frozen index");
  const QTorus& t = s.base;
  size_t kk = static_cast<size_t>(k);
  bool cons = t.conv == QConvention::consistent;
  QState o = s;
  const QSeries& xk = s.X[kk];
  QSeries xkinv = t.inverse(xk, s.cap);
  for (size_t i = 0; i < t.n(); ++i) {
    if (i == kk) {
      o.X[i] = xkinv;
      continue;
    }
    long e = s.ex.eps[i][kk];
    if (e == 0) continue;
    int sg = sgn(e);
    const QSeries& base = sg > 0 ? xkinv : xk;
    QSeries v = s.X[i];
    for (int j = 1; j <= std::abs(e); ++j) {
      int qp = cons ? -(2 * j - 1) : (2 * j - 1) * sg;
      QSeries f = t.add(t.one(), t.scale(base, QPoly::monomial(qp)));
      if (sg > 0) f = t.inverse(f, s.cap);
      v = t.mul(v, f, s.cap);
    }
    o.X[i] = v;
  }
  if (cons) {
    for (size_t a = 0; a < t.r(); ++a) {
      long w = s.W[a][kk];
      if (w == 0) continue;
      QSeries p = t.pow(xk, static_cast<int>(w), s.cap);
      for (int j = 1; j <= std::abs(w); ++j) {
        if (w > 0) {
          p = t.mul(p, t.inverse(t.add(t.one(), t.scale(xk, QPoly::monomial(2 * j - 1))), s.cap), s.cap);
        } else {
          p = t.mul(p, t.add(t.one(), t.scale(xk, QPoly::monomial(-(2 * j - 1)))), s.cap);
        }
      }
      o.theta[a] = t.mul(s.theta[a], p, s.cap);
    }
  }
  o.ex = mutate_epsilon(s.ex, k);
  o.W = mutate_w(s.W, s.ex.eps, k);
  return o;
}

std::vector<QRelation> check_q_relations(const QState& s, int N) {
  const QTorus& t = s.base;
  std::vector<QRelation> out;
  auto check = [&](const std::string& kind, int i, int j, const QSeries& a, const QSeries& b, long power, int sign) {
    QRelation r{kind, i, j, power, false, 0};
    QSeries lhs = t.mul(a, b, s.cap);
    QSeries rhs = t.scale(t.mul(b, a, s.cap), QPoly::monomial(static_cast<int>(power), sign));
    r.ok = series_agree(t, lhs, rhs, N + 1, &r.certified);
    out.push_back(r);
  };
  for (size_t i = 0; i < t.n(); ++i)
    for (size_t j = i + 1; j < t.n(); ++j)
      check("XX", static_cast<int>(i), static_cast<int>(j), s.X[i], s.X[j], t.lambda() * s.ex.eps[i][j], 1);
  for (size_t i = 0; i < t.n(); ++i)
    for (size_t a = 0; a < t.r(); ++a)
      check("Xtheta", static_cast<int>(i), static_cast<int>(a), s.X[i], s.theta[a], t.mu() * s.W[a][i], 1);
  for (size_t a = 0; a < t.r(); ++a)
    for (size_t b = a; b < t.r(); ++b)
      check("thetatheta", static_cast<int>(a), static_cast<int>(b), s.theta[a], s.theta[b], 0, -1);
  return out;
}

RelationRun mutate_and_check(const QTorus& t, const ExchangeData& e, const std::vector<int>& seq, int N) {
  RelationRun run;
  for (int margin = 4; margin <= 64; margin *= 2) {
    run.state = initial_qstate(t, e, N + 1 + margin);
    for (int k : seq) run.state = q_mutate(run.state, k);
    run.relations = check_q_relations(run.state, N);
    run.certified = true;
    for (auto& r : run.relations)
      if (r.certified <= N) run.certified = false;
    if (run.certified) break;
  }
  return run;
}

namespace {

PentagonReport run_sequence(int N, int cap, const IntMat& eps, const IntMat& W, QConvention conv, const std::vector<int>& seq,
                            const std::vector<int>& expected) {
  PentagonReport rep;
  rep.order = N;
  rep.working_cap = cap;
  ExchangeData e = make_exchange(eps);
  QTorus t = make_qtorus(e, W, conv);
  QState s = initial_qstate(t, e, cap);
  try {
    for (int k : seq) s = q_mutate(s, k);
  } catch (const std::domain_error& ex) {
    rep.notes.push_back(std::string("expansion failed: ") + ex.what());
    rep.certified = -1;
    return rep;
  }
  rep.ok = true;
  rep.certified = kExactPrec;
  size_t n = t.n();
  for (size_t i = 0; i < n; ++i) {
    int cert = 0;
    bool same = series_agree(t, s.X[i], t.x(expected[i]), N + 1, &cert);
    rep.certified = std::min(rep.certified, cert);
    if (!same) {
      rep.ok = false;
      std::ostringstream os;
      os << "X" << i + 1 << " does not return to X" << expected[i] + 1;
      rep.notes.push_back(os.str());
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (s.ex.eps[i][j] != eps[static_cast<size_t>(expected[i])][static_cast<size_t>(expected[j])]) {
        rep.ok = false;
        rep.notes.push_back("exchange matrix does not return up to the relabeling");
        i = j = n;
      }
  for (size_t a = 0; a < t.r(); ++a) {
    int cert = 0;
    if (!series_agree(t, s.theta[a], t.theta(static_cast<int>(a)), N + 1, &cert)) {
      rep.ok = false;
      rep.notes.push_back("theta" + std::to_string(a + 1) + " does not return");
    }
    rep.certified = std::min(rep.certified, cert);
    for (size_t i = 0; i < n; ++i)
      if (s.W[a][i] != W[a][static_cast<size_t>(expected[i])]) {
        rep.ok = false;
        rep.notes.push_back("W row " + std::to_string(a + 1) + " does not return up to the relabeling");
        break;
      }
  }
  return rep;
}

}  // namespace

PentagonReport sequence_check(int N, const IntMat& eps, const IntMat& W, QConvention conv, const std::vector<int>& seq,
                              const std::vector<int>& expected) {
  if (N < 1) throw std::invalid_argument("truncation order must be positive");
  if (expected.size() != eps.size()) throw std::invalid_argument("expected relabeling has wrong length");
  // widen the working truncation until the result is certified at order N
  PentagonReport rep;
  for (int margin = 2; margin <= 64; margin *= 2) {
    rep = run_sequence(N, N + 1 + margin, eps, W, conv, seq, expected);
    if (rep.certified > N) return rep;
  }
  rep.ok = false;
  rep.notes.push_back("truncation too small to certify the comparison");
  return rep;
}

PentagonReport pentagon_check(int N, const IntMat& eps, const IntMat& W, QConvention conv) {
  if (N < 4) throw std::invalid_argument("pentagon check needs N >= 4");
  if (eps.size() != 2) throw std::invalid_argument("pentagon check is for rank 2");
  return sequence_check(N, eps, W, conv, {0, 1, 0, 1, 0}, {1, 0});
}

}  // namespace sfg
