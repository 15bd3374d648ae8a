#include "sfg/superseed.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sfg {

namespace {

long pos(long v) { return v > 0 ? v : 0; }

RatMat w_mut(const SuperSeed& s) {
  RatMat m(s.r(), static_cast<size_t>(s.ex.n_mut));
  for (size_t a = 0; a < s.r(); ++a)
    for (int j = 0; j < s.ex.n_mut; ++j) m(a, static_cast<size_t>(j)) = s.W[a][static_cast<size_t>(j)];
  return m;
}

RatMat w_mut(const ExchangeData& e, const IntMat& W) {
  SuperSeed s;
  s.ex = e;
  s.W = W;
  return w_mut(s);
}

void check_generators(const GradedElem& f, const SuperSeed& s) {
  for (auto& [key, c] : f.terms()) {
    for (int a : key)
      if (a < 0 || static_cast<size_t>(a) >= s.r()) throw std::invalid_argument("odd generator not in the seed");
    for (auto& v : c.vars())
      if (std::find(s.names.begin(), s.names.end(), v) == s.names.end())
        throw std::invalid_argument("even generator " + v + " not in the seed");
  }
}

}  // namespace

SuperMode parse_super_mode(const std::string& s) {
  if (s == "consistent") return SuperMode::consistent;
  if (s == "paper_literal") return SuperMode::paper_literal;
  throw std::invalid_argument("unknown mode: " + s);
}

std::string to_string(SuperMode m) { return m == SuperMode::consistent ? "consistent" : "paper_literal"; }

void SuperSeed::validate() const {
  ex.validate();
  if (x.size() != ex.n()) throw std::invalid_argument("x has wrong length");
  for (auto& row : W)
    if (row.size() != ex.n()) throw std::invalid_argument("W has wrong number of columns");
  if (theta_prefactor.size() != W.size()) throw std::invalid_argument("prefactor count differs from W rows");
  if (names.size() != ex.n()) throw std::invalid_argument("generator names have wrong length");
}

SuperSeed initial_superseed(const ExchangeData& e, const IntMat& W, const std::string& prefix) {
  SuperSeed s;
  s.ex = e;
  s.names = variable_names(e.n(), prefix);
  for (auto& v : s.names) s.x.push_back(SFRat::var(v));
  s.W = W;
  s.theta_prefactor.assign(W.size(), SFRat(1L));
  s.validate();
  return s;
}

IntMat mutate_w(const IntMat& W, const IntMat& eps, int k) {
  IntMat out = W;
  size_t kk = static_cast<size_t>(k);
  for (size_t a = 0; a < W.size(); ++a)
    for (size_t j = 0; j < W[a].size(); ++j) {
      if (j == kk)
        out[a][j] = -W[a][kk];
      else
        out[a][j] = W[a][j] + pos(eps[kk][j]) * W[a][kk];
    }
  return out;
}

SuperSeed mutate_super(const SuperSeed& s, int k, SuperMode mode) {
  XSeed xs = mutate_x(XSeed{s.ex, s.x}, k);
  SuperSeed out = s;
  out.ex = xs.ex;
  out.x = xs.x;
  out.W = mutate_w(s.W, s.ex.eps, k);
  const SFRat& xk = s.x[static_cast<size_t>(k)];
  SFRat g = mode == SuperMode::consistent ? xk / (SFRat(1L) + xk) : xk / (SFRat(1L) + xk.inverse());
  for (size_t a = 0; a < s.r(); ++a) {
    long w = s.W[a][static_cast<size_t>(k)];
    if (w != 0) out.theta_prefactor[a] = s.theta_prefactor[a] * g.pow(static_cast<int>(w));
  }
  return out;
}

// ---- GradedElem

GradedElem::GradedElem(const SFRat& c) {
  if (!c.is_zero()) terms_[{}] = c;
}

GradedElem GradedElem::theta(int a) { return term(SFRat(1L), {a}); }

GradedElem GradedElem::term(const SFRat& c, Key odd) {
  Key sorted;
  int sign = odd_product({}, {}, sorted);
  for (int a : odd) {
    Key next;
    int sg = odd_product(sorted, {a}, next);
    sign *= sg;
    sorted = next;
  }
  GradedElem e;
  if (sign != 0) e.add(sorted, sign > 0 ? c : -c);
  return e;
}

int GradedElem::parity() const {
  int p = 0;
  bool first = true;
  for (auto& [k, c] : terms_) {
    int q = static_cast<int>(k.size() % 2);
    if (first) {
      p = q;
      first = false;
    } else if (p != q) {
      return -1;
    }
  }
  return p;
}

SFRat GradedElem::coeff(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? SFRat(0L) : it->second;
}

void GradedElem::add(const Key& k, const SFRat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GradedElem GradedElem::operator-() const {
  GradedElem r;
  for (auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

GradedElem operator+(const GradedElem& a, const GradedElem& b) {
  GradedElem r = a;
  for (auto& [k, c] : b.terms_) r.add(k, c);
  return r;
}

GradedElem operator-(const GradedElem& a, const GradedElem& b) { return a + (-b); }

GradedElem operator*(const GradedElem& a, const GradedElem& b) {
  GradedElem r;
  for (auto& [ka, ca] : a.terms_)
    for (auto& [kb, cb] : b.terms_) {
      GradedElem::Key k;
      int sg = odd_product(ka, kb, k);
      if (sg == 0) continue;
      SFRat c = ca * cb;
      r.add(k, sg > 0 ? c : -c);
    }
  return r;
}

bool operator==(const GradedElem& a, const GradedElem& b) { return (a - b).is_zero(); }

std::string GradedElem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int a : k) os << "*t" << a + 1;
  }
  return os.str();
}

int odd_product(const GradedElem::Key& s, const GradedElem::Key& t, GradedElem::Key& out) {
  out.clear();
  // count inversions: pairs (a in s, b in t) with a > b
  long inv = 0;
  for (int a : s)
    for (int b : t) {
      if (a == b) return 0;
      if (a > b) ++inv;
    }
  out = s;
  out.insert(out.end(), t.begin(), t.end());
  std::sort(out.begin(), out.end());
  return inv % 2 == 0 ? 1 : -1;
}

// ---- bracket

GradedElem bracket(const GradedElem& f, const GradedElem& g, const SuperSeed& s) {
  check_generators(f, s);
  check_generators(g, s);
  RatMat eh = s.ex.eps_hat();
  size_t n = s.ex.n();
  auto weight = [&](const GradedElem::Key& key) {
    std::vector<Rat> w(n, Rat(0));
    for (int a : key)
      for (size_t i = 0; i < n; ++i) w[i] += s.W[static_cast<size_t>(a)][i];
    return w;
  };
  GradedElem out;
  for (auto& [kf, F] : f.terms()) {
    std::vector<SFRat> EF(n);
    for (size_t i = 0; i < n; ++i) EF[i] = F.euler_derivative(s.names[i]);
    std::vector<Rat> wf = weight(kf);
    for (auto& [kg, G] : g.terms()) {
      GradedElem::Key k;
      int sg = odd_product(kf, kg, k);
      if (sg == 0) continue;
      std::vector<SFRat> EG(n);
      for (size_t i = 0; i < n; ++i) EG[i] = G.euler_derivative(s.names[i]);
      std::vector<Rat> wg = weight(kg);
      // [F (w_f . E G) + {F,G} - G (w_g . E F)] theta_f theta_g
      SFRat c(0L);
      for (size_t i = 0; i < n; ++i) {
        if (wf[i] != 0 && !EG[i].is_zero()) c += F * EG[i] * SFRat(wf[i]);
        if (wg[i] != 0 && !EF[i].is_zero()) c -= G * EF[i] * SFRat(wg[i]);
        if (EF[i].is_zero()) continue;
        for (size_t j = 0; j < n; ++j)
          if (eh(i, j) != 0 && !EG[j].is_zero()) c += EF[i] * EG[j] * SFRat(eh(i, j));
      }
      out = out + GradedElem::term(sg > 0 ? c : -c, k);
    }
  }
  return out;
}

// ---- horizontal frame

HorizontalData horizontal_data(const SuperSeed& s, const Rat& free_value) {
  HorizontalData h;
  RatMat e = s.ex.eps_hat_mut(), w = w_mut(s);
  try {
    h.Z = solve_left(e, w, free_value);
  } catch (const std::exception&) {
    throw std::domain_error("W is not admissible: no Z with Z eps_hat = W");
  }
  if (!h.Z.is_integer()) return h;
  std::vector<SFRat> f;
  for (size_t a = 0; a < s.r(); ++a) {
    SFRat v(1L);
    for (int j = 0; j < s.ex.n_mut; ++j) {
      Rat z = h.Z(a, static_cast<size_t>(j));
      if (z != 0) v *= s.x[static_cast<size_t>(j)].pow(static_cast<int>(-z.get_num().get_si()));
    }
    f.push_back(v);
  }
  h.factors = f;
  return h;
}

RatMat transport_z(const RatMat& Z, const ExchangeData& e, int k) {
  RatMat out = Z;
  size_t kk = static_cast<size_t>(k);
  RatMat eh = e.eps_hat_mut();
  for (size_t a = 0; a < Z.rows(); ++a) {
    // w = (Z eps_hat)_k
    Rat w = 0, plus = 0;
    for (size_t i = 0; i < Z.cols(); ++i) {
      w += Z(a, i) * eh(i, kk);
      if (e.eps[i][kk] > 0) plus += Z(a, i) * e.eps[i][kk];
    }
    out(a, kk) = -Z(a, kk) - w + plus;
  }
  return out;
}

std::vector<double> horizontal_values(const SuperSeed& s, const RatMat& Z, const std::map<std::string, double>& point) {
  std::vector<double> xv;
  for (int j = 0; j < s.ex.n_mut; ++j) xv.push_back(s.x[static_cast<size_t>(j)].eval_positive(point));
  std::vector<double> out;
  for (size_t a = 0; a < Z.rows(); ++a) {
    double lv = 0;
    for (size_t j = 0; j < Z.cols(); ++j) lv -= Z(a, j).get_d() * std::log(xv[j]);
    out.push_back(std::exp(lv));
  }
  return out;
}

bool is_admissible(const ExchangeData& e, const IntMat& W) {
  RatMat em = e.eps_hat_mut(), wm = w_mut(e, W);
  RatMat st(em.rows() + wm.rows(), em.cols());
  for (size_t i = 0; i < em.rows(); ++i)
    for (size_t j = 0; j < em.cols(); ++j) st(i, j) = em(i, j);
  for (size_t i = 0; i < wm.rows(); ++i)
    for (size_t j = 0; j < wm.cols(); ++j) st(em.rows() + i, j) = wm(i, j);
  return rank(st) == rank(em);
}

IsotropyReport check_isotropy(const SuperSeed& s) {
  IsotropyReport rep;
  rep.admissible = is_admissible(s.ex, s.W);
  RatMat wm = w_mut(s), em = s.ex.eps_hat_mut();
  rep.left_kernel = (wm * em).is_zero();
  if (rep.admissible) {
    RatMat Z = solve_left(em, wm);
    rep.isotropic = (Z * wm.transpose()).is_zero();
  }
  return rep;
}

DualData langlands_dual(const SuperSeed& s) {
  size_t n = s.ex.n();
  IntMat ev(n, std::vector<long>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat v = -Rat(s.ex.eps[j][i] * s.ex.d[j]) / s.ex.d[i];
      if (v.get_den() != 1) throw std::domain_error("dual exchange matrix is not integral");
      ev[i][j] = v.get_num().get_si();
    }
  DualData out{make_exchange(ev, s.ex.d, s.ex.n_frozen), {}};
  for (auto& row : s.W) {
    std::vector<long> r(n, 0);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) r[j] += row[i] * s.ex.eps[i][j];
    out.W.push_back(r);
  }
  return out;
}

SuperSeed odd_gauge(const SuperSeed& s, const IntMat& G) {
  if (G.size() != s.r()) throw std::invalid_argument("gauge matrix has wrong size");
  Rat dg = det(RatMat::from_int(G));
  if (abs(dg) != 1) throw std::invalid_argument("gauge matrix is not unimodular");
  for (auto& p : s.theta_prefactor)
    if (!p.is_one()) throw std::invalid_argument("odd gauge needs trivial prefactors");
  SuperSeed out = s;
  for (size_t a = 0; a < s.r(); ++a)
    for (size_t j = 0; j < s.ex.n(); ++j) {
      long v = 0;
      for (size_t b = 0; b < s.r(); ++b) v += G[a][b] * s.W[b][j];
      out.W[a][j] = v;
    }
  return out;
}

std::vector<RelationCheck> check_primed_relations(const SuperSeed& base, const SuperSeed& primed) {
  std::vector<RelationCheck> out;
  size_t n = base.ex.n();
  RatMat eh = primed.ex.eps_hat();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      RelationCheck c;
      c.kind = "XX";
      c.i = static_cast<int>(i);
      c.j = static_cast<int>(j);
      c.expected = eh(i, j);
      GradedElem b = bracket(primed.x[i], primed.x[j], base);
      c.observed = b.coeff({}) / (primed.x[i] * primed.x[j]);
      c.ok = b.terms().size() <= 1 && c.observed == SFRat(c.expected);
      out.push_back(c);
    }
  for (size_t a = 0; a < primed.r(); ++a) {
    GradedElem th = GradedElem::term(primed.theta_prefactor[a], {static_cast<int>(a)});
    for (size_t i = 0; i < n; ++i) {
      RelationCheck c;
      c.kind = "thetaX";
      c.i = static_cast<int>(a);
      c.j = static_cast<int>(i);
      c.expected = primed.W[a][i];
      GradedElem b = bracket(th, primed.x[i], base);
      c.observed = b.coeff({static_cast<int>(a)}) / (primed.theta_prefactor[a] * primed.x[i]);
      c.ok = b.terms().size() <= 1 && c.observed == SFRat(c.expected);
      out.push_back(c);
    }
  }
  return out;
}

bool all_ok(const std::vector<RelationCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.ok; });
}

SuperSeed random_admissible_superseed(std::mt19937_64& g, int n_max, int r_max, int emax) {
  auto ri = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); };
  size_t n = static_cast<size_t>(ri(2, n_max));
  IntMat eps(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      eps[i][j] = ri(-emax, emax);
      eps[j][i] = -eps[i][j];
    }
  ExchangeData e = make_exchange(eps);
  size_t r = static_cast<size_t>(ri(1, r_max));
  IntMat W(r, std::vector<long>(n, 0));
  bool invertible = det(e.eps_hat_mut()) != 0;
  for (size_t a = 0; a < r; ++a) {
    if (invertible) {
      for (auto& v : W[a]) v = ri(-2, 2);
    } else {
      // integer combination of rows of eps lies in its row space
      for (size_t i = 0; i < n; ++i) {
        long y = ri(-1, 1);
        for (size_t j = 0; j < n; ++j) W[a][j] += y * eps[i][j];
      }
    }
  }
  return initial_superseed(e, W);
}

}  // namespace sfg
