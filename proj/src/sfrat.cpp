#include "sfg/sfrat.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sfg {

namespace {

void split_name(const std::string& s, std::string& prefix, std::string& digits) {
  size_t i = s.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
  prefix = s.substr(0, i);
  digits = s.substr(i);
}

}  // namespace

bool var_less(const std::string& a, const std::string& b) {
  std::string pa, da, pb, db;
  split_name(a, pa, da);
  split_name(b, pb, db);
  if (pa != pb) return pa < pb;
  if (da.size() != db.size()) return da.size() < db.size();
  if (da != db) return da < db;
  return a < b;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), var_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_[Exps{}] = Rat(c);
}

LaurentPoly::LaurentPoly(const Rat& c) {
  if (c != 0) terms_[Exps{}] = c;
}

LaurentPoly LaurentPoly::variable(const std::string& name, int power) {
  LaurentPoly p;
  p.vars_ = {name};
  p.terms_[Exps{power}] = 1;
  return p;
}

LaurentPoly LaurentPoly::monomial(const std::vector<std::string>& vars, const Exps& e, const Rat& c) {
  if (vars.size() != e.size()) throw std::invalid_argument("monomial: exponent length mismatch");
  if (!std::is_sorted(vars.begin(), vars.end(), var_less))
    throw std::invalid_argument("monomial: variables must be sorted");
  LaurentPoly p;
  p.vars_ = vars;
  if (c != 0) p.terms_[e] = c;
  return p;
}

void LaurentPoly::clean() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_.begin()->first)
    if (e != 0) return false;
  return true;
}

bool LaurentPoly::all_nonneg() const {
  for (auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

Rat LaurentPoly::constant_term() const {
  Exps z(vars_.size(), 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? Rat(0) : it->second;
}

LaurentPoly LaurentPoly::over(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> idx(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i], var_less);
    if (it == vars.end() || *it != vars_[i]) throw std::logic_error("LaurentPoly::over: not a superset");
    idx[i] = static_cast<int>(it - vars.begin());
  }
  LaurentPoly out;
  out.vars_ = vars;
  for (auto& [e, c] : terms_) {
    Exps ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[idx[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

LaurentPoly LaurentPoly::trimmed() const {
  std::vector<bool> used(vars_.size(), false);
  for (auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return *this;
  LaurentPoly out;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) out.vars_.push_back(vars_[i]);
  for (auto& [e, c] : terms_) {
    Exps ne;
    for (size_t i = 0; i < e.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

Exps LaurentPoly::min_exponents() const {
  Exps m(vars_.size(), 0);
  bool first = true;
  for (auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exps LaurentPoly::max_exponents() const {
  Exps m(vars_.size(), 0);
  bool first = true;
  for (auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

int LaurentPoly::total_degree() const {
  int d = 0;
  bool first = true;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = first ? s : std::max(d, s);
    first = false;
  }
  return d;
}

int LaurentPoly::degree_in(const std::string& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return 0;
  size_t i = it - vars_.begin();
  int d = 0;
  bool first = true;
  for (auto& [e, c] : terms_) {
    d = first ? e[i] : std::max(d, e[i]);
    first = false;
  }
  return d;
}

bool LaurentPoly::is_polynomial() const {
  for (auto& [e, c] : terms_)
    for (int x : e)
      if (x < 0) return false;
  return true;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.vars_ != vars_) {
    auto vs = merge_vars(vars_, o.vars_);
    *this = over(vs);
    return *this += o.over(vs);
  }
  for (auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (o.vars_ != vars_) {
    auto vs = merge_vars(vars_, o.vars_);
    *this = over(vs);
    return *this *= o.over(vs);
  }
  std::map<Exps, Rat> out;
  Exps e(vars_.size());
  for (auto& [ea, ca] : terms_)
    for (auto& [eb, cb] : o.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  terms_ = std::move(out);
  clean();
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  return (a - b).is_zero();
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
  if (c == 0) {
    LaurentPoly z;
    z.vars_ = vars_;
    return z;
  }
  LaurentPoly out = *this;
  for (auto& [e, x] : out.terms_) x *= c;
  return out;
}

LaurentPoly LaurentPoly::shifted(const std::vector<std::string>& vars, const Exps& shift) const {
  auto vs = merge_vars(vars_, vars);
  LaurentPoly a = over(vs);
  Exps s(vs.size(), 0);
  for (size_t i = 0; i < vars.size(); ++i) {
    auto it = std::lower_bound(vs.begin(), vs.end(), vars[i], var_less);
    s[it - vs.begin()] += shift[i];
  }
  LaurentPoly out;
  out.vars_ = vs;
  for (auto& [e, c] : a.terms_) {
    Exps ne = e;
    for (size_t i = 0; i < ne.size(); ++i) ne[i] += s[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1L);
  result = result.over(vars_);
  LaurentPoly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::euler_derivative(const std::string& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  LaurentPoly out;
  out.vars_ = vars_;
  if (it == vars_.end()) return out;
  size_t i = it - vars_.begin();
  for (auto& [e, c] : terms_)
    if (e[i] != 0) out.terms_.emplace(e, c * e[i]);
  return out;
}

LaurentPoly LaurentPoly::substitute(const std::string& v, const Rat& value) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return *this;
  size_t i = it - vars_.begin();
  LaurentPoly out;
  out.vars_ = vars_;
  for (auto& [e, c] : terms_) {
    Rat f = c;
    if (e[i] < 0 && value == 0) throw std::domain_error("substitute: negative power of a variable set to zero");
    Rat b = e[i] >= 0 ? value : Rat(1) / value;
    for (int k = 0; k < std::abs(e[i]); ++k) f *= b;
    Exps ne = e;
    ne[i] = 0;
    out.terms_[ne] += f;
  }
  out.clean();
  return out.trimmed();
}

Rat LaurentPoly::eval(const std::map<std::string, Rat>& point) const {
  std::vector<Rat> vals(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it == point.end()) throw std::invalid_argument("eval: missing value for " + vars_[i]);
    vals[i] = it->second;
  }
  Rat s = 0;
  for (auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && vals[i] == 0) throw std::domain_error("eval: division by zero");
      mpz_class nn = vals[i].get_num(), dd = vals[i].get_den();
      unsigned k = static_cast<unsigned>(std::abs(e[i]));
      mpz_class pn, pd;
      mpz_pow_ui(pn.get_mpz_t(), nn.get_mpz_t(), k);
      mpz_pow_ui(pd.get_mpz_t(), dd.get_mpz_t(), k);
      Rat p = e[i] > 0 ? Rat(pn, pd) : Rat(pd, pn);
      p.canonicalize();
      t *= p;
    }
    s += t;
  }
  return s;
}

double LaurentPoly::eval(const std::map<std::string, double>& point) const {
  std::vector<double> vals(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it == point.end()) throw std::invalid_argument("eval: missing value for " + vars_[i]);
    vals[i] = it->second;
  }
  double s = 0;
  for (auto& [e, c] : terms_) {
    double t = c.get_d();
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= std::pow(vals[i], e[i]);
    s += t;
  }
  return s;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : terms_) {
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string t;
    if (mono.empty())
      t = c.get_str();
    else if (c == 1)
      t = mono;
    else if (c == -1)
      t = "-" + mono;
    else
      t = c.get_str() + "*" + mono;
    if (first)
      out = t;
    else if (t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

// ---------------------------------------------------------------- polynomial gcd

namespace {

int deg_at(const LaurentPoly& p, size_t i) {
  int d = -1;
  for (auto& [e, c] : p.terms()) d = std::max(d, e[i]);
  return d;
}

// Coefficients of p viewed as a polynomial in variable i.
std::map<int, LaurentPoly> coeffs_at(const LaurentPoly& p, size_t i) {
  std::map<int, LaurentPoly> out;
  for (auto& [e, c] : p.terms()) {
    Exps ne = e;
    int k = ne[i];
    ne[i] = 0;
    auto& slot = out[k];
    if (slot.vars().empty() && slot.is_zero()) slot = LaurentPoly(0L).over(p.vars());
    slot += LaurentPoly::monomial(p.vars(), ne, c);
  }
  return out;
}

LaurentPoly lead_at(const LaurentPoly& p, size_t i) {
  auto cs = coeffs_at(p, i);
  return cs.rbegin()->second;
}

LaurentPoly var_power(const std::vector<std::string>& vars, size_t i, int k) {
  Exps e(vars.size(), 0);
  e[i] = k;
  return LaurentPoly::monomial(vars, e, 1);
}

LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly content_at(const LaurentPoly& p, size_t i) {
  auto cs = coeffs_at(p, i);
  LaurentPoly g;
  bool first = true;
  for (auto& [k, c] : cs) {
    g = first ? primitive_part(c) : gcd_rec(g, c);
    first = false;
    if (g.is_constant()) break;
  }
  return g;
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly q;
  if (!poly_divide_exact(a, b, q)) throw std::logic_error("gcd: inexact division");
  return q;
}

LaurentPoly primpart_at(const LaurentPoly& p, size_t i) {
  return primitive_part(exact_div(p, content_at(p, i)));
}

LaurentPoly prem_at(const LaurentPoly& a, const LaurentPoly& b, size_t i) {
  LaurentPoly r = a;
  int db = deg_at(b, i);
  LaurentPoly lcb = lead_at(b, i);
  while (!r.is_zero()) {
    int dr = deg_at(r, i);
    if (dr < db) break;
    LaurentPoly lcr = lead_at(r, i);
    r = r * lcb - lcr * var_power(a.vars(), i, dr - db) * b;
    r = primitive_part(r);
  }
  return r;
}

// Univariate images modulo a word-size prime give a cheap upper bound on the gcd degree.
constexpr uint64_t kPrime = 4611686018427387847ULL;  // 2^62 - 57

uint64_t mulmod(uint64_t a, uint64_t b) { return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime); }

uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a) { return powmod(a, kPrime - 2); }

// Image of p (integer coefficients) in variable i, other variables set to pt, reduced mod kPrime.
std::vector<uint64_t> modular_image(const LaurentPoly& p, size_t i, const std::vector<uint64_t>& pt) {
  std::vector<uint64_t> out(static_cast<size_t>(std::max(deg_at(p, i), 0)) + 1, 0);
  for (auto& [e, c] : p.terms()) {
    static const mpz_class modulus(static_cast<unsigned long>(kPrime));
    mpz_class q;
    mpz_fdiv_r(q.get_mpz_t(), c.get_num_mpz_t(), modulus.get_mpz_t());
    uint64_t cm = mpz_get_ui(q.get_mpz_t());
    for (size_t j = 0; j < e.size(); ++j)
      if (j != i && e[j] != 0) cm = mulmod(cm, powmod(pt[j], static_cast<uint64_t>(e[j])));
    uint64_t& slot = out[static_cast<size_t>(e[i])];
    slot = (slot + cm) % kPrime;
  }
  return out;
}

int modular_gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  auto trim = [](std::vector<uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    uint64_t inv = invmod(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      uint64_t f = mulmod(a.back(), inv);
      size_t shift = a.size() - b.size();
      for (size_t k = 0; k < b.size(); ++k) a[shift + k] = (a[shift + k] + kPrime - mulmod(f, b[k])) % kPrime;
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Upper bound for the degree of gcd(a,b) in variable i, or -1 when no usable evaluation
// point was found.  The bound holds because the leading coefficients survive the image.
int gcd_degree_bound_at(const LaurentPoly& a0, const LaurentPoly& b0, size_t i) {
  LaurentPoly a = primitive_part(a0), b = primitive_part(b0);
  size_t n = a.vars().size();
  uint64_t seed = 0x9e3779b97f4a7c15ULL;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<uint64_t> pt(n);
    for (size_t j = 0; j < n; ++j) {
      seed ^= seed << 13;
      seed ^= seed >> 7;
      seed ^= seed << 17;
      pt[j] = 2 + seed % (kPrime - 3);
    }
    auto ia = modular_image(a, i, pt), ib = modular_image(b, i, pt);
    if (static_cast<int>(ia.size()) - 1 != deg_at(a, i) || static_cast<int>(ib.size()) - 1 != deg_at(b, i)) continue;
    if (ia.back() == 0 || ib.back() == 0) continue;
    return modular_gcd_degree(ia, ib);
  }
  return -1;
}

LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b) {
  const auto& vs = a.vars();
  LaurentPoly one = LaurentPoly(1L).over(vs);
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return one;
  // Pick the main variable: one where the gcd may have positive degree, lowest input degree first.
  size_t idx = vs.size();
  int best = 0;
  bool any_shared = false;
  for (size_t i = 0; i < vs.size(); ++i) {
    int da = deg_at(a, i), db = deg_at(b, i);
    if (da <= 0 && db <= 0) continue;
    if (da == 0 || db == 0) {
      // the gcd cannot involve a variable missing from one side
      if (da == 0) return gcd_rec(a, content_at(b, i));
      return gcd_rec(content_at(a, i), b);
    }
    any_shared = true;
    int bound = gcd_degree_bound_at(a, b, i);
    if (bound == 0) continue;
    int cost = std::min(da, db);
    if (idx == vs.size() || cost < best) {
      idx = i;
      best = cost;
    }
  }
  if (!any_shared || idx == vs.size()) return one;
  int da = deg_at(a, idx), db = deg_at(b, idx);
  if (da == 0) return gcd_rec(a, content_at(b, idx));
  if (db == 0) return gcd_rec(content_at(a, idx), b);
  LaurentPoly ca = content_at(a, idx), cb = content_at(b, idx);
  LaurentPoly g = gcd_rec(ca, cb);
  LaurentPoly pa = primitive_part(exact_div(a, ca)), pb = primitive_part(exact_div(b, cb));
  if (deg_at(pa, idx) < deg_at(pb, idx)) std::swap(pa, pb);
  while (true) {
    LaurentPoly r = prem_at(pa, pb, idx);
    if (r.is_zero()) break;
    if (deg_at(r, idx) == 0) {
      pb = one;
      break;
    }
    pa = pb;
    pb = primpart_at(r, idx);
  }
  return primitive_part(g * primpart_at(pb, idx));
}

}  // namespace

LaurentPoly primitive_part(const LaurentPoly& p, Rat* content) {
  if (p.is_zero()) {
    if (content) *content = 0;
    return p;
  }
  mpz_class l = 1, g = 0;
  for (auto& [e, c] : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  Rat f(l, g);
  f.canonicalize();
  if (p.terms().rbegin()->second < 0) f = -f;
  if (content) *content = 1 / f;
  return p.scaled(f);
}

bool poly_divide_exact(const LaurentPoly& a0, const LaurentPoly& b0, LaurentPoly& q) {
  if (b0.is_zero()) throw std::domain_error("division by zero polynomial");
  auto vs = merge_vars(a0.vars(), b0.vars());
  LaurentPoly a = a0.over(vs), b = b0.over(vs);
  q = LaurentPoly(0L).over(vs);
  const auto& [eb, cb] = *b.terms().rbegin();
  LaurentPoly r = a;
  while (!r.is_zero()) {
    const auto& [er, cr] = *r.terms().rbegin();
    Exps e(vs.size());
    for (size_t i = 0; i < vs.size(); ++i) {
      e[i] = er[i] - eb[i];
      if (e[i] < 0) return false;
    }
    LaurentPoly t = LaurentPoly::monomial(vs, e, cr / cb);
    q += t;
    r -= t * b;
  }
  return true;
}

LaurentPoly poly_gcd(const LaurentPoly& a0, const LaurentPoly& b0) {
  if (!a0.is_polynomial() || !b0.is_polynomial()) throw std::invalid_argument("poly_gcd: negative exponents");
  auto vs = merge_vars(a0.vars(), b0.vars());
  return gcd_rec(a0.over(vs), b0.over(vs)).trimmed();
}

// ---------------------------------------------------------------- SFRat

int& SFRat::gcd_degree_bound() {
  static int bound = 16;
  return bound;
}

namespace {

Exps negated(Exps e) {
  for (int& x : e) x = -x;
  return e;
}

// Common polynomial factor of a Laurent numerator n and a polynomial d, or 1 when the
// gcd is trivial, too expensive, or would spoil nonnegative coefficients.
LaurentPoly common_factor(const LaurentPoly& n, const LaurentPoly& d, LaurentPoly& n_out, LaurentPoly& d_out) {
  n_out = n;
  d_out = d;
  if (n.is_zero() || d.is_constant() || n.is_constant()) return LaurentPoly(1L);
  Exps nm = n.min_exponents();
  LaurentPoly pn = n.shifted(n.vars(), negated(nm));
  int bound = SFRat::gcd_degree_bound();
  if (pn.total_degree() > bound || d.total_degree() > bound) return LaurentPoly(1L);
  LaurentPoly g = poly_gcd(pn, d);
  if (g.is_constant()) return LaurentPoly(1L);
  LaurentPoly pn2, d2;
  poly_divide_exact(pn, g, pn2);
  poly_divide_exact(d, g, d2);
  bool was_nonneg = n.all_nonneg() && d.all_nonneg();
  if (was_nonneg && !(pn2.all_nonneg() && d2.all_nonneg())) return LaurentPoly(1L);
  n_out = pn2.shifted(n.vars(), nm);
  d_out = d2;
  return g;
}

}  // namespace

SFRat::SFRat(long c) : num_(c), den_(1) { sf_ = c > 0; }
SFRat::SFRat(const Rat& c) : num_(c), den_(1) { sf_ = c > 0; }
SFRat::SFRat(const LaurentPoly& num) : num_(num.trimmed()), den_(1) { sf_ = !num_.is_zero() && num_.all_nonneg(); }
SFRat::SFRat(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) { normalize(true); }

// Moves monomial content of the denominator into the numerator, optionally cancels the
// polynomial gcd, and scales the denominator to leading coefficient 1.
void SFRat::normalize(bool cancel) {
  if (den_.is_zero()) throw std::domain_error("SFRat: zero denominator");
  if (num_.is_zero()) {
    num_ = LaurentPoly(0L);
    den_ = LaurentPoly(1L);
    sf_ = false;
    return;
  }
  auto vs = merge_vars(num_.vars(), den_.vars());
  num_ = num_.over(vs);
  den_ = den_.over(vs);
  Exps m = negated(den_.min_exponents());
  num_ = num_.shifted(vs, m);
  den_ = den_.shifted(vs, m);
  if (cancel && !den_.is_constant()) {
    LaurentPoly n2, d2;
    common_factor(num_, den_, n2, d2);
    num_ = n2.over(vs);
    den_ = d2.over(vs);
  }
  if (den_.is_constant()) {
    num_ = num_.scaled(1 / den_.constant_term());
    den_ = LaurentPoly(1L);
  } else {
    Rat lead = den_.terms().rbegin()->second;
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
  num_ = num_.trimmed();
  den_ = den_.trimmed();
  sf_ = !num_.is_zero() && num_.all_nonneg() && den_.all_nonneg();
}

SFRat SFRat::from_parts(const LaurentPoly& num, const LaurentPoly& den, bool cancel) {
  SFRat r;
  r.num_ = num;
  r.den_ = den;
  r.normalize(cancel);
  return r;
}

bool SFRat::is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_term() == den_.constant_term(); }

std::vector<std::string> SFRat::vars() const { return merge_vars(num_.vars(), den_.vars()); }

SFRat SFRat::operator-() const {
  SFRat r = *this;
  r.num_ = -r.num_;
  r.sf_ = false;
  return r;
}

// Sums and products cancel against the smaller pieces first (reduced inputs give reduced output).
SFRat operator+(const SFRat& a, const SFRat& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return SFRat::from_parts(a.num_ + b.num_, a.den_, true);
  LaurentPoly g = LaurentPoly(1L), da = a.den_, db = b.den_;
  if (!a.den_.is_constant() && !b.den_.is_constant()) {
    int bound = SFRat::gcd_degree_bound();
    if (a.den_.total_degree() <= bound && b.den_.total_degree() <= bound) {
      g = poly_gcd(a.den_, b.den_);
      if (!g.is_constant()) {
        poly_divide_exact(a.den_, g, da);
        poly_divide_exact(b.den_, g, db);
      } else {
        g = LaurentPoly(1L);
      }
    }
  }
  LaurentPoly t = a.num_ * db + b.num_ * da;
  LaurentPoly t2 = t, g2 = g;
  if (!g.is_constant()) common_factor(t, g, t2, g2);
  return SFRat::from_parts(t2, da * db * g2, false);
}

SFRat operator-(const SFRat& a, const SFRat& b) { return a + (-b); }

SFRat operator*(const SFRat& a, const SFRat& b) {
  if (a.is_zero() || b.is_zero()) return SFRat();
  LaurentPoly n1, d2, n2, d1;
  common_factor(a.num_, b.den_, n1, d2);
  common_factor(b.num_, a.den_, n2, d1);
  return SFRat::from_parts(n1 * n2, d1 * d2, false);
}

SFRat operator/(const SFRat& a, const SFRat& b) { return a * b.inverse(); }

SFRat SFRat::inverse() const {
  if (is_zero()) throw std::domain_error("SFRat: inverse of zero");
  return from_parts(den_, num_, false);
}

SFRat SFRat::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return SFRat(1L);
  return from_parts(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), false);
}

bool SFRat::equals(const SFRat& o) const { return (num_ * o.den_ - o.num_ * den_).is_zero(); }

SFRat SFRat::euler_derivative(const std::string& v) const {
  LaurentPoly dn = num_.euler_derivative(v), dd = den_.euler_derivative(v);
  if (dd.is_zero()) return SFRat(dn, den_);
  return SFRat(dn * den_ - num_ * dd, den_ * den_);
}

SFRat SFRat::substitute(const std::string& v, const Rat& value) const {
  LaurentPoly d = den_.substitute(v, value);
  if (d.is_zero()) throw std::domain_error("substitute: denominator vanishes");
  return SFRat(num_.substitute(v, value), d);
}

namespace {

template <class T>
void require_positive_point(const SFRat& r, const std::map<std::string, T>& point) {
  for (auto& v : r.vars()) {
    auto it = point.find(v);
    if (it == point.end()) throw std::invalid_argument("eval_positive: missing value for " + v);
    if (!(it->second > 0)) throw std::domain_error("eval_positive: nonpositive value for " + v);
  }
}

}  // namespace

Rat SFRat::eval(const std::map<std::string, Rat>& point) const {
  Rat d = den_.eval(point);
  if (d == 0) throw std::domain_error("eval: denominator vanishes");
  return num_.eval(point) / d;
}

double SFRat::eval(const std::map<std::string, double>& point) const {
  double d = den_.eval(point);
  if (d == 0) throw std::domain_error("eval: denominator vanishes");
  return num_.eval(point) / d;
}

Rat SFRat::eval_positive(const std::map<std::string, Rat>& point) const {
  require_positive_point(*this, point);
  return eval(point);
}

double SFRat::eval_positive(const std::map<std::string, double>& point) const {
  require_positive_point(*this, point);
  return eval(point);
}

std::string SFRat::str() const {
  if (den_.is_constant() && den_.constant_term() == 1) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const SFRat& r) { return os << r.str(); }

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  SFRat run() {
    SFRat r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SFRat expr() {
    SFRat r = term();
    while (true) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  SFRat term() {
    SFRat r = unary();
    while (true) {
      if (eat('*'))
        r = r * unary();
      else if (eat('/'))
        r = r / unary();
      else
        return r;
    }
  }

  SFRat unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    SFRat base = primary();
    if (eat('^')) return base.pow(integer());
    return base;
  }

  int integer() {
    bool paren = eat('(');
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer exponent");
    int v = std::stoi(s_.substr(st, pos_ - st));
    if (paren && !eat(')')) fail("expected ')'");
    return neg ? -v : v;
  }

  SFRat primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SFRat r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string whole = s_.substr(st, pos_ - st);
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        size_t fs = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string frac = s_.substr(fs, pos_ - fs);
        mpz_class n(whole + frac, 10), d(1);
        for (size_t i = 0; i < frac.size(); ++i) d *= 10;
        Rat q(n, d);
        q.canonicalize();
        return SFRat(q);
      }
      return SFRat(Rat(mpz_class(whole, 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return SFRat::var(s_.substr(st, pos_ - st));
    }
    fail("unexpected character");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

SFRat SFRat::parse(const std::string& text) { return Parser(text).run(); }

}  // namespace sfg
