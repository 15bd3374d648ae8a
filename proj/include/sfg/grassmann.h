#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfg/sfrat.h"

namespace sfg {

template <class C>
using Mat = std::vector<std::vector<C>>;

inline bool coeff_zero(const Rat& c) { return c == 0; }
inline bool coeff_zero(const SFRat& c) { return c.is_zero(); }
inline std::string coeff_str(const Rat& c) { return c.get_str(); }
inline std::string coeff_str(const SFRat& c) { return c.str(); }

// Sign of the permutation sorting v (0 if v has a repeat).
int sort_sign(std::vector<int>& v);
// All k-subsets of {0..n-1} in lex order.
std::vector<std::vector<int>> subsets(int n, int k);

// Exterior algebra element.  Generators are integers; keys are sorted ascending.
template <class C>
class ExtElem {
 public:
  using Key = std::vector<int>;
  ExtElem() = default;
  explicit ExtElem(const C& c) {
    if (!coeff_zero(c)) terms_[{}] = c;
  }
  static ExtElem gen(int i) { return term(C(1L), {i}); }
  // Coefficient times the wedge of gens in the listed order.
  static ExtElem term(const C& c, Key gens) {
    ExtElem e;
    int s = sort_sign(gens);
    if (s != 0) e.add(gens, s > 0 ? c : C(-c));
    return e;
  }
  // sum_j coeffs[j] * eta_{gens[j]}
  static ExtElem linear(const std::vector<C>& coeffs, const std::vector<int>& gens) {
    ExtElem e;
    for (size_t j = 0; j < coeffs.size(); ++j) e = e + term(coeffs[j], {gens[j]});
    return e;
  }

  const std::map<Key, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  C coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? C(0L) : it->second;
  }

  ExtElem operator-() const {
    ExtElem r;
    for (auto& [k, c] : terms_) r.terms_.emplace(k, C(-c));
    return r;
  }
  friend ExtElem operator+(const ExtElem& a, const ExtElem& b) {
    ExtElem r = a;
    for (auto& [k, c] : b.terms_) r.add(k, c);
    return r;
  }
  friend ExtElem operator-(const ExtElem& a, const ExtElem& b) { return a + (-b); }
  // wedge product
  friend ExtElem operator*(const ExtElem& a, const ExtElem& b) {
    ExtElem r;
    for (auto& [ka, ca] : a.terms_)
      for (auto& [kb, cb] : b.terms_) {
        Key k = ka;
        k.insert(k.end(), kb.begin(), kb.end());
        int s = sort_sign(k);
        if (s == 0) continue;
        C c = ca * cb;
        r.add(k, s > 0 ? c : C(-c));
      }
    return r;
  }
  friend bool operator==(const ExtElem& a, const ExtElem& b) { return (a - b).is_zero(); }
  ExtElem scaled(const C& s) const {
    ExtElem r;
    for (auto& [k, c] : terms_) r.add(k, c * s);
    return r;
  }

  // eta_j -> sum_i G[j][i] eta_i for j < G.size(); other generators are left alone.
  ExtElem substitute(const Mat<C>& G) const {
    ExtElem r;
    for (auto& [k, c] : terms_) {
      ExtElem p(c);
      for (int j : k) {
        if (static_cast<size_t>(j) < G.size()) {
          std::vector<int> gens(G[static_cast<size_t>(j)].size());
          for (size_t i = 0; i < gens.size(); ++i) gens[i] = static_cast<int>(i);
          p = p * linear(G[static_cast<size_t>(j)], gens);
        } else {
          p = p * gen(j);
        }
      }
      r = r + p;
    }
    return r;
  }

  std::string str(const std::string& name = "eta") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_str(c) << ")";
      for (int g : k) os << "*" << name << g + 1;
    }
    return os.str();
  }

 private:
  void add(const Key& k, const C& c) {
    if (coeff_zero(c)) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second = it->second + c;
    if (coeff_zero(it->second)) terms_.erase(it);
  }
  std::map<Key, C> terms_;
};

// prod_{a} (sum_j M[a][j] eta_{gens[j]})
template <class C>
ExtElem<C> berezin_delta(const Mat<C>& M, const std::vector<int>& gens) {
  if (!M.empty() && M.size() > gens.size()) throw std::invalid_argument("more linear forms than generators");
  ExtElem<C> e(C(1L));
  for (auto& row : M) {
    if (row.size() != gens.size()) throw std::invalid_argument("row length differs from generator count");
    e = e * ExtElem<C>::linear(row, gens);
  }
  return e;
}

// Coefficient of eta_{o1} ... eta_{on} with the given orientation.
template <class C>
C top_coefficient(const ExtElem<C>& e, std::vector<int> ordered) {
  int s = sort_sign(ordered);
  if (s == 0) return C(0L);
  C c = e.coeff(ordered);
  return s > 0 ? c : C(-c);
}

// Gaussian elimination over a field; pivots on any nonzero entry.
template <class C>
C det_generic(Mat<C> m) {
  size_t n = m.size();
  C d(1L);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && coeff_zero(m[p][c])) ++p;
    if (p == n) return C(0L);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d = d * m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (coeff_zero(m[r][c])) continue;
      C f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
    }
  }
  return d;
}

template <class C>
Mat<C> columns(const Mat<C>& M, const std::vector<int>& cols) {
  Mat<C> out(M.size());
  for (size_t a = 0; a < M.size(); ++a)
    for (int j : cols) out[a].push_back(M[a][static_cast<size_t>(j)]);
  return out;
}

template <class C>
Mat<C> mat_mul(const Mat<C>& A, const Mat<C>& B) {
  size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
  Mat<C> out(n, std::vector<C>(m, C(0L)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (coeff_zero(A[i][l])) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] = out[i][j] + A[i][l] * B[l][j];
    }
  return out;
}

// sum over r-subsets T of the columns: det(M|_T) eta^T
template <class C>
ExtElem<C> cauchy_binet_expansion(const Mat<C>& M, const std::vector<int>& gens) {
  ExtElem<C> e;
  int r = static_cast<int>(M.size()), f = static_cast<int>(gens.size());
  for (auto& T : subsets(f, r)) {
    std::vector<int> g;
    for (int t : T) g.push_back(gens[static_cast<size_t>(t)]);
    e = e + ExtElem<C>::term(det_generic(columns(M, T)), g);
  }
  return e;
}

}  // namespace sfg
