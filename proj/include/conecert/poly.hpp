#pragma once

// Dense univariate polynomials over an exact coefficient ring.
//
// Coefficients are stored in ascending degree order without trailing zeros.
// The coefficient type must be default-constructible to zero and provide
// is_zero(const T&) via unqualified lookup.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace conecert {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational inverse(const Rational& q) {
  if (is_zero(q)) throw std::domain_error("division by zero");
  return 1 / q;
}

template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(T c) {  // NOLINT(google-explicit-constructor): constants promote
    if (!is_zero(c)) c_.push_back(std::move(c));
  }
  Poly(std::initializer_list<T> cs) : c_(cs) { trim(); }
  explicit Poly(std::vector<T> cs) : c_(std::move(cs)) { trim(); }

  static Poly monomial(T c, size_t k) {
    if (is_zero(c)) return Poly();
    std::vector<T> v(k + 1);
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(T(1), 1); }

  bool is_zero_poly() const { return c_.empty(); }
  // -1 for the zero polynomial
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](size_t k) const { return k < c_.size() ? c_[k] : T(); }
  const T& lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  // lowest index with a nonzero coefficient; -1 for zero
  long valuation() const {
    for (size_t i = 0; i < c_.size(); ++i) {
      if (!is_zero(c_[i])) return static_cast<long>(i);
    }
    return -1;
  }
  bool is_constant() const { return c_.size() <= 1; }

  void set(size_t k, T v) {
    if (k >= c_.size()) c_.resize(k + 1);
    c_[k] = std::move(v);
    trim();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (!is_zero(a.c_[i] - b.c_[i])) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) {
        r[i] = a.c_[i] + b.c_[i];
      } else if (i < a.c_.size()) {
        r[i] = a.c_[i];
      } else {
        r[i] = b.c_[i];
      }
    }
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    std::vector<T> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const T& s) const {
    std::vector<T> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
    return Poly(std::move(r));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly pow(unsigned k) const {
    Poly r(T(1));
    Poly b = *this;
    while (k > 0) {
      if (k & 1U) r = r * b;
      k >>= 1U;
      if (k > 0) b = b * b;
    }
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(r));
  }

  // Horner evaluation in any ring that accepts T by multiplication/addition.
  template <class U>
  U eval(const U& x, U zero) const {
    U acc = std::move(zero);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  T operator()(const T& x) const { return eval<T>(x, T()); }

  // Composition p(q).
  Poly compose(const Poly& q) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * q + Poly(c_[i]);
    return acc;
  }

  // Truncation mod x^k.
  Poly truncated(size_t k) const {
    if (c_.size() <= k) return *this;
    return Poly(std::vector<T>(c_.begin(), c_.begin() + static_cast<long>(k)));
  }
  // Multiplies by x^k (k >= 0) or divides by x^{-k} dropping lower terms.
  Poly shifted(long k) const {
    if (c_.empty()) return Poly();
    if (k >= 0) {
      std::vector<T> r(static_cast<size_t>(k));
      r.insert(r.end(), c_.begin(), c_.end());
      return Poly(std::move(r));
    }
    size_t drop = static_cast<size_t>(-k);
    if (drop >= c_.size()) return Poly();
    return Poly(std::vector<T>(c_.begin() + static_cast<long>(drop), c_.end()));
  }
  // x^deg p(1/x)
  Poly reversed(size_t deg) const {
    std::vector<T> r(deg + 1);
    for (size_t i = 0; i < c_.size() && i <= deg; ++i) r[deg - i] = c_[i];
    return Poly(std::move(r));
  }

  // Field-coefficient operations.
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    if (b.c_.empty()) throw std::domain_error("polynomial division by zero");
    if (c_.size() < b.c_.size()) return {Poly(), *this};
    std::vector<T> r = c_;
    std::vector<T> q(c_.size() - b.c_.size() + 1);
    const T inv = inverse(b.c_.back());
    const size_t db = b.c_.size() - 1;
    for (size_t i = q.size(); i-- > 0;) {
      T f = r[i + db] * inv;
      if (is_zero(f)) continue;
      for (size_t j = 0; j <= db; ++j) r[i + j] = r[i + j] - f * b.c_[j];
      q[i] = std::move(f);
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }
  // exact division; throws if the remainder is nonzero
  Poly exact_div(const Poly& b) const {
    auto [q, r] = divmod(b);
    if (!r.is_zero_poly()) throw std::logic_error("inexact polynomial division");
    return q;
  }
  Poly monic() const {
    if (c_.empty()) return Poly();
    return scaled(inverse(c_.back()));
  }

  // Resize-friendly mutable access used by in-place algorithms.
  std::vector<T>& raw() { return c_; }
  void normalize() { trim(); }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero_poly()) {
    Poly<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> ext_gcd(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> r0 = a, r1 = b;
  Poly<T> s0(T(1)), s1;
  Poly<T> t0, t1(T(1));
  while (!r1.is_zero_poly()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<T> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<T> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero_poly()) return {r0, s0, t0};
  T inv = inverse(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class T>
bool is_zero(const Poly<T>& p) {
  return p.is_zero_poly();
}

template <class T>
Poly<T> inverse(const Poly<T>& p) {
  if (!p.is_constant() || p.is_zero_poly()) throw std::domain_error("non-unit polynomial inverse");
  return Poly<T>(inverse(p.lead()));
}

using UniPoly = Poly<Rational>;

// Primitive integer polynomial proportional to p with positive leading coefficient.
UniPoly primitive_part(const UniPoly& p);
// Monic gcd over Q, computed by a primitive remainder sequence over Z.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
// Content-free integer coefficients as mpz (of primitive_part(p)).
std::vector<Integer> integer_coeffs(const UniPoly& p);
// Square-free part over Q.
UniPoly squarefree_part(const UniPoly& p);
// Yun's square-free decomposition over Q: pairs (factor, multiplicity), factors
// monic, nonconstant, pairwise coprime.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p);
// p(x + a)
UniPoly taylor_shift(const UniPoly& p, const Rational& a);
// p(s x)
UniPoly scale_variable(const UniPoly& p, const Rational& s);
std::string to_string(const UniPoly& p, const std::string& var = "x");
// Rational roots of p (distinct).
std::vector<Rational> rational_roots(const UniPoly& p);
// Cauchy bound: every complex root has modulus < bound.
Rational root_bound(const UniPoly& p);

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

}  // namespace conecert
