#pragma once

// Arithmetic in a single algebraic number field K = Q(g), where g is a
// designated complex root of a monic integral irreducible polynomial m.
//
// Elements are residues modulo m, so equality and zero tests are exact. An
// element whose residue is a rational constant carries no field pointer; this
// lets rational constants mix freely with elements of any field.

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "conecert/interval.hpp"
#include "conecert/poly.hpp"
#include "conecert/roots.hpp"

namespace conecert {

class NumberField;
using Field = std::shared_ptr<const NumberField>;

class KElem {
 public:
  KElem() = default;
  KElem(long v) : rep_(Rational(v)) {}              // NOLINT
  KElem(const Rational& q) : rep_(q) {}             // NOLINT
  KElem(Field k, UniPoly rep);                      // reduces modulo the minimal polynomial

  const Field& field() const { return k_; }
  const UniPoly& rep() const { return rep_; }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rational to_rational() const;  // throws unless rational

  friend KElem operator+(const KElem& a, const KElem& b);
  friend KElem operator-(const KElem& a, const KElem& b);
  friend KElem operator*(const KElem& a, const KElem& b);
  friend KElem operator/(const KElem& a, const KElem& b);
  KElem operator-() const;
  KElem& operator+=(const KElem& b) { return *this = *this + b; }
  KElem& operator-=(const KElem& b) { return *this = *this - b; }
  KElem& operator*=(const KElem& b) { return *this = *this * b; }
  friend bool operator==(const KElem& a, const KElem& b);
  friend bool operator!=(const KElem& a, const KElem& b) { return !(a == b); }

 private:
  Field k_;
  UniPoly rep_;
};

inline bool is_zero(const KElem& a) { return a.rep().is_zero_poly(); }
KElem inverse(const KElem& a);

using KPoly = Poly<KElem>;

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // m monic with integer coefficients and irreducible over Q; `root` isolates
  // the designated root among the roots of m.
  static Field create(UniPoly m, RootDisk root);

  const UniPoly& minpoly() const { return m_; }
  long degree() const { return m_.degree(); }
  KElem generator() const;
  // Isolating disk of the designated root with radius <= r (cached).
  RootDisk root_disk(const Rational& r) const;
  RootDisk root_disk() const;
  std::string to_string() const;

  NumberField(UniPoly m, RootDisk root) : m_(std::move(m)), disk_(std::move(root)) {}

 private:
  UniPoly m_;
  mutable std::mutex mu_;
  mutable RootDisk disk_;
};

// Common field of a collection of elements (null when all are rational).
// Throws if two different fields occur.
Field common_field(const Field& a, const Field& b);

// Enclosure of the complex value of a under the embedding, with both real and
// imaginary widths below `width`.
ComplexInterval enclose(const KElem& a, const Rational& width);
ComplexInterval enclose(const KElem& a, mpfr_prec_t prec = 128);

// Exact sign of an element known to be real. Throws std::domain_error when the
// imaginary part is provably nonzero.
int sign(const KElem& a);

std::string to_string(const KElem& a, const std::string& gen = "a");

KPoly to_kpoly(const UniPoly& p);
// Coefficientwise conversion when every coefficient is rational.
bool is_rational_poly(const KPoly& p);
UniPoly to_unipoly(const KPoly& p);

// Field norm of a polynomial over K (k may be null for Q): product over the
// conjugates of the generator. For p monic over K the result is monic over Q.
UniPoly norm(const KPoly& p, const Field& k);

// Monic irreducible factors over K of a square-free polynomial.
std::vector<KPoly> factor_squarefree(const KPoly& p, const Field& k);

// Yun square-free decomposition over any field of characteristic zero.
std::vector<std::pair<KPoly, int>> squarefree_decomposition(const KPoly& p);

// Result of adjoining one root of an irreducible polynomial g over K.
struct Extension {
  Field base;    // K
  Field field;   // L = K(root)
  KElem old_generator;  // the generator of K written in L (0 when K = Q)
  KElem root;    // the adjoined root, in L
};
Extension extend(const Field& k, const KPoly& g);

// Image of an element of K in an extension L.
KElem lift(const KElem& a, const Extension& ext);

// Minimal polynomial over Q (primitive, positive leading coefficient) of a.
UniPoly minimal_polynomial(const KElem& a);

}  // namespace conecert
