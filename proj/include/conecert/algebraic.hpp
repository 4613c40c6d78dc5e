#pragma once

// Standalone algebraic numbers: a minimal polynomial over Q together with an
// isolating region for the designated root. Used for reporting and for exact
// modulus comparisons between numbers that do not share a field.

#include <string>

#include "conecert/numberfield.hpp"
#include "conecert/roots.hpp"

namespace conecert {

struct Box {
  Rational re_lo, re_hi, im_lo, im_hi;
};

class AlgebraicNumber {
 public:
  AlgebraicNumber();  // zero
  explicit AlgebraicNumber(const Rational& q);
  // m irreducible, primitive; `disk` isolates the root among the roots of m
  AlgebraicNumber(UniPoly m, RootDisk disk);

  const UniPoly& minimal_polynomial() const { return m_; }
  const RootDisk& disk() const { return disk_; }
  bool is_rational() const { return m_.degree() == 1; }
  Rational rational_value() const;
  bool is_real() const { return disk_.real; }
  // Axis-parallel box holding exactly this root of m. Real roots get a
  // degenerate imaginary range [0, 0].
  Box isolating_box() const;
  std::string to_string() const;

 private:
  UniPoly m_;
  RootDisk disk_;
};

// Errors with std::invalid_argument("box not isolating") unless exactly one
// root of p lies in the box (closed). A box with im_lo = im_hi = 0 selects
// real roots.
AlgebraicNumber make_algebraic(const UniPoly& p, const Box& box);
AlgebraicNumber make_algebraic(const KElem& a);

// Enclosure with real and imaginary widths <= width; never changes the root.
ComplexInterval refine(const AlgebraicNumber& a, const Rational& width);

enum class Ordering { Less, Equal, Greater };
// Exact comparison of |a| and |b|.
Ordering compare_modulus(const AlgebraicNumber& a, const AlgebraicNumber& b);
// Exact sign of a real algebraic number; throws std::domain_error if not real.
int sign(const AlgebraicNumber& a);
bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);

}  // namespace conecert
