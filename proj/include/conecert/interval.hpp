#pragma once

// Rigorous interval arithmetic on top of MPFR with directed rounding, plus a
// thin round-to-nearest float used for numeric root approximation.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace conecert {

using Rational = mpq_class;
using Integer = mpz_class;

// Round-to-nearest multiprecision float. Only used where rigor is not needed
// (approximations that are certified afterwards).
class Float {
 public:
  explicit Float(mpfr_prec_t prec = 128);
  Float(double v, mpfr_prec_t prec);
  Float(const Rational& q, mpfr_prec_t prec);
  Float(const Float& o);
  Float(Float&& o) noexcept;
  Float& operator=(const Float& o);
  Float& operator=(Float&& o) noexcept;
  ~Float();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  Rational to_rational() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend Float operator+(const Float& a, const Float& b);
  friend Float operator-(const Float& a, const Float& b);
  friend Float operator*(const Float& a, const Float& b);
  friend Float operator/(const Float& a, const Float& b);
  Float operator-() const;
  friend bool operator<(const Float& a, const Float& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Float& a, const Float& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  Float abs() const;
  Float sqrt() const;

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);  // the point 0
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  Rational lo_q() const;
  Rational hi_q() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const;
  Rational mid_q() const;
  Float mid(mpfr_prec_t prec) const;
  Rational width_q() const;
  double width_d() const;

  bool contains_zero() const;
  bool contains(const Interval& o) const;
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  bool nonnegative() const { return mpfr_sgn(lo_) >= 0; }
  bool overlaps(const Interval& o) const;
  // -1, +1 when certified, 0 when the interval straddles or touches zero
  int certain_sign() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  Interval square() const;
  Interval sqrt() const;  // requires hi >= 0; negative part clipped
  Interval root(unsigned long k) const;  // k-th root, same domain rule as sqrt
  Interval abs() const;
  Interval pow(unsigned k) const;
  static Interval hull(const Interval& a, const Interval& b);
  // [-r, r]
  static Interval symmetric(const Interval& radius);
  Interval upper_only() const;  // [hi, hi]
  Interval lower_only() const;  // [lo, lo]
  Interval max_with_zero() const;

  std::string to_string(int digits = 12) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

class ComplexInterval {
 public:
  explicit ComplexInterval(mpfr_prec_t prec = 128) : re_(prec), im_(prec) {}
  ComplexInterval(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexInterval(const Rational& q, mpfr_prec_t prec) : re_(q, prec), im_(prec) {}

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool is_real_certain() const { return im_.is_point() && mpfr_zero_p(im_.lo()) != 0; }
  bool overlaps(const ComplexInterval& o) const { return re_.overlaps(o.re_) && im_.overlaps(o.im_); }
  bool contains(const ComplexInterval& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  double width_d() const;

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const ComplexInterval& a, const Interval& b);
  ComplexInterval operator-() const { return {-re_, -im_}; }
  ComplexInterval conj() const { return {re_, -im_}; }
  Interval norm_sq() const { return re_.square() + im_.square(); }
  Interval abs() const { return norm_sq().sqrt(); }
  ComplexInterval pow(unsigned k) const;

  std::string to_string(int digits = 12) const;

 private:
  Interval re_;
  Interval im_;
};

// 2^k as an exact rational, any sign of k.
inline Rational pow2(long k) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rational(d) : Rational(Integer(1), d);
}

// Rounds q outward to a dyadic with `bits` significant bits.
Rational round_down(const Rational& q, mpfr_prec_t bits);
Rational round_up(const Rational& q, mpfr_prec_t bits);

}  // namespace conecert
