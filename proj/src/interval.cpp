#include "conecert/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace conecert {

namespace {

Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rational(0);
  if (!mpfr_number_p(x)) throw std::domain_error("non-finite value in interval computation");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

mpfr_prec_t max_prec(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

// ---------------------------------------------------------------- Float

Float::Float(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Float::Float(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Float::Float(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Float::Float(const Float& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Float::Float(Float&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

Float& Float::operator=(const Float& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Float::~Float() { mpfr_clear(v_); }

Rational Float::to_rational() const { return mpfr_to_rational(v_); }

Float operator+(const Float& a, const Float& b) {
  Float r(std::max(a.precision(), b.precision()));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float operator-(const Float& a, const Float& b) {
  Float r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float operator*(const Float& a, const Float& b) {
  Float r(std::max(a.precision(), b.precision()));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float operator/(const Float& a, const Float& b) {
  Float r(std::max(a.precision(), b.precision()));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float Float::operator-() const {
  Float r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Float Float::abs() const {
  Float r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

Float Float::sqrt() const {
  Float r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------- Interval

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (lo > hi) throw std::invalid_argument("empty interval");
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.precision());
  mpfr_init2(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.precision());
    mpfr_set_prec(hi_, o.precision());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Rational Interval::lo_q() const { return mpfr_to_rational(lo_); }
Rational Interval::hi_q() const { return mpfr_to_rational(hi_); }

double Interval::mid_d() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

Rational Interval::mid_q() const { return (lo_q() + hi_q()) / 2; }

Float Interval::mid(mpfr_prec_t prec) const { return Float(mid_q(), prec); }

Rational Interval::width_q() const { return hi_q() - lo_q(); }

double Interval::width_d() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}

bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

int Interval::certain_sign() const {
  if (positive()) return 1;
  if (negative()) return -1;
  return 0;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = max_prec(a, b);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  const mpfr_prec_t p = max_prec(a, b);
  Interval inv(p);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::square() const {
  Interval a = abs();
  Interval r(precision());
  mpfr_mul(r.lo_, a.lo_, a.lo_, MPFR_RNDD);
  mpfr_mul(r.hi_, a.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw std::domain_error("sqrt of a negative interval");
  Interval r(precision());
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::root(unsigned long k) const {
  if (k == 0) throw std::domain_error("zeroth root");
  if (mpfr_sgn(hi_) < 0) throw std::domain_error("root of a negative interval");
  Interval r(precision());
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
  }
  mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  Interval r(precision());
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  if (mpfr_cmpabs(lo_, hi_) > 0) {
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
  }
  return r;
}

Interval Interval::pow(unsigned k) const {
  Interval r(Rational(1), precision());
  Interval b = *this;
  if (k % 2 == 0) b = abs();
  for (unsigned i = 0; i < k; ++i) r = r * b;
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::symmetric(const Interval& radius) {
  Interval r(radius.precision());
  mpfr_abs(r.hi_, radius.hi_, MPFR_RNDU);
  if (mpfr_cmpabs(radius.lo_, r.hi_) > 0) mpfr_abs(r.hi_, radius.lo_, MPFR_RNDU);
  mpfr_neg(r.lo_, r.hi_, MPFR_RNDD);
  return r;
}

Interval Interval::upper_only() const {
  Interval r(precision());
  mpfr_set(r.lo_, hi_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::lower_only() const {
  Interval r(precision());
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::max_with_zero() const {
  Interval r = *this;
  if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
  if (mpfr_sgn(r.hi_) < 0) mpfr_set_zero(r.hi_, 1);
  return r;
}

std::string Interval::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  std::string s = "[";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RDg", digits, lo_);
  s += buf.data();
  s += ", ";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RUg", digits, hi_);
  s += buf.data();
  s += "]";
  return s;
}

// ---------------------------------------------------------------- ComplexInterval

double ComplexInterval::width_d() const { return std::max(re_.width_d(), im_.width_d()); }

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re_ + b.re_, a.im_ + b.im_};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re_ - b.re_, a.im_ - b.im_};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

ComplexInterval operator*(const ComplexInterval& a, const Interval& b) { return {a.re_ * b, a.im_ * b}; }

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = b.norm_sq();
  ComplexInterval num = a * b.conj();
  return {num.re_ / den, num.im_ / den};
}

ComplexInterval ComplexInterval::pow(unsigned k) const {
  ComplexInterval r(Rational(1), precision());
  ComplexInterval b = *this;
  while (k > 0) {
    if (k & 1U) r = r * b;
    k >>= 1U;
    if (k > 0) b = b * b;
  }
  return r;
}

std::string ComplexInterval::to_string(int digits) const {
  return re_.to_string(digits) + " + i" + im_.to_string(digits);
}

Rational round_down(const Rational& q, mpfr_prec_t bits) {
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDD);
  Rational r = mpfr_to_rational(t);
  mpfr_clear(t);
  return r;
}

Rational round_up(const Rational& q, mpfr_prec_t bits) {
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
  Rational r = mpfr_to_rational(t);
  mpfr_clear(t);
  return r;
}

}  // namespace conecert
