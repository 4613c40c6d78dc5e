#include "conecert/algebraic.hpp"

#include <sstream>
#include <stdexcept>

#include "conecert/bipoly.hpp"

namespace conecert {

namespace {

constexpr long kMaxRounds = 14;  // precision up to 2^-(16 * 2^13) is never reached in practice

// Lower bound for the distance between two disk centres.
Rational center_distance_lower(const RootDisk& a, const RootDisk& b) {
  Rational dx = a.re - b.re, dy = a.im - b.im;
  Interval d2(Rational(dx * dx + dy * dy), 128);
  return d2.sqrt().lo_q();
}

// Shrinks `disk` until its bounding square isolates it among the roots of m.
RootDisk tighten(const UniPoly& m, const RootDisk& disk) {
  if (m.degree() <= 1) return disk;
  IsolatedRoots iso = isolate_roots(m, disk.radius);
  size_t idx = iso.roots.size();
  for (size_t i = 0; i < iso.roots.size(); ++i) {
    if (iso.roots[i].intersects(disk)) {
      if (idx != iso.roots.size()) throw std::logic_error("disk does not isolate a root");
      idx = i;
    }
  }
  if (idx == iso.roots.size()) throw std::logic_error("disk holds no root");
  Rational delta = -1;
  for (size_t j = 0; j < iso.roots.size(); ++j) {
    if (j == idx) continue;
    Rational dj = center_distance_lower(iso.roots[idx], iso.roots[j]) - iso.roots[j].radius;
    if (delta < 0 || dj < delta) delta = dj;
  }
  RootDisk d = iso.roots[idx];
  if (delta > 0 && d.radius > delta / 4) d = refine_root(m, d, delta / 4);
  return d;
}

ComplexInterval modulus_sq(const AlgebraicNumber& a, const Rational& w) {
  ComplexInterval z = refine(a, w);
  return {z.norm_sq(), Interval(z.precision())};
}

}  // namespace

AlgebraicNumber::AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}

AlgebraicNumber::AlgebraicNumber(const Rational& q) : m_(primitive_part(UniPoly{-q, Rational(1)})) {
  disk_.re = q;
  disk_.im = 0;
  disk_.radius = 0;
  disk_.real = true;
}

AlgebraicNumber::AlgebraicNumber(UniPoly m, RootDisk disk) : m_(primitive_part(m)), disk_(std::move(disk)) {
  if (m_.degree() == 1) {
    *this = AlgebraicNumber(-m_.coeffs()[0] / m_.coeffs()[1]);
    return;
  }
  disk_ = tighten(m_, disk_);
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("not a rational number");
  return -m_.coeffs()[0] / m_.coeffs()[1];
}

Box AlgebraicNumber::isolating_box() const {
  if (is_rational()) {
    Rational q = rational_value();
    return {q, q, 0, 0};
  }
  Box b{disk_.re - disk_.radius, disk_.re + disk_.radius, disk_.im - disk_.radius, disk_.im + disk_.radius};
  if (disk_.real) b.im_lo = b.im_hi = 0;
  return b;
}

std::string AlgebraicNumber::to_string() const {
  if (is_rational()) return rational_value().get_str();
  std::ostringstream os;
  os << "root of " << conecert::to_string(m_, "x") << " near " << disk_.re.get_d();
  if (!disk_.real) os << (disk_.im >= 0 ? " + " : " - ") << Rational(abs(disk_.im)).get_d() << "i";
  return os.str();
}

AlgebraicNumber make_algebraic(const UniPoly& p, const Box& box) {
  if (p.is_zero_poly()) throw std::invalid_argument("zero polynomial");
  if (p.degree() < 1) throw std::invalid_argument("box not isolating");
  const bool real_only = box.im_lo == 0 && box.im_hi == 0;
  UniPoly sq = primitive_part(squarefree_part(p));
  Rational r = 1;
  for (long round = 0; round < 40; ++round, r /= 16) {
    IsolatedRoots iso = isolate_roots(sq, r);
    long inside = 0, crossing = 0;
    size_t hit = 0;
    for (size_t i = 0; i < iso.roots.size(); ++i) {
      const RootDisk& d = iso.roots[i];
      if (real_only && !d.real) continue;  // a non-real root is off the real line
      Rational ilo = real_only ? Rational(0) : d.im - d.radius, ihi = real_only ? Rational(0) : d.im + d.radius;
      bool in = d.re - d.radius >= box.re_lo && d.re + d.radius <= box.re_hi && ilo >= box.im_lo && ihi <= box.im_hi;
      bool out = d.re + d.radius < box.re_lo || d.re - d.radius > box.re_hi || ihi < box.im_lo || ilo > box.im_hi;
      if (in) {
        ++inside;
        hit = i;
      } else if (!out) {
        ++crossing;
      }
    }
    if (crossing > 0) continue;
    if (inside != 1) throw std::invalid_argument("box not isolating");
    for (const auto& [f, idx] : factor_squarefree(iso)) {
      for (size_t i : idx) {
        if (i == hit) return AlgebraicNumber(f, iso.roots[hit]);
      }
    }
    throw std::logic_error("root lost during factorisation");
  }
  throw std::invalid_argument("box not isolating");
}

AlgebraicNumber make_algebraic(const KElem& a) {
  if (a.is_rational()) return AlgebraicNumber(a.to_rational());
  UniPoly m = minimal_polynomial(a);
  for (long k = 8; k < (8L << kMaxRounds); k *= 2) {
    ComplexInterval z = enclose(a, pow2(-k));
    IsolatedRoots iso = isolate_roots(m, pow2(-k));
    long hits = 0;
    size_t idx = 0;
    for (size_t i = 0; i < iso.roots.size(); ++i) {
      if (iso.roots[i].box(z.precision()).overlaps(z)) {
        ++hits;
        idx = i;
      }
    }
    if (hits == 1) return AlgebraicNumber(m, iso.roots[idx]);
  }
  throw std::runtime_error("could not identify the root of the minimal polynomial");
}

ComplexInterval refine(const AlgebraicNumber& a, const Rational& width) {
  if (a.is_rational()) return {a.rational_value(), 128};
  RootDisk d = a.disk();
  if (d.radius * 2 >= width) d = refine_root(a.minimal_polynomial(), d, width / 4);
  mpfr_prec_t prec = 128;
  while (pow2(-static_cast<long>(prec) + 8) > width / 4) prec *= 2;
  ComplexInterval z = d.box(prec);
  if (d.real) z = ComplexInterval(z.re(), Interval(prec));
  return z;
}

int sign(const AlgebraicNumber& a) {
  if (a.is_rational()) return sgn(a.rational_value());
  for (long k = 4; k < (4L << kMaxRounds); k *= 2) {
    ComplexInterval z = refine(a, pow2(-k));
    if (!z.im().contains_zero()) throw std::domain_error("sign of a non-real number");
    if (z.re().positive()) return 1;
    if (z.re().negative()) return -1;
  }
  throw std::runtime_error("sign undecided");
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.minimal_polynomial() != b.minimal_polynomial()) return false;
  if (a.is_rational()) return true;
  return a.disk().intersects(b.disk());
}

Ordering compare_modulus(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) {
    Rational x = abs(a.rational_value()), y = abs(b.rational_value());
    return x < y ? Ordering::Less : (x > y ? Ordering::Greater : Ordering::Equal);
  }
  // both |a|^2 and |b|^2 are roots of S, the square-free part of the pair
  // products of the two minimal polynomials
  UniPoly pa = composed_product_pairs(a.minimal_polynomial());
  UniPoly pb = composed_product_pairs(b.minimal_polynomial());
  UniPoly s = primitive_part(squarefree_part(pa * pb));
  for (long k = 8; k < (8L << kMaxRounds); k *= 2) {
    const Rational w = pow2(-k);
    ComplexInterval za = modulus_sq(a, w), zb = modulus_sq(b, w);
    if (za.re().hi_q() < zb.re().lo_q()) return Ordering::Less;
    if (za.re().lo_q() > zb.re().hi_q()) return Ordering::Greater;
    IsolatedRoots iso = isolate_roots(s, w);
    long ca = 0, cb = 0;
    size_t ia = 0, ib = 0;
    for (size_t i = 0; i < iso.roots.size(); ++i) {
      if (!iso.roots[i].real) continue;
      ComplexInterval box = iso.roots[i].box(za.precision());
      if (box.re().overlaps(za.re())) {
        ++ca;
        ia = i;
      }
      if (box.re().overlaps(zb.re())) {
        ++cb;
        ib = i;
      }
    }
    if (ca == 1 && cb == 1 && ia == ib) return Ordering::Equal;
  }
  throw std::runtime_error("modulus comparison undecided");
}

}  // namespace conecert
