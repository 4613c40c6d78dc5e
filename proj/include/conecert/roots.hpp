#pragma once

// Certified isolation of the complex roots of a square-free rational
// polynomial.
//
// Approximations come from Aberth iteration in multiprecision; each root is
// then enclosed in a disk D(z_i, n |W_i|) where W_i is the Weierstrass
// correction p(z_i) / (lc * prod_{j != i} (z_i - z_j)). When these disks are
// pairwise disjoint, each holds exactly one root. For real polynomials a disk
// centred on the real axis that is disjoint from all others holds a real root.

#include <optional>
#include <vector>

#include "conecert/interval.hpp"
#include "conecert/poly.hpp"

namespace conecert {

struct RootDisk {
  Rational re;      // centre
  Rational im;
  Rational radius;  // certified radius (upper bound)
  bool real = false;

  ComplexInterval box(mpfr_prec_t prec) const;
  // true if the closed disks intersect
  bool intersects(const RootDisk& o) const;
  // true if this disk lies inside o
  bool inside(const RootDisk& o) const;
};

struct IsolatedRoots {
  UniPoly poly;  // square-free, the polynomial that was isolated
  std::vector<RootDisk> roots;
  mpfr_prec_t precision = 0;
};

// p must be square-free with nonzero degree. Every returned disk has radius
// <= max_radius (when given) and the disks are pairwise disjoint.
IsolatedRoots isolate_roots(const UniPoly& p, const std::optional<Rational>& max_radius = std::nullopt,
                            mpfr_prec_t start_prec = 128);

// Re-isolates with all radii <= max_radius and returns the new disk lying in
// `old` (the root designated by `old`).
RootDisk refine_root(const UniPoly& p, const RootDisk& old, const Rational& max_radius);

// Minimal polynomial over Q (primitive, positive leading coefficient) of the
// root designated by `target` among the isolated roots of `iso`.
UniPoly minimal_polynomial_of_root(const IsolatedRoots& iso, size_t target);

// All irreducible factors over Q of a square-free polynomial, with the indices
// of the roots of `iso` that belong to each.
std::vector<std::pair<UniPoly, std::vector<size_t>>> factor_squarefree(const IsolatedRoots& iso);
std::vector<UniPoly> factor_over_q(const UniPoly& p);  // any nonzero p, factors without multiplicity

// Index of the root of `iso` that equals a root of `other` designated by
// `disk`, or nullopt if no root of `iso` coincides with it. `other` need not be
// square-free. Decided exactly via gcd.
std::optional<size_t> match_root(const IsolatedRoots& iso, const UniPoly& other, const RootDisk& disk);

// True if the root of `iso` with index i is also a root of f (exact).
bool is_root_of(const IsolatedRoots& iso, size_t i, const UniPoly& f);

// Enclosure of p over a complex interval (Horner).
ComplexInterval eval_poly(const UniPoly& p, const ComplexInterval& z);
Interval eval_poly(const UniPoly& p, const Interval& x);

std::vector<Rational> rational_roots(const UniPoly& p);

}  // namespace conecert
