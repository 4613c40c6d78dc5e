#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls the routines under test except basic Poly arithmetic.

#include <random>
#include <vector>

#include "conecert/poly.hpp"

namespace oracle {

using conecert::Integer;
using conecert::Rational;
using conecert::UniPoly;

inline UniPoly from_roots(const std::vector<Rational>& roots) {
  UniPoly p(Rational(1));
  for (const auto& r : roots) p = p * UniPoly{-r, Rational(1)};
  return p;
}

inline UniPoly random_poly(std::mt19937_64& rng, int degree, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<Rational> c(static_cast<size_t>(degree) + 1);
  for (auto& v : c) v = d(rng);
  while (c.back() == 0) c.back() = d(rng);
  return UniPoly(std::move(c));
}

inline std::vector<Rational> random_rationals(std::mt19937_64& rng, int count, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 3);
  std::vector<Rational> out;
  for (int i = 0; i < count; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

// Product polynomial over all ordered pairs (m == 0) or all m-subsets of a
// list of explicit roots.
inline UniPoly rooted_products(const std::vector<Rational>& roots, size_t m) {
  std::vector<Rational> prods;
  const size_t n = roots.size();
  if (m == 0) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) prods.push_back(roots[i] * roots[j]);
  } else {
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      if (static_cast<size_t>(__builtin_popcountl(mask)) != m) continue;
      Rational pr = 1;
      for (size_t i = 0; i < n; ++i)
        if (mask >> i & 1) pr *= roots[i];
      prods.push_back(pr);
    }
  }
  return from_roots(prods);
}

inline Rational det(std::vector<std::vector<Rational>> a) {
  const size_t n = a.size();
  Rational d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

// Sylvester resultant of two polynomials given by coefficient vectors
// (ascending) of formal degrees size()-1.
inline Rational resultant(const std::vector<Rational>& pc, const std::vector<Rational>& qc) {
  const size_t m = pc.size() - 1, n = qc.size() - 1;
  std::vector<std::vector<Rational>> s(m + n, std::vector<Rational>(m + n, Rational(0)));
  for (size_t r = 0; r < n; ++r)
    for (size_t k = 0; k <= m; ++k) s[r][r + k] = pc[m - k];
  for (size_t r = 0; r < m; ++r)
    for (size_t k = 0; k <= n; ++k) s[n + r][r + k] = qc[n - k];
  return det(s);
}

// Res_y(p(y), y^d p(x/y)) by evaluation at x = 0..d^2 and Lagrange
// interpolation. Its roots in x are r_i r_j over ordered pairs.
inline UniPoly resultant_pairs(const UniPoly& p) {
  const size_t d = static_cast<size_t>(p.degree());
  const size_t deg = d * d;
  std::vector<Rational> xs, ys;
  for (size_t t = 0; t <= deg; ++t) {
    Rational x(static_cast<long>(t));
    std::vector<Rational> qc(d + 1);
    Rational pw = 1;
    for (size_t i = 0; i <= d; ++i) {
      qc[d - i] = p.coeffs()[i] * pw;
      pw *= x;
    }
    xs.push_back(x);
    ys.push_back(resultant(p.coeffs(), qc));
  }
  UniPoly out;
  for (size_t i = 0; i <= deg; ++i) {
    UniPoly basis(Rational(1));
    Rational den = 1;
    for (size_t j = 0; j <= deg; ++j) {
      if (j == i) continue;
      basis = basis * UniPoly{-xs[j], Rational(1)};
      den *= xs[i] - xs[j];
    }
    out = out + basis.scaled(ys[i] / den);
  }
  return out;
}

}  // namespace oracle
