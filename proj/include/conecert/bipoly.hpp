#pragma once

// Bivariate polynomials in (Y, X) over Q, rational functions in one variable,
// and the composed-product / characteristic-polynomial constructions.
//
// A BiPoly is stored as a dense polynomial in X whose coefficients are
// polynomials in Y. Both levels are trimmed, so the representation is
// canonical.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecert/poly.hpp"

namespace conecert {

using BiPoly = Poly<UniPoly>;

struct ExactArithConfig {
  size_t degree_cap = 4096;
};

// p(Y) as a polynomial in X of degree 0.
BiPoly bipoly_from_y(const UniPoly& p);
// p(X) with Y-free coefficients.
BiPoly bipoly_from_x(const UniPoly& p);
// Builds from (degY, degX) -> coefficient triples.
BiPoly bipoly_from_terms(const std::vector<std::tuple<size_t, size_t, Rational>>& terms);
std::vector<std::tuple<size_t, size_t, Rational>> bipoly_terms(const BiPoly& p);

UniPoly eval_y(const BiPoly& p, const Rational& y);
long degree_y(const BiPoly& p);
// gcd of the X-coefficients (monic in Y, or 1).
UniPoly content_y(const BiPoly& p);
// Divides by the Y-content and makes the coefficients integral and primitive,
// with positive leading coefficient.
BiPoly primitive_part(const BiPoly& p);
BiPoly derivative_x(const BiPoly& p);
// Swaps roles: returns the polynomial in Y with coefficients in Q[X].
BiPoly swap_variables(const BiPoly& p);
std::string to_string(const BiPoly& p);

// Pseudo-remainder / exact division / gcd in Q[Y][X] (gcd over Q(Y), returned
// primitive).
BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b);
BiPoly exact_div(const BiPoly& a, const BiPoly& b);
BiPoly gcd_x(const BiPoly& a, const BiPoly& b);

// Certifies coprimality of a and b over Q(Y) by specialization modulo a prime.
// Returns true only when coprimality is proven; false means "not proven".
bool certify_coprime(const BiPoly& a, const BiPoly& b);
bool certify_squarefree(const BiPoly& a);

struct SquarefreeFactor {
  BiPoly factor;
  int multiplicity;  // 0 marks the content in Y
};
// P = P0(Y) * prod P_k^k, each P_k square-free in X, pairwise coprime.
std::vector<SquarefreeFactor> squarefree_decomposition(const BiPoly& p);

// Composed products. The roots of the results are the products X_i X_j over
// ordered pairs, resp. over m-subsets, of the X-roots of p.
BiPoly composed_product_pairs(const BiPoly& p, const ExactArithConfig& cfg = {});
BiPoly composed_product_subsets(const BiPoly& p, size_t m, const ExactArithConfig& cfg = {});

// Factorisation of the pair product of P_m (the m-subset product) by the shape
// of the index multisets: P_m (x) P_m = prod_k H_k^{e_k}, where H_k collects
// products z_I^2 z_J with |I| = k, |J| = 2(m-k), I and J disjoint, and
// e_k = binom(2(m-k), m-k). Returned as (H_k, e_k) with k descending.
std::vector<std::pair<BiPoly, int>> composed_square_shapes(const BiPoly& p, size_t m,
                                                           const ExactArithConfig& cfg = {});
// Same shapes evaluated on a univariate polynomial (used at Y = 0).
std::vector<std::pair<UniPoly, int>> composed_square_shapes(const UniPoly& p, size_t m,
                                                            const ExactArithConfig& cfg = {});
UniPoly composed_product_pairs(const UniPoly& p, const ExactArithConfig& cfg = {});
UniPoly composed_product_subsets(const UniPoly& p, size_t m, const ExactArithConfig& cfg = {});

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(UniPoly num, UniPoly den);  // NOLINT: reduces
  RationalFunction(const UniPoly& p) : RationalFunction(p, UniPoly(Rational(1))) {}  // NOLINT

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero_poly(); }
  Rational operator()(const Rational& x) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const { return {-num_, den_}; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  UniPoly num_;
  UniPoly den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

using RatMatrix = std::vector<std::vector<Rational>>;
using RatFuncMatrix = std::vector<std::vector<RationalFunction>>;

// Numerator of the characteristic polynomial of A(1/Y), cleared of
// Y-denominators and made primitive.
BiPoly reversed_char_poly(const RatFuncMatrix& a);
// Characteristic polynomial det(X I - A) of a rational matrix (monic).
UniPoly char_poly(const RatMatrix& a);

// Power sums S_1..S_count of the roots of a monic polynomial with coefficients
// in a commutative ring (Newton identities, no division).
template <class T>
std::vector<T> power_sums_monic(const std::vector<T>& monic_coeffs, size_t count);

}  // namespace conecert
