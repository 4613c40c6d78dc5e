#pragma once

// Newton-polygon expansion of the X-roots of Q(Y, X) at Y = 0.
//
// All arithmetic is exact over one number field K that grows on demand: when
// an edge polynomial has an irreducible factor of degree > 1 the field is
// extended by one of its roots and the expansion restarts. Every root of an
// edge polynomial starts its own branch, so a ramified cycle of length e
// shows up as e branches sharing the ramification index e.
//
// A branch with ramification e is stored as a polynomial P(S) over K with
// Y = S^e; its value at Y = 1/n uses the real positive root S = n^{-1/e}.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conecert/algebraic.hpp"
#include "conecert/bipoly.hpp"
#include "conecert/numberfield.hpp"

namespace conecert {

struct PuiseuxConfig {
  Rational max_order{8};  // largest Y-order ever expanded to
};

struct PuiseuxTerm {
  Rational exponent;
  AlgebraicNumber coefficient;
};

struct PuiseuxBranch {
  int id = 0;
  long ramification = 1;
  KPoly series;              // in S, Y = S^e
  Rational truncation_order; // every term with Y-exponent <= this is present
  bool exact = false;        // series is an exact root of the source
  int conjugate = -1;        // index in the owning set of the conjugate branch

  bool is_real() const;      // needs the owning set to have paired conjugates
  KElem limit() const { return series[0]; }
  // Nonzero terms with their Y-exponents (exponent k/e).
  std::vector<std::pair<Rational, KElem>> exact_terms() const;
  std::vector<PuiseuxTerm> terms() const;
  std::string to_string(const std::string& var = "Y") const;
};

struct BranchSet {
  BiPoly source;
  Field field;                      // common field of all coefficients
  std::vector<Extension> extensions;  // from the starting field to `field`
  std::optional<KElem> center;      // set for local expansions
  std::vector<PuiseuxBranch> branches;
};

class OrderCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All X-roots of q at Y = 0. q must be square-free in X with q(0, X) != 0.
BranchSet puiseux_expand(const BiPoly& q, const Rational& order, const PuiseuxConfig& cfg = {});
// Same, starting from the field k instead of Q.
BranchSet puiseux_expand_over(const BiPoly& q, const Field& k, const Rational& order,
                              const PuiseuxConfig& cfg = {});
// Only the branches with X(0) = center.
BranchSet puiseux_expand_at(const BiPoly& q, const KElem& center, const Rational& order,
                            const PuiseuxConfig& cfg = {});

// Re-expands the whole set to new_order and keeps branch ids. Coefficients of
// the result may live in an extension of set.field.
BranchSet extend_all(const BranchSet& set, const Rational& new_order, const PuiseuxConfig& cfg = {});
PuiseuxBranch extend_branch(const BranchSet& set, const PuiseuxBranch& b, const Rational& new_order,
                            const PuiseuxConfig& cfg = {});

// Truncated series at Y = 1/n, both widths below `width`.
ComplexInterval evaluate_branch(const PuiseuxBranch& b, long n, const Rational& width);
// Same with S given as an interval (S = Y^{1/e}).
ComplexInterval evaluate_series(const PuiseuxBranch& b, const Interval& s);

// Y-order of lambda(1/n) - lambda(1/(n+1)): lowest nonconstant exponent + 1.
Rational branch_step_order(const PuiseuxBranch& b);

// Number of X-roots of f, with multiplicity, whose Y-valuation of X - b(Y)
// exceeds `above`.
long roots_beyond(const BiPoly& f, const PuiseuxBranch& b, const Rational& above);

// p(S^q)
KPoly substitute_power(const KPoly& p, long q);

// Exact Y-valuation of q(Y, branch(Y)) (a large sentinel when it vanishes).
Rational residual_order(const BiPoly& q, const PuiseuxBranch& b);

// |lambda(Y) - truncation(Y)| <= radius * Y^exponent for 0 < Y <= y_max,
// where lambda is the true root designated by the branch.
struct BranchBound {
  bool ok = false;   // false when the truncation is too short to separate the root
  Rational radius;
  Rational exponent;
  Rational y_max;
};
BranchBound branch_error_bound(const BranchSet& set, size_t index);

}  // namespace conecert
