#pragma once

// Linear recurrences with polynomial coefficients
//
//   p_d(n) u_{n+d} = p_{d-1}(n) u_{n+d-1} + ... + p_0(n) u_n
//
// and their companion operator. The state is U_n = (u_n, ..., u_{n+d-1}) and
// U_{n+1} = A(n) U_n, where A(n) has ones on the superdiagonal and the bottom
// row (p_0/p_d, ..., p_{d-1}/p_d).

#include <stdexcept>
#include <string>
#include <vector>

#include "conecert/bipoly.hpp"

namespace conecert {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Recurrence {
  std::vector<UniPoly> p;         // p_0 .. p_d
  std::vector<Rational> initial;  // u_0 .. u_{d-1}

  size_t order() const { return p.empty() ? 0 : p.size() - 1; }
};

// Throws InputError on: order < 1, wrong number of initial values, p_0 or p_d
// zero, p_d vanishing at a nonnegative integer (message names it), or
// deg p_i > deg p_d.
void validate(const Recurrence& rec);

// Nonnegative integer roots of p, ascending.
std::vector<long> nonnegative_integer_roots(const UniPoly& p);

RatFuncMatrix companion(const Recurrence& rec);

// u_0 .. u_{count-1}
std::vector<Rational> unroll(const Recurrence& rec, size_t count);
// Continues an existing prefix (at least d values) up to `count` values.
void unroll_more(const Recurrence& rec, std::vector<Rational>& u, size_t count);

// Entrywise limit as n -> infinity. Throws InputError("not Poincaré type")
// when an entry has a numerator of larger degree than its denominator.
RatMatrix limit_matrix(const RatFuncMatrix& a);

// Exact value of A(n).
RatMatrix evaluate(const RatFuncMatrix& a, const Rational& n);

std::string to_string(const Recurrence& rec);

}  // namespace conecert
