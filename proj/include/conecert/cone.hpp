#pragma once

// Cone sequences K_n = { T_n alpha : alpha in C } built from truncated
// eigenvalue branches, where C holds the coefficient vectors with alpha_1 real,
// alpha_1 >= |alpha_k| and conjugate columns carrying conjugate coefficients.
//
// Columns of T (polynomials in Y = 1/n):
//   first column   d * (1, l, ..., l^{d-1})   for the dominant branch l
//   branch i, j    eps^{j-1} binom(k, j-1) l_i^{k-j+1},  k = 0..d-1,  j = 1..m_i

#include <random>
#include <string>
#include <vector>

#include "conecert/recurrence.hpp"
#include "conecert/spectral.hpp"
#include "conecert/tail.hpp"

namespace conecert {

using KMatrix = std::vector<std::vector<KElem>>;

class UnsupportedBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConeBasis {
  size_t d = 0;
  Rational truncation_order;
  Rational epsilon;
  std::vector<std::vector<KPoly>> t;  // t[row][column]
  std::vector<int> conjugate;         // column of the conjugate vector
  std::vector<int> rank;              // branch rank of each column
  std::vector<int> jordan;            // 1-based position in its chain
  int pair_sign = 1;                  // (-1)^(number of conjugate pairs); conj(det T) = pair_sign det T
  KPoly det;
  long valid_from = 1;                // det T_n != 0 for n >= valid_from
  std::vector<TailCertificate> certificates;

  bool real_column(size_t c) const { return conjugate[c] == static_cast<int>(c); }
};

// 0 when every eigenvalue is simple, otherwise a rational strictly inside the
// gap between the moduli of the limits of the second branch and of the first
// multiple one (the first branch when that is the second one).
Rational choose_epsilon(const SpectralReport& r);

// Requires unramified branches (UnsupportedBasis otherwise) and a report of
// dimension d. Throws UnsupportedBasis("degenerate basis") if det T = 0.
ConeBasis build_basis(const SpectralReport& r, const Rational& epsilon);

KMatrix evaluate_basis(const ConeBasis& b, long n);
// T_{n+1}^{-1} A(n) T_n
KMatrix step_matrix(const ConeBasis& b, const Recurrence& rec, long n);

enum class Membership { In, Out, Boundary };
std::string to_string(Membership m);

// alpha with T_n alpha = u
std::vector<KElem> cone_coordinates(const std::vector<Rational>& u, long n, const ConeBasis& b);
Membership membership(const std::vector<Rational>& u, long n, const ConeBasis& b);
std::vector<KElem> cone_coordinates(const std::vector<KElem>& u, long n, const ConeBasis& b);
// Same for a vector with entries in the number field.
Membership membership_exact(const std::vector<KElem>& u, long n, const ConeBasis& b);

struct IndexResult {
  bool ok = false;
  long index = 0;
  std::string reason;
  std::vector<TailCertificate> certificates;
  std::vector<long> slack_bits;  // majorant slack per certified row, 0 when unused
};

// Least certified N_pos with (V_1)_k > sum_{c > 1} |(V_c)_k| for all k and
// n >= N_pos, which makes K_n a subset of the open positive orthant.
IndexResult positivity_index(const ConeBasis& b, long scan_limit = 10000);

// N with A(n) K_n inside K_{n+1} for n >= N, from the row condition
//   m_11 - sum_{k>1} |m_1k| - sum_k |m_ik| > 0   (i > 1)
// on M_n = T_{n+1}^{-1} A(n) T_n.
IndexResult inclusion_index(const ConeBasis& b, const Recurrence& rec, long scan_limit = 10000);

// Per-n checks of the same conditions, by exact evaluation and intervals.
bool positivity_holds_at(const ConeBasis& b, long n);
bool inclusion_holds_at(const ConeBasis& b, const Recurrence& rec, long n);

// Independent re-check of recorded results: each family is rebuilt and every
// tail certificate must equal its recomputation; the index must be the least
// one, with 20 extra values checked past the certified tail. `why` explains a
// rejection.
bool replay_positivity(const ConeBasis& b, const IndexResult& claimed, std::string& why);
bool replay_inclusion(const ConeBasis& b, const Recurrence& rec, const IndexResult& claimed, std::string& why);
// The determinant certificate and valid_from of a rebuilt basis.
bool replay_basis(const ConeBasis& b, std::string& why);

// A random element of C with alpha_1 = 1, as (re, im) pairs.
std::vector<std::pair<Rational, Rational>> sample_coefficients(const ConeBasis& b, std::mt19937_64& rng);
// Enclosure of M alpha for an exact matrix and a rational complex vector.
std::vector<ComplexInterval> apply_matrix(const KMatrix& m, const std::vector<std::pair<Rational, Rational>>& alpha);
// beta_1 real part >= |beta_k| for all k > 1, certified (false when undecided)
bool in_coefficient_set(const std::vector<ComplexInterval>& beta);

// CSV rows "n,role,x_0,...,x_{d-1}" for the cone generators and the given
// state vectors u[n - n_from].
std::string cone_csv(const ConeBasis& b, long n_from, long n_to, const std::vector<std::vector<Rational>>& states);

}  // namespace conecert
