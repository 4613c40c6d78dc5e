#pragma once

// Asymptotic eigenvalue structure of A(n): grouping of the eigenvalue branches
// by modulus as Y = 1/n -> 0, ordering, and the contraction condition
// (a unique simple real positive eigenvalue strictly dominating the rest).

#include <optional>
#include <string>
#include <vector>

#include "conecert/bipoly.hpp"
#include "conecert/puiseux.hpp"
#include "conecert/tail.hpp"

namespace conecert {

struct SpectralConfig {
  PuiseuxConfig puiseux;
  ExactArithConfig arith;
};

struct ModulusGrouping {
  std::vector<int> sizes;          // q_1, q_2, ... by decreasing modulus
  std::vector<std::string> paths;  // "limit" or "expansion", per group
};

// q square-free in X, q(0, X) of full degree, q(Y, 0) not identically zero.
ModulusGrouping modulus_groups(const BiPoly& q, const SpectralConfig& cfg = {});

enum class Tri { False, True, Undetermined };
std::string to_string(Tri t);

struct SpectralReport {
  BiPoly q;                       // reversed characteristic polynomial
  std::vector<SquarefreeFactor> factors;
  BiPoly distinct;                // product of the square-free factors
  BranchSet set;                  // branches of `distinct`
  ModulusGrouping grouping;
  std::vector<int> order;         // branch indices by decreasing modulus
  std::vector<std::vector<int>> groups;
  std::vector<int> multiplicity;  // indexed by branch index

  const PuiseuxBranch& branch(size_t rank) const { return set.branches[static_cast<size_t>(order[rank])]; }
  int multiplicity_at(size_t rank) const { return multiplicity[static_cast<size_t>(order[rank])]; }
  size_t dimension() const;       // sum of multiplicities
  AlgebraicNumber dominant_limit() const;
};

// Full analysis of a companion matrix at the given truncation order.
SpectralReport analyze_spectrum(const RatFuncMatrix& a, const Rational& order, const SpectralConfig& cfg = {});
SpectralReport analyze_polynomial(const BiPoly& q, const Rational& order, const SpectralConfig& cfg = {});

// Sorts the branches of r.set by modulus and checks consistency with the
// grouping, raising the truncation order when the truncated moduli do not
// separate the groups yet.
void order_branches(SpectralReport& r, const SpectralConfig& cfg = {});

// Raises the truncation order of every branch and re-sorts.
void extend_report(SpectralReport& r, const Rational& order, const SpectralConfig& cfg = {});

struct ContractionResult {
  bool holds = false;
  std::string reason;
  long holds_from = 0;
  std::vector<TailCertificate> certificates;
};
ContractionResult check_contraction(const SpectralReport& r);

// Y-order of lambda_1 - max_j |lambda_j| (nullopt when not visible at the
// current truncation). Zero for a single branch.
std::optional<Rational> contraction_margin_order(const SpectralReport& r);

// Enclosure of (lambda_1 - max_j |lambda_j|) / 2 at Y = 1/n from the
// truncated branches.
Interval contraction_margin(const SpectralReport& r, long n);

struct TheoremConditions {
  Tri contraction = Tri::Undetermined;
  Tri distinct_limits = Tri::Undetermined;
  Tri step_below_margin = Tri::Undetermined;
  std::string diagnostics;
};
TheoremConditions check_theorem_conditions(const SpectralReport& r);

}  // namespace conecert
