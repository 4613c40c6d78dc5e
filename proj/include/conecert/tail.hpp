#pragma once

// Certified positivity of a real polynomial f(Y) on an interval (0, Y*].
//
// f = Y^v g(Y) with g(0) = c_v. The sign of c_v is exact. g stays positive on
// (0, delta] when c_v > sum_{i>v} |c_i| delta^{i-v}; the remaining range
// [delta, Y*] is covered by interval evaluation on a bisection of the range.

#include <string>
#include <vector>

#include "conecert/numberfield.hpp"

namespace conecert {

struct TailCertificate {
  std::string id;
  long valuation = 0;
  Rational delta;      // domination radius
  Rational threshold;  // f > 0 on (0, threshold]
  long pieces = 0;     // interval pieces used on [delta, threshold]

  // least n >= 1 with 1/n <= threshold
  long index() const;

  friend bool operator==(const TailCertificate& a, const TailCertificate& b) {
    return a.id == b.id && a.valuation == b.valuation && a.delta == b.delta && a.threshold == b.threshold &&
           a.pieces == b.pieces;
  }
};

struct TailResult {
  bool ok = false;
  std::string reason;
  TailCertificate cert;
};

// Coefficients must be real numbers (elements of K whose embedding is real).
TailResult certify_tail_positive(const KPoly& f, const Rational& y_max, const std::string& id = "");

// Re-derives positivity on (0, cert.threshold] from the recorded data.
bool replay_tail(const KPoly& f, const TailCertificate& cert);

// Interval value of a real polynomial over the real interval y.
Interval eval_real(const KPoly& f, const Interval& y);

// least n >= 1 with 1/n <= y (y > 0)
long index_for(const Rational& y);

}  // namespace conecert
