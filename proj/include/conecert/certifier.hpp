#pragma once

// End-to-end positivity decision: spectral analysis, cone construction with
// truncation-order escalation, inclusion and positivity indices, the entry
// index n0 with U_{n0} in K_{n0}, and an exact check of u_0 .. u_{n0-1}.
//
// Certificates are plain data so that they survive serialization unchanged;
// the verifier rebuilds every object from them and rejects any mismatch.

#include <optional>
#include <string>
#include <vector>

#include "conecert/algebraic.hpp"
#include "conecert/cone.hpp"
#include "conecert/recurrence.hpp"
#include "conecert/spectral.hpp"

namespace conecert {

struct CertifierOptions {
  Rational truncation_order{1};
  Rational max_expansion_order{8};
  long max_unroll = 10000;
  long precision_bits = 128;  // digits of decimal renderings and margin samples
};

// An element of the number field: coordinates in powers of the generator,
// plus its minimal polynomial, a canonical isolating box and a decimal value.
struct AlgebraicRecord {
  std::vector<Rational> rep;
  UniPoly minimal_polynomial;
  Box box;
  std::string approx;
};

struct FieldRecord {
  bool present = false;  // false when every coefficient is rational
  UniPoly minimal_polynomial;
  Box box;
  std::string approx;
};

struct BranchRecord {
  int id = 0;
  int rank = 0;
  int multiplicity = 1;
  int conjugate = 0;
  long ramification = 1;
  Rational truncation_order;
  bool exact = false;
  std::vector<AlgebraicRecord> series;  // coefficients of Y^0, Y^1, ...
};

struct MarginSample {
  long n = 0;
  std::string value;  // enclosure of (lambda_1 - max |lambda_j|) / 2
};

struct CertificateDiagnostics {
  long contraction_from = 0;
  std::vector<MarginSample> margin_samples;
  Tri contraction = Tri::Undetermined;
  Tri distinct_limits = Tri::Undetermined;
  Tri step_below_margin = Tri::Undetermined;
  std::string report;
};

struct PositivityCertificate {
  Recurrence recurrence;
  Rational max_expansion_order;
  long precision_bits = 128;
  Rational truncation_order;
  FieldRecord field;
  std::vector<BranchRecord> branches;  // by branch id
  ModulusGrouping grouping;
  Rational epsilon;
  long basis_valid_from = 1;
  std::vector<TailCertificate> basis_certificates;
  IndexResult positivity;
  IndexResult inclusion;
  long entry_index = 0;
  std::vector<Rational> initial_segment;  // u_0 .. u_{n0 - 1}
  CertificateDiagnostics diagnostics;

  long start_index() const;  // max(N, N_pos, basis_valid_from)
};

enum class Outcome { Positive, NotPositive, Inconclusive };
std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<PositivityCertificate> certificate;
  long witness_index = -1;  // NotPositive: u_k < 0
  Rational witness_value;
  std::string reason;       // Inconclusive reason code
  std::string diagnostics;
};

// Throws InputError for invalid recurrences.
Verdict decide_positivity(const Recurrence& rec, const CertifierOptions& opts = {});

struct VerificationReport {
  bool accepted = false;
  std::string report;
};
VerificationReport verify_certificate(const Recurrence& rec, const PositivityCertificate& cert);

// Human-readable grouping, branches and theorem conditions at the given order.
std::string describe_spectrum(const Recurrence& rec, const CertifierOptions& opts = {});

// The cone basis a certificate describes (for CSV dumps and inspection).
ConeBasis certificate_basis(const PositivityCertificate& cert);

}  // namespace conecert
