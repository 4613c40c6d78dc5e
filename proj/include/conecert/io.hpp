#pragma once

// JSON formats: problem instances and positivity certificates.
//
// Problem:
//   {"order": d, "coefficients": [[c_0, c_1, ...], ...], "initial": ["1/64", ...],
//    "options": {"truncation_order": 1, "max_unroll": 10000, "precision_bits": 128,
//                "max_expansion_order": 8}}
// coefficients[i] lists p_i(n) in ascending powers of n; entries are integers
// or rational strings. Certificates store every rational as a string and
// every algebraic number as its coordinates in the field generator together
// with its minimal polynomial and an isolating box; "approx" fields are
// decimal renderings for readers and are checked like everything else.

#include <string>

#include "conecert/certifier.hpp"
#include "conecert/recurrence.hpp"

namespace conecert {

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

struct Problem {
  Recurrence recurrence;
  CertifierOptions options;
};

// Throws FormatError on malformed JSON and InputError on an invalid recurrence.
Problem parse_problem(const std::string& text);
std::string problem_to_json(const Problem& p);

std::string certificate_to_json(const PositivityCertificate& cert);
// Throws FormatError when a field is missing or has the wrong type.
PositivityCertificate certificate_from_json(const std::string& text);

// Verifies a certificate given as JSON; malformed input is rejected with a
// parse report instead of throwing.
VerificationReport verify_certificate_json(const Recurrence& rec, const std::string& text);

std::string verdict_to_json(const Verdict& v);

}  // namespace conecert
