#include "conecert/certifier.hpp"
#include "conecert/io.hpp"
#include "doctest.h"

using namespace conecert;

namespace {

UniPoly poly(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return UniPoly(v);
}

Recurrence example() {
  UniPoly n = UniPoly::x();
  Recurrence r;
  r.p = {-((n + poly({2})) * poly({5, 2}).pow(2)), (n + poly({3})) * poly({73, 48, 8}),
         poly({4}) * (n + poly({3})) * (n + poly({4})).pow(2)};
  r.initial = {Rational(1, 64), Rational(11, 768)};
  return r;
}

// constant coefficients: u_{n+d} = c_{d-1} u_{n+d-1} + ... + c_0 u_n
Recurrence constant(std::initializer_list<long> c, std::initializer_list<long> init) {
  Recurrence r;
  for (long x : c) r.p.push_back(poly({x}));
  r.p.push_back(poly({1}));
  for (long x : init) r.initial.emplace_back(x);
  return r;
}

void check_unrolled_positive(const Recurrence& rec, const PositivityCertificate& c) {
  const auto u = unroll(rec, static_cast<size_t>(c.entry_index) + 500);
  for (const auto& x : u) REQUIRE(sgn(x) >= 0);
}

}  // namespace

TEST_CASE("example recurrence is certified and the certificate verifies") {
  const Recurrence rec = example();
  Verdict v = decide_positivity(rec);
  REQUIRE(v.outcome == Outcome::Positive);
  REQUIRE(v.certificate);
  const PositivityCertificate& c = *v.certificate;
  CHECK(c.entry_index >= c.start_index());
  CHECK(c.initial_segment.size() == static_cast<size_t>(c.entry_index));
  CHECK(c.diagnostics.distinct_limits == Tri::False);
  check_unrolled_positive(rec, c);

  VerificationReport r = verify_certificate(rec, c);
  CHECK_MESSAGE(r.accepted, r.report);

  const std::string js = certificate_to_json(c);
  CHECK(certificate_to_json(certificate_from_json(js)) == js);
  CHECK(verify_certificate_json(rec, js).accepted);
  // identical runs give identical certificates
  CHECK(certificate_to_json(*decide_positivity(rec).certificate) == js);
}

TEST_CASE("canonical certificate mutations are rejected") {
  const Recurrence rec = example();
  const PositivityCertificate c = *decide_positivity(rec).certificate;

  PositivityCertificate early = c;
  early.entry_index = c.start_index() - 1;
  early.initial_segment.resize(static_cast<size_t>(early.entry_index));
  CHECK(!verify_certificate(rec, early).accepted);

  PositivityCertificate negated = c;
  negated.initial_segment[1] = -negated.initial_segment[1];
  CHECK(!verify_certificate(rec, negated).accepted);

  PositivityCertificate eps = c;
  eps.epsilon += Rational(1, 8);
  CHECK(!verify_certificate(rec, eps).accepted);

  PositivityCertificate tail = c;
  tail.inclusion.certificates.back().threshold /= 2;
  CHECK(!verify_certificate(rec, tail).accepted);

  PositivityCertificate late = c;
  late.entry_index += 1;
  late.initial_segment = unroll(rec, static_cast<size_t>(late.entry_index));
  CHECK(!verify_certificate(rec, late).accepted);

  Recurrence other = rec;
  other.initial[0] = Rational(1, 32);
  CHECK(!verify_certificate(other, c).accepted);

  CHECK(!verify_certificate_json(rec, "{\"format\": 3}").accepted);
}

TEST_CASE("negative terms give a witness") {
  Verdict v = decide_positivity(constant({1}, {-1}));
  REQUIRE(v.outcome == Outcome::NotPositive);
  CHECK(v.witness_index == 0);
  CHECK(v.witness_value == -1);

  // u_n = 100 - 2^n turns negative at n = 7
  Verdict late = decide_positivity(constant({-2, 3}, {99, 98}));
  REQUIRE(late.outcome == Outcome::NotPositive);
  CHECK(late.witness_index == 7);
  CHECK(late.witness_value == -28);
}

TEST_CASE("Fibonacci numbers are positive from a zero start") {
  const Recurrence rec = constant({1, 1}, {0, 1});
  Verdict v = decide_positivity(rec);
  REQUIRE(v.outcome == Outcome::Positive);
  const PositivityCertificate& c = *v.certificate;
  CHECK(c.field.present);
  CHECK(c.field.minimal_polynomial.degree() == 2);
  CHECK(c.diagnostics.contraction == Tri::True);
  CHECK(c.diagnostics.distinct_limits == Tri::True);
  CHECK(c.diagnostics.step_below_margin == Tri::True);
  check_unrolled_positive(rec, c);
  CHECK(verify_certificate_json(rec, certificate_to_json(c)).accepted);
}

TEST_CASE("a tie at the top modulus is inconclusive") {
  CertifierOptions opts;
  opts.max_unroll = 200;
  Verdict v = decide_positivity(constant({1, 0}, {1, 1}), opts);
  CHECK(v.outcome == Outcome::Inconclusive);
  CHECK(v.reason == "contraction: tie at top modulus");
}

TEST_CASE("problem parsing") {
  Problem p = parse_problem(R"({"order": 1, "coefficients": [[1], [1]], "initial": ["5"],
                                "options": {"truncation_order": 2, "max_unroll": 50}})");
  CHECK(p.recurrence.order() == 1);
  CHECK(p.options.truncation_order == 2);
  CHECK(p.options.max_unroll == 50);
  CHECK(p.options.precision_bits == 128);
  CHECK(parse_problem(problem_to_json(p)).recurrence.p == p.recurrence.p);
  CHECK_THROWS_AS(parse_problem("[1, 2"), FormatError);
  CHECK_THROWS_AS(parse_problem(R"({"order": 2, "coefficients": [[1], [1]], "initial": ["5"]})"), FormatError);
  CHECK_THROWS_AS(parse_problem(R"({"coefficients": [[1], [1]], "initial": ["x"]})"), FormatError);
  CHECK_THROWS_AS(parse_problem(R"({"coefficients": [[1], [-1, 1]], "initial": ["1"]})"), InputError);
}
