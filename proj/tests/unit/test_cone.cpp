#include <random>

#include "conecert/cone.hpp"
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
  UniPoly p2 = poly({4}) * (n + poly({3})) * (n + poly({4})).pow(2);
  UniPoly p1 = (n + poly({3})) * poly({73, 48, 8});
  UniPoly p0 = -((n + poly({2})) * poly({5, 2}).pow(2));
  r.p = {p0, p1, p2};
  r.initial = {Rational(1, 64), Rational(11, 768)};
  return r;
}

// constant coefficients with the given monic characteristic polynomial
Recurrence constant(const std::vector<Rational>& charpoly, std::vector<Rational> initial) {
  Recurrence r;
  for (size_t i = 0; i + 1 < charpoly.size(); ++i) r.p.emplace_back(-charpoly[i]);
  r.p.emplace_back(Rational(1));
  r.initial = std::move(initial);
  return r;
}

SpectralReport report(const Recurrence& rec, long order) {
  return analyze_spectrum(companion(rec), Rational(order));
}

std::vector<Rational> state(const std::vector<Rational>& u, size_t n, size_t d) {
  return {u.begin() + static_cast<long>(n), u.begin() + static_cast<long>(n + d)};
}

}  // namespace

TEST_CASE("example basis at order 1: edge generators") {
  SpectralReport r = report(example(), 1);
  CHECK(choose_epsilon(r) == 0);
  ConeBasis b = build_basis(r, Rational(0));
  REQUIRE(b.d == 2);
  CHECK(b.real_column(0));
  CHECK(b.real_column(1));
  // V_11 + V_21 = (3, 3 + (sqrt2 - 6) Y), V_11 - V_21 = (1, 1 + (-2 + 3 sqrt2) Y)
  KPoly plus0 = b.t[0][0] + b.t[0][1], plus1 = b.t[1][0] + b.t[1][1];
  KPoly minus0 = b.t[0][0] - b.t[0][1], minus1 = b.t[1][0] - b.t[1][1];
  CHECK(plus0 == KPoly(KElem(3)));
  CHECK(minus0 == KPoly(KElem(1)));
  REQUIRE(plus1.size() == 2);
  REQUIRE(minus1.size() == 2);
  CHECK(plus1[0] == KElem(3));
  CHECK(minus1[0] == KElem(1));
  const KElem s = plus1[1] + KElem(6);  // sqrt 2
  CHECK(s * s == KElem(2));
  CHECK(sign(s) > 0);
  CHECK(minus1[1] == KElem(-2) + KElem(3) * s);
}

TEST_CASE("example cone positivity and membership") {
  Recurrence rec = example();
  ConeBasis b = build_basis(report(rec, 1), Rational(0));
  IndexResult pos = positivity_index(b);
  REQUIRE(pos.ok);
  // 3n + sqrt2 - 6 > 0 exactly for n >= 2
  CHECK(pos.index == 2);
  CHECK(!positivity_holds_at(b, 1));

  std::vector<Rational> u = unroll(rec, 8);
  CHECK(membership(state(u, 3, 2), 3, b) == Membership::In);

  // V_11 at n = 5, rounded to rationals, is interior; its negative is not in the cone
  KMatrix t5 = evaluate_basis(b, 5);
  std::vector<Rational> v{round_down(enclose(t5[0][0], 128).re().mid_q(), 80),
                          round_down(enclose(t5[1][0], 128).re().mid_q(), 80)};
  CHECK(membership(v, 5, b) == Membership::In);
  std::vector<Rational> neg{-v[0], -v[1]};
  CHECK(membership(neg, 5, b) == Membership::Out);
  std::vector<Rational> exact_edge{Rational(3), Rational(3)};  // V_11 + V_21 at Y = 0 hits the boundary at no finite n
  CHECK(membership(exact_edge, 7, b) != Membership::Boundary);
}

TEST_CASE("example inclusion index") {
  Recurrence rec = example();
  for (long order : {1L, 2L}) {
    ConeBasis b = build_basis(report(rec, order), Rational(0));
    IndexResult inc = inclusion_index(b, rec);
    REQUIRE(inc.ok);
    CAPTURE(order);
    CHECK(inc.index >= b.valid_from);
    for (long n = inc.index; n < inc.index + 10; ++n) CHECK(inclusion_holds_at(b, rec, n));
    if (inc.index > 1) CHECK(!inclusion_holds_at(b, rec, inc.index - 1));
  }
}

TEST_CASE("order one recurrence") {
  Recurrence rec;
  rec.p = {poly({3, 2}), poly({1, 1})};  // (n + 1) u_{n+1} = (2n + 3) u_n
  rec.initial = {Rational(1)};
  SpectralReport r = report(rec, 2);
  ConeBasis b = build_basis(r, choose_epsilon(r));
  REQUIRE(b.d == 1);
  CHECK(b.t[0][0] == KPoly(KElem(1)));
  IndexResult pos = positivity_index(b);
  REQUIRE(pos.ok);
  CHECK(pos.index == 1);
  IndexResult inc = inclusion_index(b, rec);
  REQUIRE(inc.ok);
  CHECK(inc.index == 1);
  CHECK(membership({Rational(5)}, 4, b) == Membership::In);
  CHECK(membership({Rational(-5)}, 4, b) == Membership::Out);
  CHECK(membership({Rational(0)}, 4, b) == Membership::Boundary);
}

TEST_CASE("constant coefficients: the cone does not move") {
  Recurrence rec = constant({Rational(2), Rational(-3), Rational(1)}, {Rational(1), Rational(3)});
  SpectralReport r = report(rec, 1);
  ConeBasis b = build_basis(r, choose_epsilon(r));
  for (const auto& row : b.t) {
    for (const auto& e : row) CHECK(e.degree() <= 0);
  }
  IndexResult inc = inclusion_index(b, rec);
  REQUIRE(inc.ok);
  CHECK(inc.index == b.valid_from);
  CHECK(positivity_index(b).ok);
}

TEST_CASE("epsilon for a repeated eigenvalue") {
  // (X - 2)(X - 1)(X - 1/2)^2
  Recurrence rec = constant({Rational(1, 2), Rational(-11, 4), Rational(21, 4), Rational(-4), Rational(1)},
                            {Rational(1), Rational(1), Rational(1), Rational(1)});
  SpectralReport r = report(rec, 1);
  CHECK(r.dimension() == 4);
  CHECK(choose_epsilon(r) == Rational(1, 4));
  ConeBasis b = build_basis(r, Rational(1, 4));
  CHECK(b.jordan == std::vector<int>{1, 1, 1, 2});
  // Jordan column eps * (0, 1, 2 l, 3 l^2) with l = 1/2
  CHECK(b.t[0][3].is_zero_poly());
  CHECK(b.t[1][3] == KPoly(KElem(Rational(1, 4))));
  CHECK(b.t[3][3] == KPoly(KElem(Rational(3, 16))));
  CHECK(positivity_index(b).ok);
  CHECK(inclusion_index(b, rec).ok);
}

TEST_CASE("complex conjugate columns") {
  // (X - 2)(X^2 + 1): conjugate pair of modulus 1 below a simple dominant root
  Recurrence rec = constant({Rational(-2), Rational(1), Rational(-2), Rational(1)},
                            {Rational(1), Rational(2), Rational(4)});
  SpectralReport r = report(rec, 1);
  ConeBasis b = build_basis(r, choose_epsilon(r));
  CHECK(b.real_column(0));
  CHECK(b.conjugate[1] == 2);
  CHECK(b.conjugate[2] == 1);
  CHECK(b.pair_sign == -1);
  IndexResult pos = positivity_index(b);
  REQUIRE(pos.ok);
  IndexResult inc = inclusion_index(b, rec);
  REQUIRE(inc.ok);
  std::mt19937_64 rng(5);
  for (long n = inc.index; n < inc.index + 5; ++n) {
    KMatrix m = step_matrix(b, rec, n);
    for (int k = 0; k < 50; ++k) CHECK(in_coefficient_set(apply_matrix(m, sample_coefficients(b, rng))));
  }
}

TEST_CASE("ramified branches are rejected") {
  // u_{n+2} = u_n / (n + 1): eigenvalues +- n^{-1/2}
  Recurrence rec;
  rec.p = {poly({1}), poly({0}), poly({1, 1})};
  rec.initial = {Rational(1), Rational(1)};
  SpectralReport r = report(rec, 1);
  CHECK_THROWS_AS(build_basis(r, Rational(0)), UnsupportedBasis);
}

TEST_CASE("property: sampled cone elements are positive and map into the next cone") {
  Recurrence rec = example();
  std::mt19937_64 rng(17);
  ConeBasis b = build_basis(report(rec, 2), Rational(0));
  IndexResult pos = positivity_index(b);
  IndexResult inc = inclusion_index(b, rec);
  REQUIRE(pos.ok);
  REQUIRE(inc.ok);
  for (long n = pos.index; n < pos.index + 20; ++n) {
    KMatrix t = evaluate_basis(b, n);
    for (int k = 0; k < 50; ++k) {
      for (const auto& x : apply_matrix(t, sample_coefficients(b, rng))) CHECK(x.re().positive());
    }
  }
  for (long n = inc.index; n < inc.index + 20; ++n) {
    KMatrix m = step_matrix(b, rec, n);
    for (int k = 0; k < 50; ++k) CHECK(in_coefficient_set(apply_matrix(m, sample_coefficients(b, rng))));
  }
}

TEST_CASE("csv dump") {
  ConeBasis b = build_basis(report(example(), 1), Rational(0));
  std::string csv = cone_csv(b, 3, 4, {{Rational(1), Rational(2)}});
  CHECK(csv.rfind("n,role,x0,x1\n", 0) == 0);
  CHECK(csv.find("3,V_1_1,") != std::string::npos);
  CHECK(csv.find("3,U,1,2") != std::string::npos);
  CHECK(csv.find("4,U") == std::string::npos);
}

TEST_CASE("replay accepts recorded indices and rejects tampering") {
  Recurrence rec = example();
  ConeBasis b = build_basis(report(rec, 2), Rational(0));
  std::string why;
  CHECK(replay_basis(b, why));
  IndexResult pos = positivity_index(b);
  IndexResult inc = inclusion_index(b, rec);
  REQUIRE(pos.ok);
  REQUIRE(inc.ok);
  CHECK(replay_positivity(b, pos, why));
  CHECK(replay_inclusion(b, rec, inc, why));

  IndexResult late = inc;
  late.index += 1;
  CHECK(!replay_inclusion(b, rec, late, why));
  CHECK(why == "index is not minimal");

  IndexResult bad = pos;
  REQUIRE(!bad.certificates.empty());
  bad.certificates[0].delta += Rational(1, 1000);
  CHECK(!replay_positivity(b, bad, why));

  ConeBasis moved = b;
  moved.valid_from += 1;
  CHECK(!replay_basis(moved, why));
}
