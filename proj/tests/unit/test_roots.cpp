#include <doctest.h>

#include <algorithm>
#include <random>

#include "conecert/roots.hpp"
#include "oracles.hpp"

using namespace conecert;
using oracle::from_roots;

TEST_CASE("interval arithmetic encloses exact results") {
  Interval a(Rational(1, 3), 64), b(Rational(2, 7), 64);
  Interval s = a + b, p = a * b, q = a / b;
  CHECK(s.contains(Interval(Rational(13, 21), 64)));
  CHECK(p.contains(Interval(Rational(2, 21), 64)));
  CHECK(q.contains(Interval(Rational(7, 6), 64)));
  Interval r2 = Interval(Rational(2), 128).sqrt();
  CHECK((r2 * r2).contains(Interval(Rational(2), 128)));
  CHECK_THROWS((a / Interval(Rational(-1), Rational(1), 64)));
  CHECK(Interval(Rational(-1), Rational(2), 64).contains_zero());
  CHECK(Interval(Rational(1, 1000), Rational(2), 64).positive());
}

TEST_CASE("isolation of rational and quadratic roots") {
  SUBCASE("distinct rationals") {
    UniPoly p = from_roots({-2, Rational(1, 3), 5});
    auto iso = isolate_roots(p);
    REQUIRE(iso.roots.size() == 3);
    for (const auto& r : iso.roots) CHECK(r.real);
    auto rr = rational_roots(p);
    std::sort(rr.begin(), rr.end());
    REQUIRE(rr.size() == 3);
    CHECK(rr[0] == -2);
    CHECK(rr[1] == Rational(1, 3));
    CHECK(rr[2] == 5);
  }
  SUBCASE("x^2 + 1 has no real root") {
    auto iso = isolate_roots(UniPoly{1, 0, 1});
    REQUIRE(iso.roots.size() == 2);
    for (const auto& r : iso.roots) {
      CHECK_FALSE(r.real);
      CHECK(abs(abs(r.im) - 1) <= r.radius);
    }
  }
  SUBCASE("requested radius is honoured") {
    Rational rad(1, 1000000);
    auto iso = isolate_roots(UniPoly{-2, 0, 1}, rad);
    for (const auto& r : iso.roots) CHECK(r.radius <= rad);
  }
}

TEST_CASE("clustered roots are separated") {
  // (x - 1)(x - 1 - 1e-12)(x + 3)
  Rational eps(1, Integer("1000000000000"));
  UniPoly p = from_roots({1, 1 + eps, -3});
  auto iso = isolate_roots(p);
  REQUIRE(iso.roots.size() == 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) CHECK_FALSE(iso.roots[i].intersects(iso.roots[j]));
}

TEST_CASE("every isolated root satisfies the polynomial") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    UniPoly p = squarefree_part(oracle::random_poly(rng, 2 + trial % 7, 9));
    if (p.degree() < 1) continue;
    auto iso = isolate_roots(p, Rational(1, 1 << 20));
    CHECK(iso.roots.size() == static_cast<size_t>(p.degree()));
    long real_count = 0;
    for (const auto& r : iso.roots) {
      { auto v = eval_poly(p, r.box(256)); CHECK(v.re().contains_zero()); CHECK(v.im().contains_zero()); }
      if (r.real) ++real_count;
    }
    // Sturm-free check: the number of real roots has the parity of the degree
    // minus an even number of complex conjugates.
    CHECK((p.degree() - real_count) % 2 == 0);
  }
}

TEST_CASE("minimal polynomials and factoring") {
  UniPoly f1{-2, 0, 1};          // x^2 - 2
  UniPoly f2{1, 1, 0, 1};        // x^3 + x + 1
  UniPoly f3{-3, 1};             // x - 3
  UniPoly p = f1 * f2 * f3;
  auto iso = isolate_roots(p);
  auto facs = factor_squarefree(iso);
  REQUIRE(facs.size() == 3);
  std::vector<UniPoly> got;
  for (const auto& [f, idx] : facs) {
    CHECK(idx.size() == static_cast<size_t>(f.degree()));
    got.push_back(f);
  }
  auto has = [&](const UniPoly& q) { return std::find(got.begin(), got.end(), primitive_part(q)) != got.end(); };
  CHECK(has(f1));
  CHECK(has(f2));
  CHECK(has(f3));
  for (size_t i = 0; i < iso.roots.size(); ++i) {
    UniPoly m = minimal_polynomial_of_root(iso, i);
    CHECK(is_root_of(iso, i, m));
    CHECK((m.degree() == 1 || m.degree() == 2 || m.degree() == 3));
  }
  CHECK(factor_over_q(f1 * f1 * f3).size() == 2);
}

TEST_CASE("irreducible polynomials stay whole") {
  UniPoly p{-1, -1, 0, 0, 0, 1};  // x^5 - x - 1, irreducible with Galois group S5
  auto facs = factor_over_q(p);
  REQUIRE(facs.size() == 1);
  CHECK(facs[0] == p);
  // Swinnerton-Dyer style: (x^2-2)(x^2-3) splits, x^4 - 10x^2 + 1 does not
  CHECK(factor_over_q(UniPoly{1, 0, -10, 0, 1}).size() == 1);
  CHECK(factor_over_q(UniPoly{6, 0, -5, 0, 1}).size() == 2);
}

TEST_CASE("root matching across polynomials") {
  UniPoly p = from_roots({1, 2, 3});
  UniPoly q = from_roots({2, 2, 7});
  auto ip = isolate_roots(p);
  auto iq = isolate_roots(squarefree_part(q));
  for (const auto& d : iq.roots) {
    auto m = match_root(ip, q, d);
    if (abs(d.re - 2) < Rational(1, 2)) {
      REQUIRE(m.has_value());
      CHECK(abs(ip.roots[*m].re - 2) < Rational(1, 100));
    } else {
      CHECK_FALSE(m.has_value());
    }
  }
}
