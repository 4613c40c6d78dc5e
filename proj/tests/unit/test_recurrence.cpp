#include <random>

#include "conecert/recurrence.hpp"
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

}  // namespace

TEST_CASE("companion of the example recurrence") {
  RatFuncMatrix a = companion(example());
  REQUIRE(a.size() == 2);
  CHECK(a[0][0].is_zero());
  CHECK(a[0][1] == RationalFunction(poly({1})));
  UniPoly n = UniPoly::x();
  CHECK(a[1][0] == RationalFunction(-((n + poly({2})) * poly({5, 2}).pow(2)),
                                    poly({4}) * (n + poly({3})) * (n + poly({4})).pow(2)));
  CHECK(a[1][1] == RationalFunction(poly({73, 48, 8}), poly({4}) * (n + poly({4})).pow(2)));
  RatMatrix l = limit_matrix(a);
  CHECK(l == RatMatrix{{Rational(0), Rational(1)}, {Rational(-1), Rational(2)}});
}

TEST_CASE("unrolling") {
  auto u = unroll(example(), 3);
  CHECK(u == std::vector<Rational>{Rational(1, 64), Rational(11, 768), Rational(201, 16384)});
  // u_2 = (219 u_1 - 50 u_0) / 192 from the coefficients at n = 0
  CHECK(u[2] == (219 * u[1] - 50 * u[0]) / 192);

  Recurrence c{{poly({1}), poly({1})}, {Rational(5)}};
  for (const auto& v : unroll(c, 10)) CHECK(v == 5);
  Recurrence fib{{poly({1}), poly({1}), poly({1})}, {Rational(0), Rational(1)}};
  CHECK(unroll(fib, 6) == std::vector<Rational>{0, 1, 1, 2, 3, 5});
}

TEST_CASE("order one companion is the coefficient ratio") {
  // (n+1) u_{n+1} = (2n+1) u_n
  Recurrence r{{poly({1, 2}), poly({1, 1})}, {Rational(1)}};
  RatFuncMatrix a = companion(r);
  REQUIRE(a.size() == 1);
  CHECK(a[0][0](Rational(3)) == Rational(7, 4));
}

TEST_CASE("input rejection") {
  Recurrence bad{{poly({1}), poly({-3, 1})}, {Rational(1)}};  // p_1 = n - 3
  CHECK_THROWS_WITH_AS(validate(bad), "leading coefficient vanishes at n = 3", InputError);
  Recurrence zero_root{{poly({1}), poly({0, 1})}, {Rational(1)}};  // p_1 = n
  CHECK_THROWS_WITH_AS(validate(zero_root), "leading coefficient vanishes at n = 0", InputError);
  Recurrence poinc{{poly({0, 0, 1}), poly({1, 1})}, {Rational(1)}};
  CHECK_THROWS_WITH_AS(validate(poinc), "not Poincaré type", InputError);
  Recurrence count{{poly({1}), poly({1})}, {}};
  CHECK_THROWS_AS(validate(count), InputError);
  RatFuncMatrix m{{RationalFunction(poly({1, 0, 1}), poly({0, 1}))}};
  CHECK_THROWS_WITH_AS(limit_matrix(m), "not Poincaré type", InputError);
  RatMatrix c{{Rational(3), Rational(-1)}, {Rational(1, 2), Rational(0)}};
  RatFuncMatrix cf(2, std::vector<RationalFunction>(2));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) cf[i][j] = RationalFunction(UniPoly(c[i][j]));
  CHECK(limit_matrix(cf) == c);
}

TEST_CASE("property: companion steps agree with unrolling") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> shift(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t d = 1 + static_cast<size_t>(trial % 3);
    Recurrence r;
    // leading coefficient with roots at negative integers only
    UniPoly pd = poly({shift(rng), 1}) * poly({shift(rng), 1});
    for (size_t i = 0; i < d; ++i) {
      UniPoly pi = poly({coef(rng), coef(rng), coef(rng)});
      if (pi.is_zero_poly()) pi = poly({1});
      r.p.push_back(pi);
    }
    r.p.push_back(pd);
    for (size_t i = 0; i < d; ++i) r.initial.emplace_back(coef(rng), 1 + shift(rng));
    RatFuncMatrix a = companion(r);
    auto u = unroll(r, 100 + d);
    for (size_t n = 0; n < 100; ++n) {
      RatMatrix an = evaluate(a, Rational(static_cast<long>(n)));
      for (size_t i = 0; i < d; ++i) {
        Rational acc = 0;
        for (size_t j = 0; j < d; ++j) acc += an[i][j] * u[n + j];
        CHECK(acc == u[n + 1 + i]);
      }
    }
  }
}
