#include <doctest.h>

#include "conecert/numberfield.hpp"

using namespace conecert;

namespace {
KPoly kp(std::initializer_list<long> c) {
  std::vector<KElem> v;
  for (long x : c) v.emplace_back(x);
  return KPoly(v);
}
bool near(const ComplexInterval& z, double re, double im, double tol) {
  return std::abs(z.re().mid_d() - re) < tol && std::abs(z.im().mid_d() - im) < tol;
}
}  // namespace

TEST_CASE("quadratic field from x^2 - 2") {
  Extension e = extend(nullptr, kp({-2, 0, 1}));
  REQUIRE(e.field);
  CHECK(e.field->minpoly() == UniPoly{-2, 0, 1});
  KElem r = e.root;
  CHECK(r * r == KElem(2));
  CHECK(sign(r - KElem(1)) == 1);
  CHECK(sign(KElem(1) - r) == -1);
  CHECK(sign(r * KElem(3) - KElem(2)) == 1);  // -2 + 3 sqrt2 > 0
  CHECK(inverse(KElem(1) + r) == r - KElem(1));
  CHECK(minimal_polynomial(KElem(-2) + r) == UniPoly{2, 4, 1});
  CHECK(near(enclose(r, Rational(1, 1000)), 1.41421356, 0, 1e-6));
  auto f = factor_squarefree(kp({-2, 0, 1}), e.field);
  CHECK(f.size() == 2);
}

TEST_CASE("cube roots of unity") {
  Extension e = extend(nullptr, kp({1, 1, 1}));
  CHECK(e.field->minpoly() == UniPoly{3, 0, 1});
  const KElem w = e.root;
  CHECK(w * w * w == KElem(1));
  CHECK(near(enclose(w, Rational(1, 100)), -0.5, 0.8660254, 1e-3));
  CHECK_THROWS_AS(sign(w), std::domain_error);
  auto f = factor_squarefree(kp({-1, 0, 0, 1}), e.field);
  CHECK(f.size() == 3);
  CHECK(factor_squarefree(kp({-2, 0, 0, 1}), e.field).size() == 1);
}

TEST_CASE("tower: adjoining sqrt3 to Q(sqrt2)") {
  Extension e1 = extend(nullptr, kp({-2, 0, 1}));
  Extension e2 = extend(e1.field, kp({-3, 0, 1}));
  CHECK(e2.field->degree() == 4);
  KElem s2 = lift(e1.root, e2), s3 = e2.root;
  CHECK(s2 * s2 == KElem(2));
  CHECK(s3 * s3 == KElem(3));
  CHECK(sign(s2) == 1);
  CHECK(sign(s3 - s2) == 1);
  CHECK(minimal_polynomial(s2 + s3) == UniPoly{1, 0, -10, 0, 1});
  CHECK(norm(KPoly{s2, KElem(1)}, e2.field) == UniPoly{4, 0, -4, 0, 1});  // (x^2-2)^2
}

TEST_CASE("cube root of two splits x^3 - 2 partially") {
  Extension e = extend(nullptr, kp({-2, 0, 0, 1}));
  CHECK(e.field->degree() == 3);
  auto f = factor_squarefree(kp({-2, 0, 0, 1}), e.field);
  REQUIRE(f.size() == 2);
  CHECK(f[0].degree() + f[1].degree() == 3);
  Extension e2 = extend(e.field, f[0].degree() == 2 ? f[0] : f[1]);
  CHECK(e2.field->degree() == 6);
  CHECK(factor_squarefree(kp({-2, 0, 0, 1}), e2.field).size() == 3);
}

TEST_CASE("square-free decomposition over a number field") {
  Extension e = extend(nullptr, kp({-2, 0, 1}));
  KPoly lin{-e.root, KElem(1)};
  KPoly p = lin * lin * KPoly{KElem(1), KElem(1)};
  auto sq = squarefree_decomposition(p);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].second == 1);
  CHECK(sq[1].second == 2);
  CHECK(sq[1].first == lin);
}
