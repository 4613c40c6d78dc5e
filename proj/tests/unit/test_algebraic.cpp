#include <doctest.h>

#include <random>

#include "conecert/algebraic.hpp"

using namespace conecert;

TEST_CASE("make_algebraic examples") {
  AlgebraicNumber s2 = make_algebraic(UniPoly{-2, 0, 1}, Box{1, 2, 0, 0});
  CHECK(s2.minimal_polynomial() == UniPoly{-2, 0, 1});
  CHECK(sign(s2) == 1);
  AlgebraicNumber w = make_algebraic(UniPoly{1, 1, 1}, Box{-1, 1, Rational(1, 10), 2});
  CHECK(w.minimal_polynomial() == UniPoly{1, 1, 1});
  ComplexInterval z = refine(w, Rational(1, 100));
  CHECK(z.re().lo_q() >= Rational(-51, 100));
  CHECK(z.re().hi_q() <= Rational(-49, 100));
  CHECK(z.im().lo_q() >= Rational(86, 100));
  CHECK(z.im().hi_q() <= Rational(87, 100));
  AlgebraicNumber q = make_algebraic(UniPoly{Rational(-3, 4), 1}, Box{0, 1, -1, 1});
  CHECK(q.is_rational());
  CHECK(q.rational_value() == Rational(3, 4));
  CHECK_THROWS_WITH_AS(make_algebraic(UniPoly{-2, 0, 1}, Box{-2, 2, 0, 0}), "box not isolating", std::invalid_argument);
  CHECK_THROWS_AS(make_algebraic(UniPoly{-2, 0, 1}, Box{2, 3, 0, 0}), std::invalid_argument);
  // reducible input: the factor vanishing in the box is kept
  AlgebraicNumber r = make_algebraic(UniPoly{-2, 0, 1} * UniPoly{-3, 1}, Box{1, 2, 0, 0});
  CHECK(r.minimal_polynomial() == UniPoly{-2, 0, 1});
}

TEST_CASE("refinement is contractive and keeps the root") {
  AlgebraicNumber s2 = make_algebraic(UniPoly{-2, 0, 1}, Box{1, 2, 0, 0});
  ComplexInterval a = refine(s2, Rational(1, 1000));
  CHECK(a.re().lo_q() >= Rational(1414, 1000));
  CHECK(a.re().hi_q() <= Rational(14143, 10000));
  ComplexInterval b = refine(s2, Rational(1, 1000000));
  CHECK(a.re().contains(b.re()));
  ComplexInterval c = refine(AlgebraicNumber(Rational(5, 7)), Rational(1, 10));
  // rationals come back at full working precision whatever width is asked
  CHECK(c.re().width_q() < pow2(-120));
  CHECK(c.re().lo_q() <= Rational(5, 7));
  CHECK(c.re().hi_q() >= Rational(5, 7));
}

TEST_CASE("compare_modulus") {
  AlgebraicNumber s2 = make_algebraic(UniPoly{-2, 0, 1}, Box{1, 2, 0, 0});
  CHECK(compare_modulus(s2, AlgebraicNumber(Rational(1))) == Ordering::Greater);
  AlgebraicNumber w1 = make_algebraic(UniPoly{1, 1, 1}, Box{-1, 0, 0, 1});
  AlgebraicNumber w2 = make_algebraic(UniPoly{1, 1, 1}, Box{-1, 0, -1, 0});
  CHECK(compare_modulus(w1, w2) == Ordering::Equal);
  CHECK(compare_modulus(w1, AlgebraicNumber(Rational(1))) == Ordering::Equal);
  CHECK(compare_modulus(AlgebraicNumber(Rational(7, 10)), AlgebraicNumber(Rational(9, 10))) == Ordering::Less);
  // |1 + i| = sqrt 2
  AlgebraicNumber opi = make_algebraic(UniPoly{2, -2, 1}, Box{0, 2, Rational(1, 2), 2});
  CHECK(compare_modulus(opi, s2) == Ordering::Equal);
  CHECK(compare_modulus(s2, opi) == Ordering::Equal);
}

TEST_CASE("sign examples") {
  Extension e = extend(nullptr, KPoly{KElem(-2), KElem(0), KElem(1)});
  KElem r = e.root;
  CHECK(sign(make_algebraic(r - KElem(1))) == 1);
  CHECK(sign(AlgebraicNumber()) == 0);
  AlgebraicNumber g = make_algebraic(KElem(-2) + r * KElem(3));
  CHECK(sign(g) == 1);
  CHECK(g.minimal_polynomial() == UniPoly{-14, 4, 1});
  AlgebraicNumber w = make_algebraic(UniPoly{1, 1, 1}, Box{-1, 0, 0, 1});
  CHECK_THROWS_AS(sign(w), std::domain_error);
}

TEST_CASE("modulus order is a total preorder on random samples") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  std::vector<AlgebraicNumber> xs;
  while (xs.size() < 10) {
    UniPoly p{c(rng), c(rng), 1};
    if (p.coeffs()[0] == 0) continue;
    IsolatedRoots iso = isolate_roots(squarefree_part(p));
    const RootDisk& d = iso.roots[0];
    xs.push_back(make_algebraic(p, Box{d.re - d.radius, d.re + d.radius, d.real ? Rational(0) : d.im - d.radius,
                                       d.real ? Rational(0) : d.im + d.radius}));
  }
  auto cmp = [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare_modulus(a, b); };
  for (const auto& a : xs) {
    CHECK(cmp(a, a) == Ordering::Equal);
    for (const auto& b : xs) {
      Ordering ab = cmp(a, b), ba = cmp(b, a);
      CHECK((ab == Ordering::Equal) == (ba == Ordering::Equal));
      CHECK((ab == Ordering::Less) == (ba == Ordering::Greater));
      for (const auto& x : xs) {
        if (ab != Ordering::Greater && cmp(b, x) != Ordering::Greater) CHECK(cmp(a, x) != Ordering::Greater);
      }
    }
  }
  for (const auto& a : xs) {
    if (!a.is_real()) continue;
    int s = sign(a);
    CHECK(s != 0);
  }
}
