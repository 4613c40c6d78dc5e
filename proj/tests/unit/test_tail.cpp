#include <random>

#include "conecert/tail.hpp"
#include "doctest.h"

using namespace conecert;

namespace {

KPoly kp(std::initializer_list<long> cs) {
  std::vector<KElem> v;
  for (long c : cs) v.emplace_back(c);
  return KPoly(v);
}

}  // namespace

TEST_CASE("tail positivity examples") {
  TailResult a = certify_tail_positive(kp({0, 2, -5}), Rational(1), "a");
  REQUIRE(a.ok);
  CHECK(a.cert.threshold >= Rational(1, 3));
  CHECK(a.cert.threshold < Rational(2, 5));
  CHECK(replay_tail(kp({0, 2, -5}), a.cert));

  TailResult b = certify_tail_positive(kp({1, 1}), Rational(1));
  REQUIRE(b.ok);
  CHECK(b.cert.threshold == 1);
  CHECK(b.cert.index() == 1);

  TailResult c = certify_tail_positive(kp({0, -1, 1}), Rational(1));
  CHECK(!c.ok);
  CHECK(c.reason == "negative near 0");
  CHECK(!certify_tail_positive(KPoly(), Rational(1)).ok);
}

TEST_CASE("tail with an irrational coefficient") {
  Extension e = extend(nullptr, to_kpoly(UniPoly{Rational(-2), Rational(0), Rational(1)}));
  KElem r2 = e.root;
  // 3 + (sqrt2 - 6) Y > 0 for Y < 3 / (6 - sqrt2) ~ 0.654
  KPoly f{KElem(3), r2 - KElem(6)};
  TailResult t = certify_tail_positive(f, Rational(1));
  REQUIRE(t.ok);
  CHECK(t.cert.threshold > Rational(65, 100));
  CHECK(t.cert.threshold < Rational(655, 1000));
  CHECK(t.cert.index() == 2);
}

TEST_CASE("replay rejects tampered thresholds") {
  KPoly f = kp({0, 2, -5});
  TailResult a = certify_tail_positive(f, Rational(1));
  REQUIRE(a.ok);
  TailCertificate bad = a.cert;
  bad.threshold = Rational(1, 2);
  CHECK(!replay_tail(f, bad));
  bad = a.cert;
  bad.valuation = 0;
  CHECK(!replay_tail(f, bad));
  CHECK(!replay_tail(-f, a.cert));
}

TEST_CASE("property: certified thresholds never cross a root") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    KPoly f = kp({coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)});
    if (f.is_zero_poly()) continue;
    TailResult t = certify_tail_positive(f, Rational(1));
    if (!t.ok) continue;
    // dense rational sampling as the oracle
    UniPoly g = to_unipoly(f);
    for (int k = 1; k <= 400; ++k) {
      Rational y = t.cert.threshold * Rational(k, 400);
      CHECK(g(y) > 0);
    }
  }
}
