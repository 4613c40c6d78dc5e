#include <algorithm>
#include <map>
#include <random>

#include "conecert/recurrence.hpp"
#include "conecert/spectral.hpp"
#include "doctest.h"

using namespace conecert;

namespace {

UniPoly ypoly(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return UniPoly(v);
}

BiPoly xpoly(std::initializer_list<UniPoly> cs) { return BiPoly(std::vector<UniPoly>(cs)); }

// X - (a + b Y)
BiPoly linear(long a, long b) { return xpoly({ypoly({-a, -b}), ypoly({1})}); }

Recurrence example() {
  UniPoly n = UniPoly::x();
  Recurrence r;
  UniPoly p2 = ypoly({4}) * (n + ypoly({3})) * (n + ypoly({4})).pow(2);
  UniPoly p1 = (n + ypoly({3})) * ypoly({73, 48, 8});
  UniPoly p0 = -((n + ypoly({2})) * ypoly({5, 2}).pow(2));
  r.p = {p0, p1, p2};
  r.initial = {Rational(1, 64), Rational(11, 768)};
  return r;
}

SpectralReport example_report() { return analyze_spectrum(companion(example()), Rational(2)); }

}  // namespace

TEST_CASE("example recurrence: two groups, dominant branch 1 + (-2 + sqrt2) Y") {
  SpectralReport r = example_report();
  CHECK(r.grouping.sizes == std::vector<int>{1, 1});
  REQUIRE(r.order.size() == 2);
  const PuiseuxBranch& b = r.branch(0);
  CHECK(b.is_real());
  REQUIRE(b.series.size() >= 2);
  CHECK(b.series[0] == KElem(1));
  KElem c = b.series[1];
  CHECK(c * c + KElem(4) * c + KElem(2) == KElem(0));
  CHECK(sign(c) < 0);
  CHECK(sign(c - KElem(-1)) > 0);
  CHECK(r.dimension() == 2);
  CHECK(r.dominant_limit().is_rational());
}

TEST_CASE("modulus groups of small polynomials") {
  CHECK(modulus_groups(linear(2, 0) * linear(1, 0)).sizes == std::vector<int>{1, 1});
  ModulusGrouping rot = modulus_groups(xpoly({ypoly({1}), ypoly({0}), ypoly({1})}));
  CHECK(rot.sizes == std::vector<int>{2});
  // limits 1 and -1 tie; 1 + Y pulls ahead
  ModulusGrouping split = modulus_groups(linear(1, 1) * linear(-1, 0));
  CHECK(split.sizes == std::vector<int>{1, 1});
  CHECK(split.paths[0] == "expansion");
  // (X - 1)(X^2 + 1/4 + Y): a real root over a complex pair
  BiPoly cubic = linear(1, 0) * xpoly({UniPoly{Rational(1, 4), Rational(1)}, ypoly({0}), ypoly({1})});
  CHECK(modulus_groups(cubic).sizes == std::vector<int>{1, 2});
  CHECK_THROWS_AS(modulus_groups(linear(1, 0) * linear(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(modulus_groups(linear(0, 0) * linear(1, 0)), std::invalid_argument);
}

TEST_CASE("contraction") {
  SpectralReport r = example_report();
  ContractionResult c = check_contraction(r);
  CHECK(c.holds);
  CHECK(c.holds_from >= 1);
  CHECK(!c.certificates.empty());
  for (long n = c.holds_from; n < c.holds_from + 30; ++n) CHECK(contraction_margin(r, n).positive());

  SpectralReport rot = analyze_polynomial(xpoly({ypoly({1}), ypoly({0}), ypoly({1})}), Rational(1));
  ContractionResult cr = check_contraction(rot);
  CHECK(!cr.holds);
  CHECK(cr.reason == "tie at top modulus");

  SpectralReport neg = analyze_polynomial(linear(-2, 0) * linear(1, 0), Rational(1));
  CHECK(!check_contraction(neg).holds);
}

TEST_CASE("theorem conditions") {
  TheoremConditions t = check_theorem_conditions(example_report());
  CHECK(t.contraction == Tri::True);
  CHECK(t.distinct_limits == Tri::False);
  CHECK(t.step_below_margin == Tri::True);
  CHECK(contraction_margin_order(example_report()) == Rational(1));

  TheoremConditions k = check_theorem_conditions(analyze_polynomial(linear(2, 0) * linear(1, 0), Rational(1)));
  CHECK(k.contraction == Tri::True);
  CHECK(k.distinct_limits == Tri::True);
  CHECK(k.step_below_margin == Tri::True);
  CHECK(to_string(Tri::Undetermined) == "undetermined");
}

TEST_CASE("multiplicities from repeated factors") {
  BiPoly q = linear(3, 0) * linear(1, 1) * linear(1, 1);
  SpectralReport r = analyze_polynomial(q, Rational(1));
  REQUIRE(r.order.size() == 2);
  CHECK(r.multiplicity_at(0) == 1);
  CHECK(r.multiplicity_at(1) == 2);
  CHECK(r.dimension() == 3);
  CHECK(check_contraction(r).holds);
  CHECK(check_theorem_conditions(r).distinct_limits == Tri::False);
}

TEST_CASE("property: grouping of linear branches matches the exact moduli") {
  // roots a + b Y; for small Y the modulus is |a| + sgn(a) b Y, or |b| Y when a = 0
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> ca(-3, 3), cb(-2, 2), deg(2, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const long d = deg(rng);
    std::vector<std::pair<long, long>> roots;
    while (static_cast<long>(roots.size()) < d) {
      std::pair<long, long> r{ca(rng), cb(rng)};
      if (r == std::pair<long, long>{0, 0}) continue;
      if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
      roots.push_back(r);
    }
    BiPoly q(UniPoly(Rational(1)));
    std::map<std::pair<long, long>, int, std::greater<>> keys;
    for (auto [a, b] : roots) {
      q = q * linear(a, b);
      keys[a != 0 ? std::pair<long, long>{std::abs(a), a > 0 ? b : -b} : std::pair<long, long>{0, std::abs(b)}]++;
    }
    std::vector<int> want;
    for (const auto& [k, count] : keys) want.push_back(count);
    CAPTURE(to_string(q));
    CHECK(modulus_groups(q).sizes == want);
  }
}
