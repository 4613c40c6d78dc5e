#include <random>
#include <set>

#include "conecert/puiseux.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace conecert;

namespace {

UniPoly reversed3(const UniPoly& p) { return p.reversed(3); }

// p2 X^2 - p1 X - p0 with n -> 1/Y, cleared by Y^3
BiPoly example_q() {
  UniPoly n = UniPoly::x();
  UniPoly p2 = UniPoly(Rational(4)) * (n + UniPoly(Rational(3))) * (n + UniPoly(Rational(4))).pow(2);
  UniPoly p1 = (n + UniPoly(Rational(3))) * UniPoly{Rational(73), Rational(48), Rational(8)};
  UniPoly p0 = -((n + UniPoly(Rational(2))) * UniPoly{Rational(5), Rational(2)}.pow(2));
  return BiPoly{-reversed3(p0), -reversed3(p1), reversed3(p2)};
}

BiPoly xpoly(std::initializer_list<UniPoly> cs) { return BiPoly(std::vector<UniPoly>(cs)); }

UniPoly ypoly(std::initializer_list<long> cs) {
  std::vector<Rational> v;
  for (long c : cs) v.emplace_back(c);
  return UniPoly(v);
}

}  // namespace

TEST_CASE("example recurrence branches are 1 + (-2 +- sqrt 2) Y") {
  BranchSet s = puiseux_expand(example_q(), Rational(1));
  REQUIRE(s.branches.size() == 2);
  REQUIRE(s.field);
  CHECK(s.field->minpoly() == UniPoly{Rational(-2), Rational(0), Rational(1)});
  KElem r2 = s.field->generator();
  CHECK(sign(r2) == 1);
  std::vector<KPoly> want = {KPoly{KElem(1), KElem(-2) + r2}, KPoly{KElem(1), KElem(-2) - r2}};
  int matched = 0;
  for (const auto& b : s.branches) {
    CHECK(b.ramification == 1);
    CHECK(b.is_real());
    CHECK(b.truncation_order >= 1);
    CHECK(residual_order(s.source, b) > b.truncation_order);
    for (const auto& w : want) {
      if (b.series.truncated(2) == w) ++matched;
    }
    auto t = b.terms();
    REQUIRE(t.size() >= 2);
    CHECK(t[0].exponent == 0);
    CHECK(t[1].exponent == 1);
    CHECK(t[1].coefficient.minimal_polynomial() == UniPoly{Rational(2), Rational(4), Rational(1)});
  }
  CHECK(matched == 2);
}

TEST_CASE("ramified square root branches") {
  BiPoly q = xpoly({ypoly({0, -1}), UniPoly(), UniPoly(Rational(1))});
  BranchSet s = puiseux_expand(q, Rational(1));
  REQUIRE(s.branches.size() == 2);
  std::set<std::string> seen;
  for (const auto& b : s.branches) {
    CHECK(b.ramification == 2);
    CHECK(b.exact);
    auto t = b.exact_terms();
    REQUIRE(t.size() == 1);
    CHECK(t[0].first == Rational(1, 2));
    seen.insert(to_string(t[0].second));
    ComplexInterval v = evaluate_branch(b, 4, pow2(-60));
    Rational half = t[0].second.to_rational() / 2;
    CHECK(v.re().contains(Interval(half, 256)));
    CHECK(v.im().contains_zero());
    CHECK(branch_step_order(b) == Rational(3, 2));
  }
  CHECK(seen == std::set<std::string>{"1", "-1"});
  PuiseuxBranch ext = extend_branch(s, s.branches[0], Rational(3, 2));
  CHECK(ext.series == s.branches[0].series);
  CHECK(residual_order(q, ext) > Rational(3, 2));
}

TEST_CASE("polynomial branch X = Y^2") {
  BiPoly q = xpoly({ypoly({0, 0, -1}), UniPoly(Rational(1))});
  BranchSet s = puiseux_expand(q, Rational(3));
  REQUIRE(s.branches.size() == 1);
  const auto& b = s.branches[0];
  CHECK(b.exact);
  CHECK(b.series == to_kpoly(ypoly({0, 0, 1})));
  ComplexInterval v = evaluate_branch(b, 10, pow2(-100));
  CHECK(v.re().contains(Interval(Rational(1, 100), 512)));
  CHECK(v.re().width_q() < pow2(-100));
  PuiseuxBranch e = extend_branch(s, b, Rational(5));
  CHECK(e.series == b.series);
}

TEST_CASE("extension keeps the earlier terms") {
  BranchSet s1 = puiseux_expand(example_q(), Rational(1));
  BranchSet s2 = extend_all(s1, Rational(2));
  REQUIRE(s2.branches.size() == 2);
  BranchSet fresh = puiseux_expand_over(example_q(), s1.field, Rational(2));
  for (size_t j = 0; j < 2; ++j) {
    const auto& a = s1.branches[j];
    const auto& b = s2.branches[j];
    CHECK(a.id == b.id);
    CHECK(b.truncation_order >= 2);
    CHECK(b.series.truncated(a.series.size()) == a.series);
    CHECK(b.series.size() >= 3);
    CHECK(!is_zero(b.series[2]));
    CHECK(residual_order(s2.source, b) > 2);
    bool in_fresh = false;
    for (const auto& f : fresh.branches) in_fresh = in_fresh || f.series.truncated(3) == b.series.truncated(3);
    CHECK(in_fresh);
  }
}

TEST_CASE("step orders") {
  PuiseuxBranch b;
  b.series = to_kpoly(ypoly({1, -1, 0, 5}));
  CHECK(branch_step_order(b) == 2);
  b.series = to_kpoly(ypoly({1}));
  CHECK_THROWS_AS(branch_step_order(b), std::domain_error);
  b.ramification = 2;
  b.series = to_kpoly(ypoly({0, 1}));
  CHECK(branch_step_order(b) == Rational(3, 2));
  BranchSet s = puiseux_expand(example_q(), Rational(1));
  CHECK(branch_step_order(s.branches[0]) == 2);
  ComplexInterval v = evaluate_branch(s.branches[0], 4, pow2(-50));
  double expect = 1 + (-2 + (sign(s.branches[0].series[1] + KElem(2)) > 0 ? 1 : -1) * std::sqrt(2.0)) / 4;
  CHECK(std::abs(v.re().mid_d() - expect) < 1e-12);
}

TEST_CASE("cube roots of unity pair up under conjugation") {
  // X^3 - 1 - Y
  BiPoly q = xpoly({ypoly({-1, -1}), UniPoly(), UniPoly(), UniPoly(Rational(1))});
  BranchSet s = puiseux_expand(q, Rational(2));
  REQUIRE(s.branches.size() == 3);
  int real = 0;
  for (size_t j = 0; j < 3; ++j) {
    const auto& b = s.branches[j];
    CHECK(residual_order(q, b) > b.truncation_order);
    if (b.is_real()) {
      ++real;
      CHECK(b.limit() == KElem(1));
      CHECK(b.series[1] == KElem(Rational(1, 3)));
    } else {
      const auto& c = s.branches[static_cast<size_t>(b.conjugate)];
      CHECK(c.conjugate == static_cast<int>(j));
      ComplexInterval x = enclose(b.limit(), pow2(-50));
      ComplexInterval y = enclose(c.limit(), pow2(-50));
      CHECK(x.overlaps(y.conj()));
      CHECK(!x.im().contains_zero());
    }
  }
  CHECK(real == 1);
}

TEST_CASE("local expansion around one limit") {
  // (X - 1)(X - 2) + Y
  BiPoly q = xpoly({ypoly({2, 1}), ypoly({-3}), ypoly({1})});
  BranchSet s = puiseux_expand_at(q, KElem(1), Rational(2));
  REQUIRE(s.branches.size() == 1);
  // W = Y + W^2 with X = 1 + W
  CHECK(s.branches[0].series.truncated(3) == to_kpoly(ypoly({1, 1, 1})));
  CHECK(residual_order(q, s.branches[0]) > 2);
}

TEST_CASE("unsupported inputs") {
  BiPoly sq = xpoly({ypoly({1}), ypoly({-2}), ypoly({1})});  // (X - 1)^2
  CHECK_THROWS_WITH_AS(puiseux_expand(sq, Rational(1)), "not square-free", std::invalid_argument);
  BiPoly q = xpoly({ypoly({0, -1}), UniPoly(Rational(1))});
  CHECK_THROWS_AS(puiseux_expand(q, Rational(9)), OrderCapError);
}

TEST_CASE("error bound encloses the exact eigenvalue") {
  BranchSet s = puiseux_expand(example_q(), Rational(1));
  UniPoly n = UniPoly::x();
  for (size_t j = 0; j < 2; ++j) {
    BranchBound bb = branch_error_bound(s, j);
    REQUIRE(bb.ok);
    CHECK(bb.exponent == 2);
    CHECK(bb.y_max > 0);
    long n0 = 1;
    while (Rational(1, n0) > bb.y_max) ++n0;
    for (long m = n0; m < n0 + 200; m += 7) {
      // exact eigenvalue from the quadratic formula at n = m
      const mpfr_prec_t prec = 256;
      Rational y(1, m);
      UniPoly qx = eval_y(s.source, y);
      Interval a(qx[2], prec), b(qx[1], prec), c(qx[0], prec);
      Interval disc = (b * b - Interval(Rational(4), prec) * a * c).sqrt();
      double t = evaluate_branch(s.branches[j], m, pow2(-80)).re().mid_d();
      Interval r1 = (-b + disc) / (Interval(Rational(2), prec) * a);
      Interval r2 = (-b - disc) / (Interval(Rational(2), prec) * a);
      Interval exact = std::abs(r1.mid_d() - t) < std::abs(r2.mid_d() - t) ? r1 : r2;
      Interval trunc = evaluate_branch(s.branches[j], m, pow2(-80)).re();
      Interval err = (exact - trunc).abs();
      Interval bound = Interval(bb.radius, prec) * Interval(y, prec).pow(2);
      CHECK(err.hi_q() <= bound.lo_q());
    }
  }
}

TEST_CASE("property: products of explicit branches are recovered") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + trial % 4;
    std::vector<UniPoly> roots;
    std::set<std::vector<int>> distinct;
    while (static_cast<int>(roots.size()) < d) {
      std::vector<int> c = {coef(rng), coef(rng), coef(rng), coef(rng)};
      // shared limits are wanted, so the constant term comes from a small set
      c[0] = c[0] % 2;
      if (!distinct.insert(c).second) continue;
      roots.push_back(ypoly({c[0], c[1], c[2], c[3]}));
    }
    BiPoly q(UniPoly(Rational(1)));
    for (const auto& r : roots) q = q * xpoly({-r, UniPoly(Rational(1))});
    BranchSet s = puiseux_expand(q, Rational(2));
    REQUIRE(s.branches.size() == static_cast<size_t>(d));
    std::vector<bool> used(roots.size(), false);
    for (const auto& b : s.branches) {
      CHECK(b.ramification == 1);
      CHECK(b.is_real());
      CHECK(residual_order(q, b) > b.truncation_order);
      int hit = -1;
      for (size_t k = 0; k < roots.size(); ++k) {
        if (!used[k] && to_kpoly(roots[k]).truncated(3) == b.series.truncated(3)) hit = static_cast<int>(k);
      }
      REQUIRE(hit >= 0);
      used[static_cast<size_t>(hit)] = true;
    }
    // a bound exists once the truncation separates each root far enough
    Rational order = 2;
    for (size_t j = 0; j < s.branches.size(); ++j) {
      BranchBound bb = branch_error_bound(s, j);
      while (!bb.ok && order < 8) {
        order += 2;
        s = extend_all(s, order);
        bb = branch_error_bound(s, j);
      }
      CHECK(bb.ok);
      CHECK(bb.exponent > s.branches[j].truncation_order);
    }
  }
}
