#include "conecert/puiseux.hpp"

#include <algorithm>
#include <sstream>

namespace conecert {

namespace {

using KBi = Poly<KPoly>;  // polynomial in W with coefficients in K[T]

struct NeedExtension {
  Extension ext;
};

KPoly lift_poly(const KPoly& p, const Extension& ext) {
  std::vector<KElem> c;
  c.reserve(p.size());
  for (const auto& a : p.coeffs()) c.push_back(lift(a, ext));
  return KPoly(std::move(c));
}

// p(T^q)
KPoly spread(const KPoly& p, long q) {
  if (q == 1 || p.is_zero_poly()) return p;
  std::vector<KElem> c(static_cast<size_t>(p.degree() * q) + 1);
  for (size_t i = 0; i < p.size(); ++i) c[i * static_cast<size_t>(q)] = p.coeffs()[i];
  return KPoly(std::move(c));
}

KBi spread(const KBi& r, long q) {
  std::vector<KPoly> c;
  c.reserve(r.size());
  for (const auto& a : r.coeffs()) c.push_back(spread(a, q));
  return KBi(std::move(c));
}

KPoly mul_monomial(const KPoly& a, const KElem& c, size_t k) {
  if (a.is_zero_poly()) return a;
  std::vector<KElem> r(a.size() + k);
  for (size_t i = 0; i < a.size(); ++i) r[i + k] = a.coeffs()[i] * c;
  return KPoly(std::move(r));
}

// r(T, c T^k + W)
KBi shift_monomial(const KBi& r, const KElem& c, size_t k) {
  std::vector<KPoly> v = r.coeffs();
  const size_t n = v.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t j = n - 1; j-- > i;) v[j] = v[j] + mul_monomial(v[j + 1], c, k);
  }
  return KBi(std::move(v));
}

// r(T, h(T) + W)
KBi shift_poly(const KBi& r, const KPoly& h) {
  std::vector<KPoly> v = r.coeffs();
  const size_t n = v.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t j = n - 1; j-- > i;) v[j] = v[j] + v[j + 1] * h;
  }
  return KBi(std::move(v));
}

KBi strip_t(const KBi& r) {
  long v = -1;
  for (const auto& a : r.coeffs()) {
    if (a.is_zero_poly()) continue;
    long va = a.valuation();
    if (v < 0 || va < v) v = va;
  }
  if (v <= 0) return r;
  std::vector<KPoly> c;
  for (const auto& a : r.coeffs()) c.push_back(a.shifted(-v));
  return KBi(std::move(c));
}

KBi to_kbi(const BiPoly& q, long e) {
  std::vector<KPoly> c;
  for (const auto& a : q.coeffs()) c.push_back(spread(to_kpoly(a), e));
  return KBi(std::move(c));
}

struct Edge {
  long i0, i1;
  Rational gamma;
};

// Edges of the lower Newton polygon of the points (i, val_T r_i), left to right.
std::vector<Edge> newton_edges(const KBi& r) {
  std::vector<std::pair<long, long>> pts;
  for (size_t i = 0; i < r.size(); ++i) {
    if (!r.coeffs()[i].is_zero_poly()) pts.emplace_back(static_cast<long>(i), r.coeffs()[i].valuation());
  }
  std::vector<std::pair<long, long>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      long cross = (a.first - o.first) * (p.second - o.second) - (a.second - o.second) * (p.first - o.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<Edge> out;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    Rational g(hull[k].second - hull[k + 1].second, hull[k + 1].first - hull[k].first);
    g.canonicalize();
    out.push_back({hull[k].first, hull[k + 1].first, g});
  }
  return out;
}

std::vector<std::pair<KElem, int>> roots_over(const KPoly& f, const Field& k) {
  std::vector<std::pair<KElem, int>> out;
  for (const auto& [g, mult] : squarefree_decomposition(f)) {
    if (g.degree() == 1) {
      out.emplace_back(-g[0] / g[1], mult);
      continue;
    }
    for (const auto& h : factor_squarefree(g, k)) {
      if (h.degree() != 1) throw NeedExtension{extend(k, h)};
      out.emplace_back(-h[0] / h[1], mult);
    }
  }
  return out;
}

struct Leaf {
  long e;
  KPoly p;
  long last;  // T-degree of the last computed term
  bool exact;
};

class Expander {
 public:
  Expander(Field k, Rational order, Rational cap) : k_(std::move(k)), order_(std::move(order)), cap_(std::move(cap)) {}

  // Roots W of r with T-valuation > a_min; the branch so far is p.
  void run(KBi r, long e, const KPoly& p, const Rational& a_min, long last) {
    r = strip_t(r);
    if (r.is_zero_poly()) throw std::invalid_argument("not square-free");
    if (r[0].is_zero_poly()) {
      leaves.push_back({e, p, last, true});
      r = strip_t(r.shifted(-1));
      if (!r.is_zero_poly() && r[0].is_zero_poly()) throw std::invalid_argument("not square-free");
    }
    if (r.degree() <= 0) return;
    std::vector<Edge> edges;
    long count = 0;
    for (auto& ed : newton_edges(r)) {
      if (ed.gamma > a_min) {
        count += ed.i1 - ed.i0;
        edges.push_back(ed);
      }
    }
    if (count == 0) return;
    if (count == 1 && edges[0].gamma > order_ * e) {
      leaves.push_back({e, p, last, false});
      return;
    }
    for (const auto& ed : edges) {
      if (count > 1 && ed.gamma > cap_ * e) throw OrderCapError("order cap");
      const long q = ed.gamma.get_den().get_si();
      const long num = ed.gamma.get_num().get_si();
      const long v0 = r[static_cast<size_t>(ed.i0)].valuation();
      std::vector<KElem> phi(static_cast<size_t>(ed.i1 - ed.i0) + 1);
      for (long i = ed.i0; i <= ed.i1; ++i) {
        const KPoly& ri = r[static_cast<size_t>(i)];
        if (ri.is_zero_poly()) continue;
        // on the segment: v_i = v0 - gamma (i - i0)
        Rational on = Rational(v0) - ed.gamma * (i - ed.i0);
        if (on != Rational(ri.valuation())) continue;
        phi[static_cast<size_t>(i - ed.i0)] = ri[static_cast<size_t>(ri.valuation())];
      }
      const KBi r2 = spread(r, q);
      const KPoly p2 = spread(p, q);
      for (const auto& [c, mult] : roots_over(KPoly(std::move(phi)), k_)) {
        (void)mult;
        run(shift_monomial(r2, c, static_cast<size_t>(num)), e * q,
            p2 + KPoly::monomial(c, static_cast<size_t>(num)), Rational(num), num);
      }
    }
  }

  std::vector<Leaf> leaves;

 private:
  Field k_;
  Rational order_;
  Rational cap_;
};

void pair_conjugates(BranchSet& s) {
  const size_t n = s.branches.size();
  for (long bits = 16; bits <= 4096; bits *= 2) {
    const Rational w = pow2(-bits);
    std::vector<std::vector<ComplexInterval>> enc(n);
    for (size_t j = 0; j < n; ++j) {
      for (const auto& c : s.branches[j].series.coeffs()) enc[j].push_back(enclose(c, w));
    }
    bool unique = true;
    std::vector<int> sigma(n, -1);
    for (size_t j = 0; j < n && unique; ++j) {
      int found = -1;
      int hits = 0;
      for (size_t k = 0; k < n; ++k) {
        const auto& a = s.branches[j];
        const auto& b = s.branches[k];
        if (a.ramification != b.ramification || a.series.size() != b.series.size()) continue;
        bool ok = true;
        for (size_t i = 0; i < enc[j].size() && ok; ++i) ok = enc[k][i].overlaps(enc[j][i].conj());
        if (ok) {
          ++hits;
          found = static_cast<int>(k);
        }
      }
      if (hits == 0) throw std::logic_error("branch without a conjugate");
      if (hits > 1) unique = false;
      sigma[j] = found;
    }
    if (!unique) continue;
    for (size_t j = 0; j < n; ++j) {
      if (sigma[static_cast<size_t>(sigma[j])] != static_cast<int>(j)) throw std::logic_error("conjugate pairing");
      s.branches[j].conjugate = sigma[j];
    }
    return;
  }
  throw std::runtime_error("conjugate pairing did not separate");
}

BranchSet expand_impl(const BiPoly& q, Field k, std::optional<KElem> center, const Rational& order,
                      const PuiseuxConfig& cfg, std::vector<Extension> exts) {
  if (order > cfg.max_order) throw OrderCapError("order cap");
  if (order < 0) throw std::invalid_argument("negative order");
  if (q.degree() < 1) throw std::invalid_argument("no X-roots");
  if (eval_y(q, Rational(0)).degree() != q.degree()) throw std::invalid_argument("roots unbounded at Y = 0");
  if (gcd_x(q, derivative_x(q)).degree() > 0) throw std::invalid_argument("not square-free");
  for (int attempt = 0; attempt < 24; ++attempt) {
    try {
      KBi r = to_kbi(q, 1);
      KPoly p0;
      if (center) {
        r = shift_poly(r, KPoly(*center));
        p0 = KPoly(*center);
      }
      Expander ex(k, order, cfg.max_order);
      ex.run(r, 1, p0, center ? Rational(0) : Rational(-1), center ? 0 : -1);
      BranchSet s;
      s.source = q;
      s.field = k;
      s.extensions = exts;
      s.center = center;
      int id = 0;
      for (auto& leaf : ex.leaves) {
        PuiseuxBranch b;
        b.id = id++;
        b.ramification = leaf.e;
        b.series = leaf.p;
        b.exact = leaf.exact;
        b.truncation_order = std::max(order, Rational(leaf.last, leaf.e));
        b.truncation_order.canonicalize();
        s.branches.push_back(std::move(b));
      }
      if (!center && static_cast<long>(s.branches.size()) != q.degree()) {
        throw std::logic_error("branch count differs from the X-degree");
      }
      pair_conjugates(s);
      return s;
    } catch (const NeedExtension& ne) {
      exts.push_back(ne.ext);
      k = ne.ext.field;
      if (center) center = lift(*center, ne.ext);
    }
  }
  throw std::runtime_error("too many field extensions");
}

ComplexInterval enclose_mag(const KElem& a) { return enclose(a, pow2(-40)); }

Rational upper_abs(const KElem& a) { return enclose_mag(a).abs().hi_q(); }

}  // namespace

bool PuiseuxBranch::is_real() const { return conjugate == id; }

std::vector<std::pair<Rational, KElem>> PuiseuxBranch::exact_terms() const {
  std::vector<std::pair<Rational, KElem>> out;
  for (size_t i = 0; i < series.size(); ++i) {
    if (is_zero(series.coeffs()[i])) continue;
    Rational ex(static_cast<long>(i), ramification);
    ex.canonicalize();
    out.emplace_back(ex, series.coeffs()[i]);
  }
  return out;
}

std::vector<PuiseuxTerm> PuiseuxBranch::terms() const {
  std::vector<PuiseuxTerm> out;
  for (const auto& [ex, c] : exact_terms()) out.push_back({ex, make_algebraic(c)});
  return out;
}

std::string PuiseuxBranch::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [ex, c] : exact_terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << conecert::to_string(c) << ")";
    if (ex != 0) os << "*" << var << "^" << conecert::to_string(ex);
  }
  if (first) os << "0";
  return os.str();
}

BranchSet puiseux_expand(const BiPoly& q, const Rational& order, const PuiseuxConfig& cfg) {
  return expand_impl(q, nullptr, std::nullopt, order, cfg, {});
}

BranchSet puiseux_expand_over(const BiPoly& q, const Field& k, const Rational& order, const PuiseuxConfig& cfg) {
  return expand_impl(q, k, std::nullopt, order, cfg, {});
}

BranchSet puiseux_expand_at(const BiPoly& q, const KElem& center, const Rational& order,
                            const PuiseuxConfig& cfg) {
  return expand_impl(q, center.field(), center, order, cfg, {});
}

BranchSet extend_all(const BranchSet& set, const Rational& new_order, const PuiseuxConfig& cfg) {
  BranchSet ns = expand_impl(set.source, set.field, set.center, new_order, cfg, set.extensions);
  if (ns.branches.size() != set.branches.size()) throw std::logic_error("branch count changed on extension");
  std::vector<PuiseuxBranch> ordered(set.branches.size());
  std::vector<bool> used(ns.branches.size(), false);
  for (size_t j = 0; j < set.branches.size(); ++j) {
    const auto& old = set.branches[j];
    KPoly lifted = old.series;
    for (size_t x = set.extensions.size(); x < ns.extensions.size(); ++x) lifted = lift_poly(lifted, ns.extensions[x]);
    int hit = -1;
    for (size_t k = 0; k < ns.branches.size(); ++k) {
      const auto& nb = ns.branches[k];
      if (used[k] || nb.ramification != old.ramification) continue;
      if (nb.series.truncated(old.series.size()) != lifted) continue;
      if (hit >= 0) throw std::logic_error("ambiguous branch prefix");
      hit = static_cast<int>(k);
    }
    if (hit < 0) throw std::logic_error("branch prefix not found after extension");
    used[static_cast<size_t>(hit)] = true;
    ordered[j] = ns.branches[static_cast<size_t>(hit)];
    ordered[j].id = old.id;
  }
  ns.branches = std::move(ordered);
  pair_conjugates(ns);
  return ns;
}

PuiseuxBranch extend_branch(const BranchSet& set, const PuiseuxBranch& b, const Rational& new_order,
                            const PuiseuxConfig& cfg) {
  if (new_order <= b.truncation_order && !b.exact) throw std::invalid_argument("order not increased");
  BranchSet ns = extend_all(set, new_order, cfg);
  for (const auto& nb : ns.branches) {
    if (nb.id == b.id) return nb;
  }
  throw std::logic_error("branch id not found");
}

ComplexInterval evaluate_series(const PuiseuxBranch& b, const Interval& s) {
  const mpfr_prec_t prec = s.precision();
  ComplexInterval acc(prec);
  const auto& c = b.series.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * s + enclose(c[i], prec);
  return acc;
}

ComplexInterval evaluate_branch(const PuiseuxBranch& b, long n, const Rational& width) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    Interval y(Rational(1, n), prec);
    Interval s = b.ramification == 1 ? y : y.root(static_cast<unsigned long>(b.ramification));
    ComplexInterval v = evaluate_series(b, s);
    if ((v.re().width_q() < width && v.im().width_q() < width) || prec > (1 << 16)) return v;
  }
}

Rational branch_step_order(const PuiseuxBranch& b) {
  for (size_t i = 1; i < b.series.size(); ++i) {
    if (!is_zero(b.series.coeffs()[i])) {
      Rational r(static_cast<long>(i), b.ramification);
      r.canonicalize();
      return r + 1;
    }
  }
  throw std::domain_error("constant branch");
}

long roots_beyond(const BiPoly& f, const PuiseuxBranch& b, const Rational& above) {
  KBi r = strip_t(shift_poly(to_kbi(f, b.ramification), b.series));
  if (r.is_zero_poly()) throw std::invalid_argument("zero polynomial");
  long count = 0;
  while (r[0].is_zero_poly()) {
    ++count;
    r = strip_t(r.shifted(-1));
  }
  const Rational lim = above * b.ramification;
  for (const auto& ed : newton_edges(r)) {
    if (ed.gamma > lim) count += ed.i1 - ed.i0;
  }
  return count;
}

KPoly substitute_power(const KPoly& p, long q) { return spread(p, q); }

Rational residual_order(const BiPoly& q, const PuiseuxBranch& b) {
  KPoly acc;
  for (size_t i = q.size(); i-- > 0;) acc = acc * b.series + spread(to_kpoly(q.coeffs()[i]), b.ramification);
  if (acc.is_zero_poly()) return Rational(1L << 30);
  Rational r(acc.valuation(), b.ramification);
  r.canonicalize();
  return r;
}

BranchBound branch_error_bound(const BranchSet& set, size_t index) {
  const PuiseuxBranch& b = set.branches.at(index);
  const long e = b.ramification;
  BranchBound out;
  Rational nt = b.truncation_order * e;
  const long big_n = Integer(nt.get_num() / nt.get_den()).get_si();  // floor, nt >= 0
  out.exponent = Rational(big_n + 1, e);
  out.exponent.canonicalize();
  if (b.exact) {
    out.ok = true;
    out.radius = 0;
    out.y_max = 1;
    return out;
  }
  // G(S, Z) = Q(S^e, P(S) + Z)
  const KBi g = shift_poly(to_kbi(set.source, e), b.series);
  if (g.degree() < 1 || g[1].is_zero_poly()) return out;
  const long kappa = g[1].valuation();
  const long np1 = big_n + 1;
  if (kappa >= np1) return out;
  const long v0 = g[0].is_zero_poly() ? -1 : g[0].valuation();
  if (v0 >= 0 && v0 < np1 + kappa) return out;
  // h_k(S) = G_k(S) S^{np1 (k - 1) - kappa}, h_0 = G_0 / S^{np1 + kappa}
  std::vector<std::vector<Rational>> mag(g.size());
  for (size_t k = 0; k < g.size(); ++k) {
    const KPoly& gk = g[k];
    if (gk.is_zero_poly()) continue;
    const long sh = k == 0 ? -(np1 + kappa) : np1 * (static_cast<long>(k) - 1) - kappa;
    KPoly hk = gk.shifted(sh);
    for (const auto& c : hk.coeffs()) mag[k].push_back(is_zero(c) ? Rational(0) : upper_abs(c));
  }
  const Rational b_lo = enclose_mag(g[1][static_cast<size_t>(kappa)]).abs().lo_q();
  if (b_lo <= 0) return out;
  const Rational c0 = mag[0].empty() ? Rational(0) : mag[0][0];
  const Rational radius = round_up((2 * c0 + pow2(-40)) / b_lo, 64);
  const mpfr_prec_t prec = 128;
  Rational s = 1;
  for (int it = 0; it < 400; ++it, s /= 2) {
    Interval si(s, prec);
    Interval ri(radius, prec);
    auto poly_at = [&](const std::vector<Rational>& m, size_t from) {
      Interval acc(prec);
      for (size_t i = m.size(); i-- > from;) acc = acc * si + Interval(m[i], prec);
      if (from > 0) acc = acc * si.pow(static_cast<unsigned>(from));
      return acc;
    };
    Interval lhs = Interval(b_lo, prec) * ri;
    if (mag[1].size() > 1) lhs -= poly_at(mag[1], 1) * ri;
    lhs -= poly_at(mag[0], 0);
    for (size_t k = 2; k < mag.size(); ++k) {
      if (!mag[k].empty()) lhs -= poly_at(mag[k], 0) * ri.pow(static_cast<unsigned>(k));
    }
    if (lhs.positive()) {
      out.ok = true;
      out.radius = radius;
      Rational y = 1;
      for (long i = 0; i < e; ++i) y *= s;
      out.y_max = y;
      return out;
    }
  }
  return out;
}

}  // namespace conecert
