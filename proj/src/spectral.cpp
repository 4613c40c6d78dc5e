#include "conecert/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "conecert/roots.hpp"

namespace conecert {

namespace {

KPoly lift_to(const KPoly& p, long e, long l) { return substitute_power(p, l / e); }

// Sign of a - b at the lowest exponent <= cut (in Y) where they differ.
int compare_series(const KPoly& a, long ea, const KPoly& b, long eb, const Rational& cut) {
  const long l = std::lcm(ea, eb);
  const KPoly d = lift_to(a, ea, l) - lift_to(b, eb, l);
  for (size_t i = 0; i < d.size(); ++i) {
    if (Rational(static_cast<long>(i), l) > cut) break;
    if (!is_zero(d.coeffs()[i])) return sign(d.coeffs()[i]);
  }
  return 0;
}

KPoly norm_series(const BranchSet& s, size_t j) {
  const auto& b = s.branches[j];
  return b.series * s.branches[static_cast<size_t>(b.conjugate)].series;
}

struct LimitRoot {
  IsolatedRoots iso;
  size_t index = 0;
};

// Largest positive real root among the limits of the shapes, if any.
std::optional<LimitRoot> max_positive_root(const std::vector<std::pair<UniPoly, int>>& shapes) {
  UniPoly g(Rational(1));
  for (const auto& [h, e] : shapes) {
    if (h.degree() > 0) g = squarefree_part(g * squarefree_part(h));
  }
  while (g.degree() > 0 && is_zero(g[0])) g = g.shifted(-1);
  if (g.degree() < 1) return std::nullopt;
  LimitRoot out;
  out.iso = isolate_roots(g);
  std::optional<size_t> best;
  for (size_t i = 0; i < out.iso.roots.size(); ++i) {
    RootDisk& r = out.iso.roots[i];
    if (!r.real) continue;
    // 0 is not a root, so refinement eventually separates the disk from it
    while (r.re - r.radius <= 0 && r.re + r.radius >= 0) r = refine_root(g, r, r.radius / 4);
    if (r.re < 0) continue;
    if (!best || r.re > out.iso.roots[*best].re) best = i;
  }
  if (!best) return std::nullopt;
  out.index = *best;
  return out;
}

int limit_group_size(const std::vector<std::pair<UniPoly, int>>& shapes, const LimitRoot& m) {
  int hits = 0, size = 0;
  bool simple = true;
  for (const auto& [h, e] : shapes) {
    if (h.degree() < 1 || !is_root_of(m.iso, m.index, h)) continue;
    ++hits;
    size = e;
    if (is_root_of(m.iso, m.index, h.derivative())) simple = false;
  }
  return hits == 1 && simple ? size : 0;
}

int expansion_group_size(const BiPoly& q, size_t m, const std::optional<LimitRoot>& lim, const SpectralConfig& cfg) {
  KElem center(0);
  if (lim) {
    UniPoly mp = minimal_polynomial_of_root(lim->iso, lim->index);
    if (mp.degree() == 1) {
      center = KElem(-mp[0] / mp[1]);
    } else {
      Extension ext = extend(nullptr, to_kpoly(mp));
      const RootDisk& disk = lim->iso.roots[lim->index];
      if (!enclose(ext.root, disk.radius).overlaps(disk.box(256))) {
        throw std::logic_error("limit field embeds a different root");
      }
      center = ext.root;
    }
  }
  // pair product of P_m = prod H_k^e_k; only the shapes through the limit matter
  std::vector<SquarefreeFactor> relevant;
  BiPoly g(UniPoly(Rational(1)));
  for (const auto& [h, e] : composed_square_shapes(q, m, cfg.arith)) {
    if (h.degree() < 1 || !is_zero(to_kpoly(eval_y(h, Rational(0)))(center))) continue;
    for (const auto& sf : squarefree_decomposition(h)) {
      if (sf.multiplicity < 1 || sf.factor.degree() < 1) continue;
      if (!is_zero(to_kpoly(eval_y(sf.factor, Rational(0)))(center))) continue;
      relevant.push_back({sf.factor, sf.multiplicity * e});
      g = g * sf.factor;
    }
  }
  if (g.degree() < 1) throw std::logic_error("no composed-product branch at the limit");
  // the same branch may sit in two shapes
  if (!certify_squarefree(g)) g = exact_div(g, gcd_x(g, derivative_x(g)));
  for (Rational order = 1; order <= cfg.puiseux.max_order; order *= 2) {
    BranchSet s = puiseux_expand_at(g, center, order, cfg.puiseux);
    Rational cut = order;
    for (const auto& b : s.branches) cut = std::min(cut, b.truncation_order);
    int best = -1;
    bool tie = false;
    for (size_t j = 0; j < s.branches.size(); ++j) {
      const auto& b = s.branches[j];
      if (!b.is_real()) continue;
      if (best < 0) {
        best = static_cast<int>(j);
        continue;
      }
      const auto& c = s.branches[static_cast<size_t>(best)];
      int cmp = compare_series(b.series, b.ramification, c.series, c.ramification, cut);
      if (cmp == 0) tie = true;
      if (cmp > 0) best = static_cast<int>(j);
    }
    if (best < 0) throw std::logic_error("no real composed-product branch");
    if (tie) continue;
    const auto& top = s.branches[static_cast<size_t>(best)];
    int total = 0;
    for (const auto& sf : relevant) {
      if (roots_beyond(sf.factor, top, top.truncation_order) == 1) total += sf.multiplicity;
    }
    if (total == 0) throw std::logic_error("dominant composed-product branch has no owner");
    return total;
  }
  throw OrderCapError("expansion order cap exceeded");
}

void assign_multiplicities(SpectralReport& r) {
  r.multiplicity.assign(r.set.branches.size(), 0);
  for (size_t j = 0; j < r.set.branches.size(); ++j) {
    const auto& b = r.set.branches[j];
    for (const auto& sf : r.factors) {
      if (roots_beyond(sf.factor, b, b.truncation_order) == 1) {
        r.multiplicity[j] = sf.multiplicity;
        break;
      }
    }
    if (r.multiplicity[j] == 0) throw std::logic_error("branch not owned by a square-free factor");
  }
}

Rational lower_root(const Rational& y, long l) {
  if (l == 1) return y;
  return Interval(y, 256).root(static_cast<unsigned long>(l)).lo_q();
}

long lcm_ramification(const BranchSet& s) {
  long l = 1;
  for (const auto& b : s.branches) l = std::lcm(l, b.ramification);
  return l;
}

// exponent in Y times l, as an index into a series in S = Y^(1/l)
long scaled_index(const Rational& ex, long l) {
  const Rational t = ex * l;
  return Integer(t.get_num() / t.get_den()).get_si();
}

// r S^k as a polynomial
KPoly monomial(const Rational& r, long k) { return KPoly::monomial(KElem(r), static_cast<size_t>(k)); }

}  // namespace

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    default:
      return "undetermined";
  }
}

ModulusGrouping modulus_groups(const BiPoly& q, const SpectralConfig& cfg) {
  const long d = q.degree();
  if (d < 1) throw std::invalid_argument("no X-roots");
  const UniPoly q0 = eval_y(q, Rational(0));
  if (q0.degree() != d) throw std::invalid_argument("roots unbounded at Y = 0");
  if (q[0].is_zero_poly()) throw std::invalid_argument("zero root");
  if (!certify_squarefree(q) && gcd_x(q, derivative_x(q)).degree() > 0) throw std::invalid_argument("not square-free");
  ModulusGrouping g;
  long sum = 0;
  while (sum < d) {
    if (d - sum == 1) {
      g.sizes.push_back(1);
      g.paths.emplace_back("remaining");
      break;
    }
    const auto m = static_cast<size_t>(sum + 1);
    const auto shapes = composed_square_shapes(q0, m, cfg.arith);
    const auto lim = max_positive_root(shapes);
    int size = lim ? limit_group_size(shapes, *lim) : 0;
    if (size > 0) {
      g.paths.emplace_back("limit");
    } else {
      size = expansion_group_size(q, m, lim, cfg);
      g.paths.emplace_back("expansion");
    }
    if (size < 1 || sum + size > d) throw std::logic_error("inconsistent modulus group size");
    g.sizes.push_back(size);
    sum += size;
  }
  return g;
}

size_t SpectralReport::dimension() const {
  size_t s = 0;
  for (int m : multiplicity) s += static_cast<size_t>(m);
  return s;
}

AlgebraicNumber SpectralReport::dominant_limit() const { return make_algebraic(branch(0).limit()); }

void order_branches(SpectralReport& r, const SpectralConfig& cfg) {
  for (;;) {
    const size_t n = r.set.branches.size();
    Rational cut = r.set.branches.front().truncation_order;
    long lmax = 1;
    for (const auto& b : r.set.branches) {
      cut = std::min(cut, b.truncation_order);
      lmax = std::lcm(lmax, b.ramification);
    }
    std::vector<KPoly> norms;
    for (size_t j = 0; j < n; ++j) norms.push_back(norm_series(r.set, j));
    auto cmp = [&](size_t a, size_t b) {
      return compare_series(norms[a], r.set.branches[a].ramification, norms[b], r.set.branches[b].ramification, cut);
    };
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return cmp(a, b) > 0; });
    bool consistent = true;
    std::vector<std::vector<int>> groups;
    size_t pos = 0;
    for (int q : r.grouping.sizes) {
      const auto qs = static_cast<size_t>(q);
      if (pos + qs > n) {
        consistent = false;
        break;
      }
      for (size_t k = pos + 1; k < pos + qs; ++k) consistent = consistent && cmp(idx[pos], idx[k]) == 0;
      if (pos + qs < n) consistent = consistent && cmp(idx[pos + qs - 1], idx[pos + qs]) > 0;
      // inside a group: real branches first, each complex branch followed by its conjugate
      std::vector<size_t> members(idx.begin() + static_cast<long>(pos), idx.begin() + static_cast<long>(pos + qs));
      std::sort(members.begin(), members.end());
      std::stable_partition(members.begin(), members.end(), [&](size_t j) { return r.set.branches[j].is_real(); });
      std::vector<int> grp;
      for (size_t j : members) {
        if (std::find(grp.begin(), grp.end(), static_cast<int>(j)) != grp.end()) continue;
        grp.push_back(static_cast<int>(j));
        const int c = r.set.branches[j].conjugate;
        if (c != static_cast<int>(j) && std::find(members.begin(), members.end(), static_cast<size_t>(c)) != members.end()) {
          grp.push_back(c);
        }
      }
      groups.push_back(grp);
      pos += qs;
    }
    consistent = consistent && pos == n;
    if (consistent) {
      r.groups = groups;
      r.order.clear();
      for (const auto& g : groups) r.order.insert(r.order.end(), g.begin(), g.end());
      return;
    }
    const Rational next = cut * 2;
    if (next > cfg.puiseux.max_order) throw OrderCapError("expansion order cap exceeded");
    r.set = extend_all(r.set, next, cfg.puiseux);
  }
}

SpectralReport analyze_polynomial(const BiPoly& q, const Rational& order, const SpectralConfig& cfg) {
  SpectralReport r;
  r.q = q;
  r.distinct = BiPoly(UniPoly(Rational(1)));
  for (const auto& sf : squarefree_decomposition(q)) {
    if (sf.multiplicity < 1) continue;
    r.factors.push_back(sf);
    r.distinct = r.distinct * sf.factor;
  }
  r.grouping = modulus_groups(r.distinct, cfg);
  r.set = puiseux_expand(r.distinct, order, cfg.puiseux);
  assign_multiplicities(r);
  order_branches(r, cfg);
  return r;
}

SpectralReport analyze_spectrum(const RatFuncMatrix& a, const Rational& order, const SpectralConfig& cfg) {
  return analyze_polynomial(reversed_char_poly(a), order, cfg);
}

void extend_report(SpectralReport& r, const Rational& order, const SpectralConfig& cfg) {
  r.set = extend_all(r.set, order, cfg.puiseux);
  assign_multiplicities(r);
  order_branches(r, cfg);
}

ContractionResult check_contraction(const SpectralReport& r) {
  ContractionResult out;
  if (r.groups.empty() || r.groups[0].size() != 1) {
    out.reason = "tie at top modulus";
    return out;
  }
  const size_t i1 = static_cast<size_t>(r.order[0]);
  const PuiseuxBranch& b1 = r.set.branches[i1];
  if (!b1.is_real()) {
    out.reason = "complex dominant branch";
    return out;
  }
  if (r.multiplicity[i1] != 1) {
    out.reason = "dominant eigenvalue not simple";
    return out;
  }
  const long l = lcm_ramification(r.set);
  const KPoly p1 = lift_to(b1.series, b1.ramification, l);
  BranchBound e1 = branch_error_bound(r.set, i1);
  if (!e1.ok) {
    out.reason = "truncation too short for an error bound";
    return out;
  }
  Rational smax = lower_root(e1.y_max, l);
  const KPoly err1 = monomial(e1.radius, scaled_index(e1.exponent, l));
  std::vector<TailResult> tails;
  if (r.order.size() == 1) {
    tails.push_back(certify_tail_positive(p1 - err1, smax, "dominant-positive"));
  }
  std::vector<bool> done(r.set.branches.size(), false);
  for (size_t k = 1; k < r.order.size(); ++k) {
    const auto j = static_cast<size_t>(r.order[k]);
    if (done[j]) continue;
    const PuiseuxBranch& bj = r.set.branches[j];
    done[j] = true;
    done[static_cast<size_t>(bj.conjugate)] = true;
    BranchBound ej = branch_error_bound(r.set, j);
    if (!ej.ok) {
      out.reason = "truncation too short for an error bound";
      return out;
    }
    const Rational sj = std::min(smax, lower_root(ej.y_max, l));
    const KPoly g = p1 - err1 - monomial(ej.radius, scaled_index(ej.exponent, l));
    const KPoly nj = lift_to(norm_series(r.set, j), bj.ramification, l);
    const std::string id = "contraction-" + std::to_string(k);
    tails.push_back(certify_tail_positive(g, sj, id + "-lower"));
    tails.push_back(certify_tail_positive(g * g - nj, sj, id + "-square"));
  }
  Rational s_star = smax;
  for (const auto& t : tails) {
    if (!t.ok) {
      out.reason = "dominance not certified (" + t.cert.id + ": " + t.reason + ")";
      return out;
    }
    s_star = std::min(s_star, t.cert.threshold);
    out.certificates.push_back(t.cert);
  }
  Rational y_star = 1;
  for (long i = 0; i < l; ++i) y_star *= s_star;
  out.holds = true;
  out.holds_from = index_for(y_star);
  return out;
}

std::optional<Rational> contraction_margin_order(const SpectralReport& r) {
  if (r.order.size() == 1) return Rational(0);
  const auto i1 = static_cast<size_t>(r.order[0]);
  const PuiseuxBranch& b1 = r.set.branches[i1];
  const long l = lcm_ramification(r.set);
  const KPoly p1 = lift_to(b1.series, b1.ramification, l);
  const KPoly sq = p1 * p1;
  std::optional<Rational> best;
  for (size_t k = 1; k < r.order.size(); ++k) {
    const auto j = static_cast<size_t>(r.order[k]);
    const PuiseuxBranch& bj = r.set.branches[j];
    const Rational cut = std::min(b1.truncation_order, bj.truncation_order);
    const KPoly dj = sq - lift_to(norm_series(r.set, j), bj.ramification, l);
    std::optional<Rational> v;
    for (size_t i = 0; i < dj.size(); ++i) {
      Rational ex(static_cast<long>(i), l);
      ex.canonicalize();
      if (ex > cut) break;
      if (!is_zero(dj.coeffs()[i])) {
        v = ex;
        break;
      }
    }
    if (!v) return std::nullopt;
    if (!best || *v < *best) best = v;
  }
  if (p1.is_zero_poly()) return std::nullopt;
  Rational v1(p1.valuation(), l);
  v1.canonicalize();
  return *best - v1;
}

Interval contraction_margin(const SpectralReport& r, long n) {
  const Rational w = pow2(-100);
  Interval l1 = evaluate_branch(r.branch(0), n, w).re();
  Interval top(Rational(0), l1.precision());
  for (size_t k = 1; k < r.order.size(); ++k) {
    Interval m = evaluate_branch(r.branch(k), n, w).abs();
    if (k == 1) {
      top = m;
    } else {
      top = Interval(std::max(top.lo_q(), m.lo_q()), std::max(top.hi_q(), m.hi_q()), top.precision());
    }
  }
  return (l1 - top) * Interval(Rational(1, 2), l1.precision());
}

TheoremConditions check_theorem_conditions(const SpectralReport& r) {
  TheoremConditions t;
  std::ostringstream diag;
  ContractionResult c = check_contraction(r);
  t.contraction = c.holds ? Tri::True : Tri::False;
  if (!c.holds && c.reason.rfind("truncation", 0) == 0) t.contraction = Tri::Undetermined;
  if (!c.holds && c.reason.rfind("dominance not certified", 0) == 0) t.contraction = Tri::Undetermined;
  diag << "contraction: " << (c.holds ? "holds from n = " + std::to_string(c.holds_from) : c.reason) << "\n";

  bool distinct = true;
  for (size_t j = 0; j < r.set.branches.size(); ++j) {
    if (r.multiplicity[j] != 1) distinct = false;
    for (size_t k = j + 1; k < r.set.branches.size(); ++k) {
      if (r.set.branches[j].limit() == r.set.branches[k].limit()) distinct = false;
    }
  }
  t.distinct_limits = distinct ? Tri::True : Tri::False;
  diag << "limits: " << (distinct ? "pairwise distinct" : "repeated limit") << "\n";

  auto margin = contraction_margin_order(r);
  if (!margin) {
    t.step_below_margin = Tri::Undetermined;
    diag << "steps: margin order not visible at the current truncation\n";
  } else {
    std::optional<Rational> step;  // smallest step order
    bool lower_only = false;
    for (const auto& b : r.set.branches) {
      if (b.exact && b.series.degree() <= 0) continue;  // constant eigenvalue
      try {
        Rational s = branch_step_order(b);
        if (!step || s < *step) step = s;
      } catch (const std::domain_error&) {
        Rational s = b.truncation_order + 1;
        if (!step || s < *step) {
          step = s;
          lower_only = true;
        }
      }
    }
    if (!step) {
      t.step_below_margin = Tri::True;
    } else if (*step > *margin) {
      t.step_below_margin = Tri::True;
    } else {
      t.step_below_margin = lower_only ? Tri::Undetermined : Tri::False;
    }
    diag << "steps: smallest step order " << (step ? to_string(*step) : std::string("infinite")) << ", margin order "
         << to_string(*margin) << "\n";
  }
  t.diagnostics = diag.str();
  return t;
}

}  // namespace conecert
