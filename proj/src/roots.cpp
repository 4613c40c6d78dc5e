#include "conecert/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conecert {

namespace {

constexpr mpfr_prec_t kMaxPrecision = 1 << 15;

struct CFloat {
  Float re;
  Float im;
  explicit CFloat(mpfr_prec_t p) : re(p), im(p) {}
  CFloat(Float r, Float i) : re(std::move(r)), im(std::move(i)) {}
};

CFloat cadd(const CFloat& a, const CFloat& b) { return {a.re + b.re, a.im + b.im}; }
CFloat csub(const CFloat& a, const CFloat& b) { return {a.re - b.re, a.im - b.im}; }
CFloat cmul(const CFloat& a, const CFloat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CFloat cdiv(const CFloat& a, const CFloat& b) {
  Float den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
double cabs_d(const CFloat& a) { return std::hypot(a.re.to_double(), a.im.to_double()); }

void horner(const std::vector<Float>& c, const CFloat& z, CFloat& p, CFloat& dp) {
  const mpfr_prec_t prec = z.re.precision();
  p = CFloat(prec);
  dp = CFloat(prec);
  for (size_t k = c.size(); k-- > 0;) {
    dp = cadd(cmul(dp, z), p);
    p = cmul(p, z);
    p.re = p.re + c[k];
  }
}

// Runs Aberth iterations in place until the corrections are negligible.
void aberth(const UniPoly& poly, std::vector<CFloat>& z, mpfr_prec_t prec, int max_iter) {
  std::vector<Float> c;
  c.reserve(poly.size());
  for (const auto& q : poly.coeffs()) c.emplace_back(q, prec);
  const size_t n = z.size();
  const double tol = std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(prec, 1000)) + 6);
  CFloat p(prec), dp(prec);
  for (int it = 0; it < max_iter; ++it) {
    double maxcorr = 0;
    for (size_t i = 0; i < n; ++i) {
      horner(c, z[i], p, dp);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      if (dp.re.is_zero() && dp.im.is_zero()) {
        // nudge off a critical point
        z[i].re = z[i].re + Float(1e-3, prec);
        maxcorr = 1;
        continue;
      }
      CFloat ratio = cdiv(p, dp);
      CFloat s(prec);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        CFloat diff = csub(z[i], z[j]);
        if (diff.re.is_zero() && diff.im.is_zero()) {
          diff.re = Float(1e-30, prec);
        }
        s = cadd(s, cdiv(CFloat(Float(1.0, prec), Float(prec)), diff));
      }
      CFloat one(Float(1.0, prec), Float(prec));
      CFloat w = cdiv(ratio, csub(one, cmul(ratio, s)));
      z[i] = csub(z[i], w);
      double rel = cabs_d(w) / (1.0 + cabs_d(z[i]));
      if (!std::isfinite(rel)) rel = 1;
      maxcorr = std::max(maxcorr, rel);
    }
    if (maxcorr < tol) break;
  }
}

std::vector<CFloat> initial_guesses(const UniPoly& p, mpfr_prec_t prec) {
  const size_t n = static_cast<size_t>(p.degree());
  double r = std::min(1e150, std::max(1e-3, root_bound(p).get_d()));
  // a tighter radius from the geometric mean of the coefficient ratio
  double lc = std::fabs(p.lead().get_d());
  double c0 = std::fabs(p.coeffs()[0].get_d());
  if (c0 > 0 && lc > 0 && std::isfinite(c0 / lc)) {
    double g = std::pow(c0 / lc, 1.0 / static_cast<double>(n));
    if (std::isfinite(g) && g > 0) r = std::min(r, std::max(g, 1e-3));
  }
  std::vector<CFloat> z;
  z.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.7;
    z.emplace_back(Float(r * std::cos(ang), prec), Float(r * std::sin(ang), prec));
  }
  return z;
}

struct Certified {
  bool ok = false;
  std::vector<RootDisk> disks;
};

Rational radius_bound(const UniPoly& p, const std::vector<ComplexInterval>& centers, size_t i, mpfr_prec_t prec) {
  ComplexInterval val = eval_poly(p, centers[i]);
  if (val.re().is_point() && val.im().is_point() && val.contains_zero()) return Rational(0);
  ComplexInterval den(p.lead(), prec);
  for (size_t j = 0; j < centers.size(); ++j) {
    if (j != i) den = den * (centers[i] - centers[j]);
  }
  if (den.contains_zero()) return Rational(-1);
  Interval w = (val / den).abs();
  Rational n(static_cast<long>(centers.size()));
  return round_up(w.hi_q() * n, 64);
}

Certified certify(const UniPoly& p, std::vector<CFloat>& z, const std::optional<Rational>& max_radius,
                  mpfr_prec_t prec) {
  Certified out;
  const size_t n = z.size();
  const bool real_poly = true;  // inputs are rational polynomials
  const double snap = std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(prec, 1000)) / 2);
  // snap near-real approximations onto the real axis and pair conjugates
  std::vector<bool> is_real(n, false);
  for (size_t i = 0; i < n; ++i) {
    double im = std::fabs(z[i].im.to_double());
    if (real_poly && im <= snap * (1.0 + cabs_d(z[i]))) {
      z[i].im = Float(prec);
      is_real[i] = true;
    }
  }
  std::vector<Rational> re(n), im(n);
  std::vector<ComplexInterval> centers;
  centers.reserve(n);
  const mpfr_prec_t iprec = prec + 64;
  for (size_t i = 0; i < n; ++i) {
    re[i] = round_down(z[i].re.to_rational(), prec);
    im[i] = is_real[i] ? Rational(0) : round_down(z[i].im.to_rational(), prec);
    centers.emplace_back(Interval(re[i], iprec), Interval(im[i], iprec));
  }
  out.disks.resize(n);
  for (size_t i = 0; i < n; ++i) {
    Rational r = radius_bound(p, centers, i, iprec);
    if (r < 0) return out;
    if (max_radius && r > *max_radius) return out;
    out.disks[i] = RootDisk{re[i], im[i], r, is_real[i]};
  }
  for (size_t i = 0; i < n; ++i) {
    const RootDisk& a = out.disks[i];
    if (!a.real && abs(a.im) <= a.radius) return out;  // could be real; undecided
    for (size_t j = i + 1; j < n; ++j) {
      if (a.intersects(out.disks[j])) return out;
    }
  }
  out.ok = true;
  return out;
}

}  // namespace

ComplexInterval RootDisk::box(mpfr_prec_t prec) const {
  Interval r(Rational(-radius), radius, prec);
  Interval x = Interval(re, prec) + r;
  Interval y = real ? Interval(prec) : Interval(im, prec) + r;
  return {x, y};
}

bool RootDisk::intersects(const RootDisk& o) const {
  Rational dx = re - o.re, dy = im - o.im;
  Rational s = radius + o.radius;
  return dx * dx + dy * dy <= s * s;
}

bool RootDisk::inside(const RootDisk& o) const {
  if (radius > o.radius) return false;
  Rational dx = re - o.re, dy = im - o.im;
  Rational s = o.radius - radius;
  return dx * dx + dy * dy <= s * s;
}

ComplexInterval eval_poly(const UniPoly& p, const ComplexInterval& z) {
  const mpfr_prec_t prec = z.precision();
  ComplexInterval acc(prec);
  for (size_t k = p.size(); k-- > 0;) acc = acc * z + ComplexInterval(p.coeffs()[k], prec);
  return acc;
}

Interval eval_poly(const UniPoly& p, const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  Interval acc(prec);
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + Interval(p.coeffs()[k], prec);
  return acc;
}

IsolatedRoots isolate_roots(const UniPoly& p0, const std::optional<Rational>& max_radius, mpfr_prec_t start_prec) {
  if (p0.degree() < 1) throw std::invalid_argument("isolate_roots: constant polynomial");
  UniPoly p = primitive_part(p0);
  IsolatedRoots out;
  out.poly = p;
  if (p.degree() == 1) {
    Rational r = -p.coeffs()[0] / p.coeffs()[1];
    out.roots.push_back(RootDisk{r, Rational(0), Rational(0), true});
    out.precision = start_prec;
    return out;
  }
  mpfr_prec_t prec = std::max<mpfr_prec_t>(start_prec, 64);
  std::vector<CFloat> z = initial_guesses(p, prec);
  int iters = 400 + 20 * static_cast<int>(p.degree());
  while (prec <= kMaxPrecision) {
    aberth(p, z, prec, iters);
    Certified c = certify(p, z, max_radius, prec);
    if (c.ok) {
      out.roots = std::move(c.disks);
      out.precision = prec;
      return out;
    }
    prec *= 2;
    for (auto& v : z) {
      Float r(prec), i(prec);
      mpfr_set(r.get(), v.re.get(), MPFR_RNDN);
      mpfr_set(i.get(), v.im.get(), MPFR_RNDN);
      v = CFloat(std::move(r), std::move(i));
    }
    iters = 100;
  }
  throw std::runtime_error("root isolation failed to converge (is the polynomial square-free?)");
}

RootDisk refine_root(const UniPoly& p, const RootDisk& old, const Rational& max_radius) {
  if (old.radius <= max_radius) return old;
  Rational rad = max_radius;
  for (int attempt = 0; attempt < 64; ++attempt) {
    IsolatedRoots iso = isolate_roots(p, rad);
    std::vector<size_t> hits;
    for (size_t i = 0; i < iso.roots.size(); ++i) {
      if (iso.roots[i].intersects(old)) hits.push_back(i);
    }
    if (hits.size() == 1) return iso.roots[hits[0]];
    if (hits.empty()) throw std::logic_error("refine_root: designated root lost");
    rad /= 16;
  }
  throw std::runtime_error("refine_root: could not separate designated root");
}

namespace {

// Indices of iso's roots that are roots of `sub` (sub divides iso.poly).
std::vector<size_t> assign_roots(const IsolatedRoots& iso, const UniPoly& sub) {
  std::vector<size_t> out;
  if (sub.degree() < 1) return out;
  Rational rad = 1;
  for (const auto& d : iso.roots) rad = std::min(rad, d.radius > 0 ? d.radius : rad);
  for (int attempt = 0; attempt < 64; ++attempt) {
    IsolatedRoots s = isolate_roots(sub, rad);
    out.clear();
    bool ok = true;
    for (const auto& d : s.roots) {
      size_t hit = iso.roots.size(), count = 0;
      for (size_t i = 0; i < iso.roots.size(); ++i) {
        if (d.intersects(iso.roots[i])) {
          hit = i;
          ++count;
        }
      }
      if (count != 1) {
        ok = false;
        break;
      }
      out.push_back(hit);
    }
    if (ok) return out;
    rad /= 16;
  }
  throw std::runtime_error("assign_roots: could not match roots");
}

enum class Candidate { No, Yes, Undecided };

// Tests whether the product of (x - s * r_j) over `subset` has integer
// coefficients; fills `out` (ascending) on success.
Candidate integer_product(const std::vector<ComplexInterval>& scaled_roots, const std::vector<size_t>& subset,
                          mpfr_prec_t prec, std::vector<Integer>& out) {
  std::vector<ComplexInterval> c{ComplexInterval(Rational(1), prec)};
  for (size_t idx : subset) {
    std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval(prec));
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = next[k + 1] + c[k];
      next[k] = next[k] - c[k] * scaled_roots[idx];
    }
    c = std::move(next);
  }
  out.assign(c.size(), Integer(0));
  bool undecided = false;
  for (size_t k = 0; k < c.size(); ++k) {
    if (!c[k].im().contains_zero()) return Candidate::No;
    Rational lo = c[k].re().lo_q(), hi = c[k].re().hi_q();
    Integer ilo, ihi;
    mpz_cdiv_q(ilo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(ihi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (ilo > ihi) return Candidate::No;
    if (ilo != ihi) {
      undecided = true;
      continue;
    }
    out[k] = ilo;
  }
  return undecided ? Candidate::Undecided : Candidate::Yes;
}

bool next_combination(std::vector<size_t>& comb, size_t n) {
  const size_t k = comb.size();
  for (size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

UniPoly minimal_polynomial_of_root(const IsolatedRoots& iso0, size_t target) {
  const UniPoly& p = iso0.poly;
  const size_t n = static_cast<size_t>(p.degree());
  if (n == 1) return p;
  if (iso0.roots[target].real && iso0.roots[target].radius == 0) {
    return primitive_part(UniPoly{-iso0.roots[target].re, Rational(1)});
  }
  // rational root fast path
  if (iso0.roots[target].real) {
    std::vector<Integer> ic = integer_coeffs(p);
    const Integer& lc = ic.back();
    RootDisk d = refine_root(p, iso0.roots[target], Rational(1, 4) / Rational(abs(lc) + 1));
    Rational v = d.re * lc;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    for (Integer cand : {Integer(k), Integer(k + 1)}) {
      Rational r(cand, lc);
      r.canonicalize();
      if (is_zero(p(r))) return primitive_part(UniPoly{-r, Rational(1)});
    }
  }
  std::vector<Integer> ic = integer_coeffs(p);
  const Rational lc(ic.back());
  // g(x) = lc^{n-1} p(x / lc) is monic with integer coefficients
  std::vector<Rational> gc(n + 1);
  {
    Rational pw = 1;
    gc[n] = 1;
    for (size_t j = n; j-- > 0;) {
      gc[j] = Rational(ic[j]) * pw;
      pw *= lc;
    }
  }
  const UniPoly g(std::move(gc));
  IsolatedRoots iso = iso0;
  mpfr_prec_t prec = std::max<mpfr_prec_t>(iso.precision, 128) + 64;
  std::vector<size_t> conj_of(n);
  for (int round = 0; round < 12; ++round) {
    std::vector<ComplexInterval> sr;
    sr.reserve(n);
    Interval lci(lc, prec);
    for (const auto& d : iso.roots) sr.push_back(d.box(prec) * lci);
    // conjugate partners
    for (size_t i = 0; i < n; ++i) {
      conj_of[i] = i;
      if (iso.roots[i].real) continue;
      for (size_t j = 0; j < n; ++j) {
        if (j != i && iso.roots[j].re == iso.roots[i].re && iso.roots[j].im == -iso.roots[i].im) conj_of[i] = j;
      }
      if (conj_of[i] == i) {
        RootDisk mirror = iso.roots[i];
        mirror.im = -mirror.im;
        for (size_t j = 0; j < n; ++j) {
          if (j != i && iso.roots[j].intersects(mirror)) conj_of[i] = j;
        }
      }
    }
    bool any_undecided = false;
    size_t examined = 0;
    for (size_t k = 1; k < n; ++k) {
      std::vector<size_t> others;
      for (size_t i = 0; i < n; ++i) {
        if (i != target) others.push_back(i);
      }
      if (k - 1 > others.size()) break;
      std::vector<size_t> comb(k - 1);
      std::iota(comb.begin(), comb.end(), 0);
      do {
        if (++examined > 4000000) throw std::runtime_error("minimal polynomial search too expensive");
        std::vector<size_t> subset{target};
        for (size_t c : comb) subset.push_back(others[c]);
        // conjugation-closed subsets only
        bool closed = true;
        for (size_t s : subset) {
          if (std::find(subset.begin(), subset.end(), conj_of[s]) == subset.end()) {
            closed = false;
            break;
          }
        }
        if (!closed) continue;
        std::vector<Integer> coeffs;
        Candidate c = integer_product(sr, subset, prec, coeffs);
        if (c == Candidate::Undecided) {
          any_undecided = true;
          continue;
        }
        if (c == Candidate::No) continue;
        UniPoly h(std::vector<Rational>(coeffs.begin(), coeffs.end()));
        if (!(g % h).is_zero_poly()) continue;
        // h has roots lc * r; the minimal polynomial of r is h(lc x)
        return primitive_part(scale_variable(h, lc));
      } while (!comb.empty() && next_combination(comb, others.size()));
    }
    if (!any_undecided) return p;  // irreducible
    // refine every root and retry with tighter enclosures
    Rational rad = 1;
    for (const auto& d : iso.roots) rad = std::min(rad, d.radius);
    rad = rad > 0 ? rad / Rational(1 << 20) : Rational(1, 1 << 20);
    IsolatedRoots finer = isolate_roots(p, rad, iso.precision * 2);
    // keep the designated index aligned
    std::vector<RootDisk> aligned(n);
    for (size_t i = 0; i < n; ++i) {
      for (const auto& d : finer.roots) {
        if (d.intersects(iso.roots[i])) aligned[i] = d;
      }
    }
    iso.roots = std::move(aligned);
    iso.precision = finer.precision;
    prec = iso.precision * 2 + 64;
  }
  throw std::runtime_error("minimal polynomial: enclosures did not converge");
}

std::vector<std::pair<UniPoly, std::vector<size_t>>> factor_squarefree(const IsolatedRoots& iso) {
  std::vector<std::pair<UniPoly, std::vector<size_t>>> out;
  std::vector<bool> done(iso.roots.size(), false);
  UniPoly rest = iso.poly;
  for (size_t i = 0; i < iso.roots.size(); ++i) {
    if (done[i]) continue;
    UniPoly f = minimal_polynomial_of_root(iso, i);
    std::vector<size_t> idx = f.degree() == static_cast<long>(iso.roots.size()) ? [&] {
      std::vector<size_t> all(iso.roots.size());
      std::iota(all.begin(), all.end(), 0);
      return all;
    }()
                                                                                 : assign_roots(iso, f);
    for (size_t j : idx) done[j] = true;
    out.emplace_back(f, idx);
  }
  return out;
}

std::vector<UniPoly> factor_over_q(const UniPoly& p) {
  std::vector<UniPoly> out;
  if (p.degree() < 1) return out;
  UniPoly s = primitive_part(squarefree_part(p));
  for (const Rational& r : rational_roots(s)) {
    UniPoly lin = primitive_part(UniPoly{-r, Rational(1)});
    out.push_back(lin);
    s = s.exact_div(lin);
  }
  if (s.degree() >= 1) {
    IsolatedRoots iso = isolate_roots(s);
    for (auto& [f, idx] : factor_squarefree(iso)) out.push_back(f);
  }
  return out;
}

std::optional<size_t> match_root(const IsolatedRoots& iso, const UniPoly& other, const RootDisk& disk) {
  UniPoly g = gcd(iso.poly, squarefree_part(other));
  if (g.degree() < 1) return std::nullopt;
  for (size_t i : assign_roots(iso, g)) {
    // iso root i is a root of `other`; it is the designated one iff it lies in `disk`
    RootDisk r = iso.roots[i];
    for (int attempt = 0; attempt < 64; ++attempt) {
      if (r.inside(disk)) return i;
      if (!r.intersects(disk)) break;
      r = refine_root(iso.poly, r, r.radius > 0 ? r.radius / 16 : Rational(0));
      if (r.radius == 0 && !r.inside(disk) && !r.intersects(disk)) break;
    }
  }
  return std::nullopt;
}

bool is_root_of(const IsolatedRoots& iso, size_t i, const UniPoly& f) {
  if (f.is_zero_poly()) return true;
  UniPoly g = gcd(iso.poly, f);
  if (g.degree() < 1) return false;
  std::vector<size_t> idx = assign_roots(iso, g);
  return std::find(idx.begin(), idx.end(), i) != idx.end();
}

std::vector<Rational> rational_roots(const UniPoly& p0) {
  std::vector<Rational> out;
  if (p0.degree() < 1) return out;
  UniPoly p = primitive_part(squarefree_part(p0));
  // strip zero root
  if (is_zero(p.coeffs()[0])) {
    out.push_back(Rational(0));
    p = p.shifted(-1);
  }
  if (p.degree() < 1) return out;
  std::vector<Integer> ic = integer_coeffs(p);
  const Integer lc = ic.back();
  IsolatedRoots iso = isolate_roots(p, Rational(1, 4) / Rational(abs(lc) + 1));
  for (const auto& d : iso.roots) {
    if (!d.real) continue;
    Rational v = d.re * lc;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    for (Integer cand : {Integer(k), Integer(k + 1)}) {
      Rational r(cand, lc);
      r.canonicalize();
      if (is_zero(p(r)) && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
  }
  return out;
}

}  // namespace conecert
