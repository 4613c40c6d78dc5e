#include "conecert/bipoly.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace conecert {

// ------------------------------------------------------------ basic helpers

BiPoly bipoly_from_y(const UniPoly& p) { return BiPoly(p); }

BiPoly bipoly_from_x(const UniPoly& p) {
  std::vector<UniPoly> c;
  c.reserve(p.size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return BiPoly(std::move(c));
}

BiPoly bipoly_from_terms(const std::vector<std::tuple<size_t, size_t, Rational>>& terms) {
  std::vector<std::vector<Rational>> dense;
  for (const auto& [dy, dx, c] : terms) {
    if (dx >= dense.size()) dense.resize(dx + 1);
    if (dy >= dense[dx].size()) dense[dx].resize(dy + 1);
    dense[dx][dy] += c;
  }
  std::vector<UniPoly> c;
  c.reserve(dense.size());
  for (auto& v : dense) c.emplace_back(std::move(v));
  return BiPoly(std::move(c));
}

std::vector<std::tuple<size_t, size_t, Rational>> bipoly_terms(const BiPoly& p) {
  std::vector<std::tuple<size_t, size_t, Rational>> out;
  for (size_t dx = 0; dx < p.size(); ++dx) {
    const UniPoly& cy = p.coeffs()[dx];
    for (size_t dy = 0; dy < cy.size(); ++dy) {
      if (!is_zero(cy.coeffs()[dy])) out.emplace_back(dy, dx, cy.coeffs()[dy]);
    }
  }
  return out;
}

UniPoly eval_y(const BiPoly& p, const Rational& y) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& cy : p.coeffs()) c.push_back(cy(y));
  return UniPoly(std::move(c));
}

long degree_y(const BiPoly& p) {
  long d = -1;
  for (const auto& cy : p.coeffs()) d = std::max(d, cy.degree());
  return d;
}

UniPoly content_y(const BiPoly& p) {
  UniPoly g;
  for (const auto& cy : p.coeffs()) {
    g = gcd(g, cy);
    if (g.degree() == 0) return UniPoly(Rational(1));
  }
  if (g.is_zero_poly()) return UniPoly(Rational(1));
  return g;
}

BiPoly primitive_part(const BiPoly& p) {
  if (p.is_zero_poly()) return p;
  UniPoly cont = content_y(p);
  std::vector<UniPoly> c;
  c.reserve(p.size());
  for (const auto& cy : p.coeffs()) c.push_back(cont.degree() > 0 ? cy.exact_div(cont) : cy);
  // clear rational denominators and integer content
  Integer den = 1;
  for (const auto& cy : c) {
    for (const auto& v : cy.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  }
  Integer g = 0;
  for (auto& cy : c) {
    cy = cy.scaled(Rational(den));
    for (const auto& v : cy.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  const UniPoly& lc = c.back();
  if (sgn(lc.lead()) < 0) g = -g;
  for (auto& cy : c) cy = cy.scaled(Rational(1) / Rational(g));
  return BiPoly(std::move(c));
}

BiPoly derivative_x(const BiPoly& p) { return p.derivative(); }

BiPoly swap_variables(const BiPoly& p) {
  std::vector<std::tuple<size_t, size_t, Rational>> t = bipoly_terms(p);
  for (auto& [a, b, c] : t) std::swap(a, b);
  return bipoly_from_terms(t);
}

std::string to_string(const BiPoly& p) {
  if (p.is_zero_poly()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t dx = p.size(); dx-- > 0;) {
    const UniPoly& cy = p.coeffs()[dx];
    if (cy.is_zero_poly()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(cy, "Y") << ")";
    if (dx >= 1) os << "*X";
    if (dx >= 2) os << "^" << dx;
  }
  return os.str();
}

// ------------------------------------------------------------ gcd machinery

BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero_poly()) throw std::domain_error("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<UniPoly> r = a.coeffs();
  const UniPoly& lb = b.lead();
  const size_t db = static_cast<size_t>(b.degree());
  for (size_t top = r.size(); top-- > db;) {
    UniPoly f = r[top];
    if (f.is_zero_poly()) {
      continue;
    }
    for (size_t i = 0; i < top; ++i) r[i] = r[i] * lb;
    r[top] = UniPoly();
    for (size_t j = 0; j < db; ++j) r[top - db + j] = r[top - db + j] - f * b.coeffs()[j];
  }
  r.resize(db);
  return BiPoly(std::move(r));
}

BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero_poly()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero_poly()) return a;
  if (a.degree() < b.degree()) throw std::logic_error("inexact bivariate division");
  std::vector<UniPoly> r = a.coeffs();
  const size_t db = static_cast<size_t>(b.degree());
  std::vector<UniPoly> q(r.size() - db);
  for (size_t i = q.size(); i-- > 0;) {
    if (r[i + db].is_zero_poly()) continue;
    UniPoly f = r[i + db].exact_div(b.lead());
    for (size_t j = 0; j <= db; ++j) r[i + j] = r[i + j] - f * b.coeffs()[j];
    q[i] = std::move(f);
  }
  for (size_t i = 0; i < db; ++i) {
    if (!r[i].is_zero_poly()) throw std::logic_error("inexact bivariate division");
  }
  return BiPoly(std::move(q));
}

namespace {

BiPoly drop_y_content(const BiPoly& p) {
  UniPoly cont = content_y(p);
  std::vector<UniPoly> c;
  c.reserve(p.size());
  for (const auto& cy : p.coeffs()) c.push_back(cy.exact_div(cont));
  return BiPoly(std::move(c));
}

}  // namespace

namespace {

// lc(b)^(deg a - deg b + 1) a mod b
BiPoly full_pseudo_remainder(const BiPoly& a, const BiPoly& b) {
  std::vector<UniPoly> r = a.coeffs();
  const UniPoly& lb = b.lead();
  const size_t db = static_cast<size_t>(b.degree());
  for (size_t top = r.size(); top-- > db;) {
    UniPoly f = r[top];
    for (size_t i = 0; i < top; ++i) r[i] = r[i] * lb;
    r[top] = UniPoly();
    if (f.is_zero_poly()) continue;
    for (size_t j = 0; j < db; ++j) r[top - db + j] = r[top - db + j] - f * b.coeffs()[j];
  }
  r.resize(db);
  return BiPoly(std::move(r));
}

BiPoly divide_coeffs(const BiPoly& p, const UniPoly& d) {
  std::vector<UniPoly> c;
  c.reserve(p.size());
  for (const auto& cy : p.coeffs()) c.push_back(cy.exact_div(d));
  return BiPoly(std::move(c));
}

}  // namespace

// Subresultant remainder sequence; only the last nonzero term is made primitive.
BiPoly gcd_x(const BiPoly& a0, const BiPoly& b0) {
  if (a0.is_zero_poly()) return primitive_part(b0);
  if (b0.is_zero_poly()) return primitive_part(a0);
  if (certify_coprime(a0, b0)) return BiPoly(UniPoly(Rational(1)));
  BiPoly a = drop_y_content(a0);
  BiPoly b = drop_y_content(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  UniPoly g(Rational(1)), h(Rational(1));
  for (;;) {
    if (b.degree() == 0) return BiPoly(UniPoly(Rational(1)));
    const auto delta = static_cast<unsigned>(a.degree() - b.degree());
    BiPoly r = full_pseudo_remainder(a, b);
    if (r.is_zero_poly()) return primitive_part(b);
    a = std::move(b);
    b = divide_coeffs(r, g * h.pow(delta));
    g = a.lead();
    if (delta == 0) continue;
    h = delta == 1 ? g : g.pow(delta).exact_div(h.pow(delta - 1));
  }
}

// ------------------------------------------------------------ modular certificates

namespace {

constexpr uint64_t kPrime = (uint64_t{1} << 61) - 1;

uint64_t mulmod(uint64_t a, uint64_t b) {
  __uint128_t r = static_cast<__uint128_t>(a) * b;
  uint64_t lo = static_cast<uint64_t>(r & kPrime);
  uint64_t hi = static_cast<uint64_t>(r >> 61);
  uint64_t s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}
uint64_t addmod(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
uint64_t submod(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1U;
  }
  return r;
}
uint64_t invmod(uint64_t a) { return powmod(a, kPrime - 2); }

uint64_t reduce(const Rational& q, bool& ok) {
  Integer p = kPrime;
  Integer n = q.get_num() % p;
  if (n < 0) n += p;
  Integer d = q.get_den() % p;
  if (d == 0) {
    ok = false;
    return 0;
  }
  return mulmod(static_cast<uint64_t>(n.get_ui()), invmod(static_cast<uint64_t>(d.get_ui())));
}

using ModPoly = std::vector<uint64_t>;

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ModPoly mod_rem(ModPoly a, const ModPoly& b) {
  const size_t db = b.size() - 1;
  const uint64_t inv = invmod(b.back());
  while (a.size() >= b.size()) {
    uint64_t f = mulmod(a.back(), inv);
    const size_t shift = a.size() - b.size();
    for (size_t j = 0; j <= db; ++j) a[shift + j] = submod(a[shift + j], mulmod(f, b[j]));
    trim(a);
  }
  return a;
}

size_t mod_gcd_degree(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Specializes Y = y and reduces modulo the prime; fails if the leading
// coefficient vanishes or a denominator is divisible by the prime.
bool specialize(const BiPoly& p, uint64_t y, ModPoly& out) {
  out.assign(p.size(), 0);
  bool ok = true;
  for (size_t i = 0; i < p.size(); ++i) {
    const auto& cy = p.coeffs()[i].coeffs();
    uint64_t acc = 0;
    for (size_t k = cy.size(); k-- > 0;) acc = addmod(mulmod(acc, y), reduce(cy[k], ok));
    out[i] = acc;
  }
  if (!ok || out.empty() || out.back() == 0) return false;
  return true;
}

const uint64_t kSamplePoints[] = {1000003, 7919, 104729, 15485863, 982451653};

}  // namespace

bool certify_coprime(const BiPoly& a, const BiPoly& b) {
  if (a.degree() <= 0 || b.degree() <= 0) return true;
  for (uint64_t y : kSamplePoints) {
    ModPoly pa, pb;
    if (!specialize(a, y, pa) || !specialize(b, y, pb)) continue;
    if (mod_gcd_degree(pa, pb) == 0) return true;
  }
  return false;
}

bool certify_squarefree(const BiPoly& a) {
  if (a.degree() <= 1) return true;
  for (uint64_t y : kSamplePoints) {
    ModPoly pa;
    if (!specialize(a, y, pa)) continue;
    ModPoly da(pa.size() - 1);
    for (size_t i = 1; i < pa.size(); ++i) da[i - 1] = mulmod(pa[i], static_cast<uint64_t>(i) % kPrime);
    trim(da);
    if (da.size() != pa.size() - 1) continue;
    if (mod_gcd_degree(pa, da) == 0) return true;
  }
  return false;
}

// ------------------------------------------------------------ square-free decomposition

std::vector<SquarefreeFactor> squarefree_decomposition(const BiPoly& p) {
  if (p.is_zero_poly()) throw std::invalid_argument("square-free decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  UniPoly cont = content_y(p);
  BiPoly a = drop_y_content(p);
  // record the content together with the rational scalar that makes a primitive
  BiPoly ap = primitive_part(a);
  {
    // p = cont * scalar * ap; recover scalar from leading coefficients
    Rational scalar = a.lead().lead() / ap.lead().lead();
    out.push_back({bipoly_from_y(cont.scaled(scalar)), 0});
  }
  a = ap;
  if (a.degree() <= 0) return out;
  if (certify_squarefree(a)) {
    out.push_back({a, 1});
    return out;
  }
  BiPoly b = derivative_x(a);
  BiPoly c = gcd_x(a, b);
  BiPoly w = exact_div(a, c);
  BiPoly y = exact_div(b, c);
  BiPoly z = y - derivative_x(w);
  int i = 1;
  while (w.degree() > 0) {
    BiPoly g = z.is_zero_poly() ? primitive_part(w) : gcd_x(w, z);
    if (g.degree() > 0) out.push_back({g, i});
    w = exact_div(w, g);
    y = exact_div(z, g);
    z = y - derivative_x(w);
    ++i;
  }
  return out;
}

// ------------------------------------------------------------ composed products

template <class T>
std::vector<T> power_sums_monic(const std::vector<T>& a, size_t count) {
  // a: coefficients a_0..a_{d-1}, a_d = 1 implied
  const size_t d = a.size();
  std::vector<T> s(count + 1);
  for (size_t k = 1; k <= count; ++k) {
    T acc{};
    for (size_t i = 1; i < k && i <= d; ++i) acc = acc + a[d - i] * s[k - i];
    if (k <= d) acc = acc + a[d - k] * T(static_cast<long>(k));
    s[k] = -acc;
  }
  return s;
}

template std::vector<Rational> power_sums_monic(const std::vector<Rational>&, size_t);
template std::vector<UniPoly> power_sums_monic(const std::vector<UniPoly>&, size_t);

namespace {

Rational div_int(const Rational& v, long k) { return v / k; }
UniPoly div_int(const UniPoly& v, long k) { return v.scaled(Rational(1, k)); }

// Coefficient vector of the generic polynomial type.
template <class R>
struct Traits;

template <>
struct Traits<Rational> {
  using P = UniPoly;
  static std::vector<Rational> coeffs(const UniPoly& p) { return p.coeffs(); }
  static UniPoly make(std::vector<Rational> c) { return UniPoly(std::move(c)); }
  static UniPoly normalize(const UniPoly& p) { return primitive_part(p); }
};

template <>
struct Traits<UniPoly> {
  using P = BiPoly;
  static std::vector<UniPoly> coeffs(const BiPoly& p) { return p.coeffs(); }
  static BiPoly make(std::vector<UniPoly> c) { return BiPoly(std::move(c)); }
  static BiPoly normalize(const BiPoly& p) { return primitive_part(p); }
};

// Z = lead * X turns p into a monic polynomial with coefficients in R.
template <class R>
std::vector<R> monic_scaled(const std::vector<R>& c, R& lead) {
  const size_t d = c.size() - 1;
  lead = c[d];
  std::vector<R> out(d);
  R f(static_cast<long>(1));
  for (size_t j = d; j-- > 0;) {
    out[j] = c[j] * f;
    f = f * lead;
  }
  return out;
}

// Monic coefficients (ascending, leading 1 dropped) from power sums p_1..p_n.
template <class R>
std::vector<R> from_power_sums(const std::vector<R>& p, size_t n) {
  std::vector<R> e(n + 1);
  e[0] = R(static_cast<long>(1));
  for (size_t k = 1; k <= n; ++k) {
    R acc{};
    for (size_t i = 1; i <= k; ++i) {
      R term = e[k - i] * p[i];
      if (i % 2 == 1) {
          acc = acc + term;
        } else {
          acc = acc - term;
        }
    }
    e[k] = div_int(acc, static_cast<long>(k));
  }
  // polynomial prod (W - r) = sum_k (-1)^k e_k W^{n-k}
  std::vector<R> coeffs(n + 1);
  for (size_t k = 0; k <= n; ++k) coeffs[n - k] = (k % 2 == 0) ? R(e[k]) : R(-e[k]);
  return coeffs;
}

// Turns a monic W-polynomial back into X via W = s X: coefficient j times s^j.
template <class R>
typename Traits<R>::P unscale(std::vector<R> coeffs, const R& s) {
  R f(static_cast<long>(1));
  for (auto& c : coeffs) {
    c = c * f;
    f = f * s;
  }
  return Traits<R>::normalize(Traits<R>::make(std::move(coeffs)));
}

size_t binom(size_t n, size_t k) {
  if (k > n) return 0;
  size_t r = 1;
  for (size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class R>
R rpow(const R& b, size_t e) {
  R r(static_cast<long>(1));
  for (size_t i = 0; i < e; ++i) r = r * b;
  return r;
}

template <class R>
typename Traits<R>::P pairs_impl(const typename Traits<R>::P& p, const ExactArithConfig& cfg) {
  if (p.degree() < 1) throw std::invalid_argument("composed product of a constant polynomial");
  const size_t d = static_cast<size_t>(p.degree());
  const size_t n = d * d;
  if (n > cfg.degree_cap) throw std::length_error("degree cap exceeded");
  R lead;
  std::vector<R> a = monic_scaled(Traits<R>::coeffs(p), lead);
  std::vector<R> s = power_sums_monic(a, n);
  std::vector<R> ps(n + 1);
  for (size_t k = 1; k <= n; ++k) ps[k] = s[k] * s[k];
  return unscale(from_power_sums(ps, n), rpow(lead, 2));
}

template <class R>
typename Traits<R>::P subsets_impl(const typename Traits<R>::P& p, size_t m, const ExactArithConfig& cfg) {
  if (p.degree() < 1) throw std::invalid_argument("composed product of a constant polynomial");
  const size_t d = static_cast<size_t>(p.degree());
  if (m < 1 || m > d) throw std::invalid_argument("subset size out of range");
  const size_t n = binom(d, m);
  if (n > cfg.degree_cap) throw std::length_error("degree cap exceeded");
  R lead;
  std::vector<R> a = monic_scaled(Traits<R>::coeffs(p), lead);
  std::vector<R> s = power_sums_monic(a, n * m);
  std::vector<R> ps(n + 1);
  for (size_t k = 1; k <= n; ++k) {
    // e_m of the k-th powers of the roots, from their power sums s_{k}, s_{2k}, ...
    std::vector<R> e(m + 1);
    e[0] = R(static_cast<long>(1));
    for (size_t j = 1; j <= m; ++j) {
      R acc{};
      for (size_t i = 1; i <= j; ++i) {
        R term = e[j - i] * s[i * k];
        if (i % 2 == 1) {
          acc = acc + term;
        } else {
          acc = acc - term;
        }
      }
      e[j] = div_int(acc, static_cast<long>(j));
    }
    ps[k] = e[m];
  }
  return unscale(from_power_sums(ps, n), rpow(lead, m));
}

// Bivariate truncated power series in (u, v) graded by total degree; grade g is
// a vector indexed by the u-exponent.
template <class R>
using Graded = std::vector<std::vector<R>>;

template <class R>
std::vector<std::pair<typename Traits<R>::P, int>> shapes_impl(const typename Traits<R>::P& p, size_t m,
                                                               const ExactArithConfig& cfg) {
  if (p.degree() < 1) throw std::invalid_argument("composed product of a constant polynomial");
  const size_t d = static_cast<size_t>(p.degree());
  if (m < 1 || m > d) throw std::invalid_argument("subset size out of range");
  const size_t top = 2 * m;
  std::vector<size_t> deg(m + 1);
  size_t maxdeg = 0;
  for (size_t k = 0; k <= m; ++k) {
    deg[k] = binom(d, k) * binom(d - k, 2 * (m - k));
    maxdeg = std::max(maxdeg, deg[k]);
  }
  if (binom(d, m) * binom(d, m) > cfg.degree_cap) throw std::length_error("degree cap exceeded");
  R lead;
  std::vector<R> a = monic_scaled(Traits<R>::coeffs(p), lead);
  std::vector<R> s = power_sums_monic(a, maxdeg * 4 * m);
  std::vector<std::vector<R>> ps(m + 1, std::vector<R>(maxdeg + 1));
  std::vector<Rational> inv_r(top + 1);
  for (size_t r = 1; r <= top; ++r) inv_r[r] = Rational(1, static_cast<long>(r));
  for (size_t q = 1; q <= maxdeg; ++q) {
    // L = sum_i log(1 + u a_i + v b_i), a_i = Z_i^{2q}, b_i = Z_i^q
    Graded<R> L(top + 1);
    for (size_t g = 0; g <= top; ++g) L[g].assign(g + 1, R());
    for (size_t r = 1; r <= top; ++r) {
      for (size_t t = 0; t <= r; ++t) {
        // u^t v^{r-t}
        R c = s[q * (r + t)] * R(static_cast<long>(binom(r, t)));
        c = div_int(c, static_cast<long>(r));
        if (r % 2 == 0) c = -c;
        L[r][t] = L[r][t] + c;
      }
    }
    // E = exp(L): g E_g = sum_{j=1}^g j L_j E_{g-j}
    Graded<R> E(top + 1);
    E[0] = {R(static_cast<long>(1))};
    for (size_t g = 1; g <= top; ++g) {
      E[g].assign(g + 1, R());
      for (size_t j = 1; j <= g; ++j) {
        for (size_t ta = 0; ta <= j; ++ta) {
          if (is_zero(L[j][ta])) continue;
          R lj = L[j][ta] * R(static_cast<long>(j));
          for (size_t tb = 0; tb <= g - j; ++tb) E[g][ta + tb] = E[g][ta + tb] + lj * E[g - j][tb];
        }
      }
      for (auto& v : E[g]) v = div_int(v, static_cast<long>(g));
    }
    for (size_t k = 0; k <= m; ++k) {
      if (q > deg[k]) continue;
      const size_t g = k + 2 * (m - k);
      ps[k][q] = E[g][k];
    }
  }
  std::vector<std::pair<typename Traits<R>::P, int>> out;
  for (size_t k = m + 1; k-- > 0;) {
    if (deg[k] == 0) continue;
    auto poly = unscale(from_power_sums(ps[k], deg[k]), rpow(lead, 2 * m));
    out.emplace_back(std::move(poly), static_cast<int>(binom(2 * (m - k), m - k)));
  }
  return out;
}

}  // namespace

BiPoly composed_product_pairs(const BiPoly& p, const ExactArithConfig& cfg) { return pairs_impl<UniPoly>(p, cfg); }

BiPoly composed_product_subsets(const BiPoly& p, size_t m, const ExactArithConfig& cfg) {
  return subsets_impl<UniPoly>(p, m, cfg);
}

std::vector<std::pair<BiPoly, int>> composed_square_shapes(const BiPoly& p, size_t m, const ExactArithConfig& cfg) {
  return shapes_impl<UniPoly>(p, m, cfg);
}

std::vector<std::pair<UniPoly, int>> composed_square_shapes(const UniPoly& p, size_t m, const ExactArithConfig& cfg) {
  return shapes_impl<Rational>(p, m, cfg);
}

UniPoly composed_product_pairs(const UniPoly& p, const ExactArithConfig& cfg) { return pairs_impl<Rational>(p, cfg); }

UniPoly composed_product_subsets(const UniPoly& p, size_t m, const ExactArithConfig& cfg) {
  return subsets_impl<Rational>(p, m, cfg);
}

// ------------------------------------------------------------ rational functions

RationalFunction::RationalFunction(UniPoly num, UniPoly den) {
  if (den.is_zero_poly()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero_poly()) {
    num_ = UniPoly();
    den_ = UniPoly(Rational(1));
    return;
  }
  UniPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = num.exact_div(g);
    den = den.exact_div(g);
  }
  Rational l = den.lead();
  num_ = num.scaled(1 / l);
  den_ = den.scaled(1 / l);
}

Rational RationalFunction::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (conecert::is_zero(d)) throw std::domain_error("rational function evaluated at a pole");
  return num_(x) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

// ------------------------------------------------------------ characteristic polynomials

namespace {

// Faddeev-LeVerrier over a commutative Q-algebra; returns monic char-poly
// coefficients (ascending).
template <class R>
std::vector<R> char_poly_generic(const std::vector<std::vector<R>>& c) {
  const size_t d = c.size();
  std::vector<R> coef(d + 1);
  coef[d] = R(static_cast<long>(1));
  std::vector<std::vector<R>> mk(d, std::vector<R>(d));
  for (size_t k = 1; k <= d; ++k) {
    // M_k = C M_{k-1} + c_{d-k+1} I, with M_0 = 0
    std::vector<std::vector<R>> next(d, std::vector<R>(d));
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) {
        R acc{};
        for (size_t l = 0; l < d; ++l) acc = acc + c[i][l] * mk[l][j];
        if (i == j) acc = acc + coef[d - k + 1];
        next[i][j] = acc;
      }
    }
    mk = std::move(next);
    R tr{};
    for (size_t i = 0; i < d; ++i) {
      for (size_t l = 0; l < d; ++l) tr = tr + c[i][l] * mk[l][i];
    }
    coef[d - k] = -div_int(tr, static_cast<long>(k));
  }
  return coef;
}

}  // namespace

UniPoly char_poly(const RatMatrix& a) {
  for (const auto& row : a) {
    if (row.size() != a.size()) throw std::invalid_argument("char_poly: non-square matrix");
  }
  return UniPoly(char_poly_generic(a));
}

BiPoly reversed_char_poly(const RatFuncMatrix& a) {
  const size_t d = a.size();
  for (const auto& row : a) {
    if (row.size() != d) throw std::invalid_argument("reversed_char_poly: non-square matrix");
  }
  if (d == 0) throw std::invalid_argument("reversed_char_poly: empty matrix");
  // entries of A(1/Y) as num_Y / den_Y
  std::vector<std::vector<std::pair<UniPoly, UniPoly>>> e(d, std::vector<std::pair<UniPoly, UniPoly>>(d));
  UniPoly l(Rational(1));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      const RationalFunction& f = a[i][j];
      long dn = f.num().degree(), dd = f.den().degree();
      UniPoly num = f.is_zero() ? UniPoly() : f.num().reversed(static_cast<size_t>(dn));
      UniPoly den = f.den().reversed(static_cast<size_t>(dd));
      if (!f.is_zero()) {
        if (dd >= dn) {
          num = num.shifted(dd - dn);
        } else {
          den = den.shifted(dn - dd);
        }
      }
      RationalFunction g(num, den);
      e[i][j] = {g.num(), g.den()};
      l = l * g.den().exact_div(gcd(l, g.den()));
    }
  }
  std::vector<std::vector<UniPoly>> c(d, std::vector<UniPoly>(d));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) c[i][j] = e[i][j].first * l.exact_div(e[i][j].second);
  }
  std::vector<UniPoly> chi = char_poly_generic(c);
  // det(X I - C/L) * L^d = chi_C(L X)
  UniPoly f(Rational(1));
  for (auto& v : chi) {
    v = v * f;
    f = f * l;
  }
  return primitive_part(BiPoly(std::move(chi)));
}

}  // namespace conecert
