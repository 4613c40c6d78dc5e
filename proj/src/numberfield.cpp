#include "conecert/numberfield.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

#include "conecert/bipoly.hpp"

namespace conecert {

namespace {

constexpr mpfr_prec_t kMaxBits = 1 << 15;

Rational pow2_neg(mpfr_prec_t k) { return pow2(-static_cast<long>(k)); }

Integer lcm_denominators(const UniPoly& p, Integer acc) {
  for (const auto& c : p.coeffs()) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), c.get_den_mpz_t());
  return acc;
}

std::optional<Integer> unique_integer(const Interval& x) {
  Rational lo = x.lo_q(), hi = x.hi_q();
  if (hi - lo >= 1) return std::nullopt;
  Integer a, b;
  mpz_cdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_fdiv_q(b.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  if (a != b) return std::nullopt;
  return a;
}

// Deterministic preference among candidate embeddings: real roots first
// (largest first), then larger real part, then positive imaginary part.
bool preferred(const RootDisk& a, const RootDisk& b) {
  if (a.real != b.real) return a.real;
  if (a.re != b.re) return a.re > b.re;
  return a.im > b.im;
}

KPoly shift_by(const KPoly& p, const KElem& c) {  // p(x + c)
  return p.compose(KPoly{c, KElem(1)});
}

}  // namespace

// ---------------------------------------------------------------- elements

KElem::KElem(Field k, UniPoly rep) : k_(std::move(k)) {
  if (k_ && rep.degree() >= k_->degree()) rep = rep % k_->minpoly();
  rep_ = std::move(rep);
  if (rep_.degree() <= 0) k_.reset();
}

Rational KElem::to_rational() const {
  if (!is_rational()) throw std::domain_error("element is not rational");
  return rep_.is_zero_poly() ? Rational(0) : rep_.coeffs()[0];
}

Field common_field(const Field& a, const Field& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw std::logic_error("elements of different number fields");
}

KElem operator+(const KElem& a, const KElem& b) { return {common_field(a.k_, b.k_), a.rep_ + b.rep_}; }
KElem operator-(const KElem& a, const KElem& b) { return {common_field(a.k_, b.k_), a.rep_ - b.rep_}; }
KElem operator*(const KElem& a, const KElem& b) {
  if (a.is_rational()) return {b.k_, b.rep_.scaled(a.to_rational())};
  if (b.is_rational()) return {a.k_, a.rep_.scaled(b.to_rational())};
  Field k = common_field(a.k_, b.k_);
  return {k, (a.rep_ * b.rep_) % k->minpoly()};
}
KElem operator/(const KElem& a, const KElem& b) { return a * inverse(b); }
KElem KElem::operator-() const { return {k_, -rep_}; }
bool operator==(const KElem& a, const KElem& b) {
  if (a.k_ && b.k_ && a.k_ != b.k_) throw std::logic_error("elements of different number fields");
  return a.rep_ == b.rep_;
}

KElem inverse(const KElem& a) {
  if (is_zero(a)) throw std::domain_error("division by zero");
  if (a.is_rational()) return KElem(1 / a.to_rational());
  auto [g, s, t] = ext_gcd(a.rep(), a.field()->minpoly());
  if (g.degree() != 0) throw std::logic_error("minimal polynomial is reducible");
  return {a.field(), s};
}

// ------------------------------------------------------------------- field

Field NumberField::create(UniPoly m, RootDisk root) {
  if (m.degree() < 1 || m.lead() != 1) throw std::invalid_argument("minimal polynomial must be monic");
  for (const auto& c : m.coeffs()) {
    if (c.get_den() != 1) throw std::invalid_argument("minimal polynomial must be integral");
  }
  return std::make_shared<const NumberField>(std::move(m), std::move(root));
}

KElem NumberField::generator() const { return {shared_from_this(), UniPoly::x()}; }

RootDisk NumberField::root_disk(const Rational& r) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (disk_.radius > r) disk_ = refine_root(m_, disk_, r);
  return disk_;
}

RootDisk NumberField::root_disk() const {
  std::lock_guard<std::mutex> lock(mu_);
  return disk_;
}

std::string NumberField::to_string() const {
  RootDisk d = root_disk();
  std::ostringstream os;
  os << "Q(a), " << conecert::to_string(m_, "a") << " = 0, a ~ " << d.re.get_d();
  if (!d.real) os << (d.im >= 0 ? " + " : " - ") << Rational(abs(d.im)).get_d() << "i";
  return os.str();
}

ComplexInterval enclose(const KElem& a, mpfr_prec_t prec) {
  if (a.is_rational()) return {a.to_rational(), prec};
  return eval_poly(a.rep(), a.field()->root_disk().box(prec));
}

ComplexInterval enclose(const KElem& a, const Rational& width) {
  if (a.is_rational()) return {a.to_rational(), 64};
  for (mpfr_prec_t k = 64; k <= kMaxBits; k *= 2) {
    RootDisk d = a.field()->root_disk(pow2_neg(k));
    ComplexInterval z = eval_poly(a.rep(), d.box(k + 64));
    if (z.re().width_q() < width && z.im().width_q() < width) return z;
  }
  throw std::runtime_error("enclosure precision cap reached");
}

int sign(const KElem& a) {
  if (is_zero(a)) return 0;
  if (a.is_rational()) return sgn(a.to_rational());
  for (mpfr_prec_t k = 32; k <= kMaxBits; k *= 2) {
    ComplexInterval z = enclose(a, pow2_neg(k));
    if (!z.im().contains_zero()) throw std::domain_error("sign of a non-real number");
    if (z.re().positive()) return 1;
    if (z.re().negative()) return -1;
  }
  throw std::runtime_error("sign undecided at maximal precision");
}

std::string to_string(const KElem& a, const std::string& gen) { return to_string(a.rep(), gen); }

KPoly to_kpoly(const UniPoly& p) {
  std::vector<KElem> c;
  c.reserve(p.size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return KPoly(std::move(c));
}

bool is_rational_poly(const KPoly& p) {
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) return false;
  }
  return true;
}

UniPoly to_unipoly(const KPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& v : p.coeffs()) c.push_back(v.to_rational());
  return UniPoly(std::move(c));
}

// ------------------------------------------------------------------- norms

UniPoly norm(const KPoly& p, const Field& k) {
  if (!k) return to_unipoly(p);
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm_denominators(c.rep(), den);
  std::vector<UniPoly> reps;
  for (const auto& c : p.coeffs()) reps.push_back(c.rep().scaled(Rational(den)));
  const size_t n = p.size();
  const long kd = k->degree();
  for (mpfr_prec_t bits = 128; bits <= kMaxBits; bits *= 2) {
    IsolatedRoots conj = isolate_roots(k->minpoly(), pow2_neg(bits), bits);
    std::vector<ComplexInterval> prod{ComplexInterval(Rational(1), bits)};
    for (const auto& root : conj.roots) {
      ComplexInterval g = root.box(bits);
      std::vector<ComplexInterval> f;
      f.reserve(n);
      for (const auto& r : reps) f.push_back(eval_poly(r, g));
      std::vector<ComplexInterval> next(prod.size() + n - 1, ComplexInterval(bits));
      for (size_t i = 0; i < prod.size(); ++i)
        for (size_t j = 0; j < n; ++j) next[i + j] = next[i + j] + prod[i] * f[j];
      prod = std::move(next);
    }
    std::vector<Rational> out;
    bool ok = true;
    for (const auto& c : prod) {
      auto v = unique_integer(c.re());
      if (!v || !c.im().contains_zero()) {
        ok = false;
        break;
      }
      out.emplace_back(*v);
    }
    if (!ok) continue;
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(kd));
    return UniPoly(std::move(out)).scaled(Rational(Integer(1), scale));
  }
  throw std::runtime_error("norm: precision cap reached");
}

std::vector<std::pair<KPoly, int>> squarefree_decomposition(const KPoly& p) {
  std::vector<std::pair<KPoly, int>> out;
  if (p.degree() <= 0) return out;
  KPoly a = p.monic();
  KPoly b = a.derivative();
  KPoly c = gcd(a, b);
  KPoly w = a.exact_div(c);
  KPoly y = b.exact_div(c);
  KPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    KPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w.exact_div(g);
    y = z.exact_div(g);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

std::vector<KPoly> factor_squarefree(const KPoly& p, const Field& k) {
  if (p.degree() <= 0) return {};
  if (p.degree() == 1) return {p.monic()};
  if (!k) {
    std::vector<KPoly> out;
    for (const auto& f : factor_over_q(to_unipoly(p))) out.push_back(to_kpoly(f).monic());
    return out;
  }
  const KPoly pm = p.monic();
  const KElem g = k->generator();
  for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L, 7L}) {
    KPoly h = shift_by(pm, -(g * KElem(s)));
    UniPoly nh = norm(h, k);
    if (gcd(nh, nh.derivative()).degree() > 0) continue;
    auto facs = factor_over_q(nh);
    if (facs.size() == 1) return {pm};
    std::vector<KPoly> out;
    long total = 0;
    for (const auto& f : facs) {
      KPoly fi = gcd(h, to_kpoly(f));
      if (fi.degree() <= 0) continue;
      total += fi.degree();
      out.push_back(shift_by(fi, g * KElem(s)).monic());
    }
    if (total != pm.degree()) throw std::logic_error("factorisation over the number field lost a factor");
    return out;
  }
  throw std::runtime_error("no square-free norm found");
}

// -------------------------------------------------------------- extensions

namespace {

// Builds Q(sqrt(D0)) with the canonical embedding (positive real, or positive
// imaginary part) for the quadratic minimal polynomial x^2 + b x + c.
Extension quadratic_extension(const UniPoly& nm, const Integer& den) {
  const Rational b = nm.coeffs()[1], c = nm.coeffs()[0];
  Rational disc = b * b - 4 * c;  // integral
  Integer dnum = disc.get_num();
  // strip square factors
  Integer f = 1, rest = abs(dnum);
  // trial division only; a leftover square factor just makes d0 non-minimal
  for (unsigned long p = 2; p <= 1000000 && p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      f *= p;
    }
  }
  Integer d0 = sgn(dnum) < 0 ? Integer(-rest) : rest;
  UniPoly m{Rational(-d0), Rational(0), Rational(1)};
  IsolatedRoots iso = isolate_roots(m);
  size_t pick = 0;
  for (size_t i = 1; i < iso.roots.size(); ++i) {
    if (preferred(iso.roots[i], iso.roots[pick])) pick = i;
  }
  Field l = NumberField::create(m, iso.roots[pick]);
  // theta = (f sqrt(d0) - b) / 2 is a root of nm; the adjoined root is theta/den
  KElem theta = (l->generator() * KElem(Rational(f)) - KElem(b)) * KElem(Rational(1, 2));
  return {nullptr, l, KElem(0), theta * KElem(Rational(Integer(1), den))};
}

}  // namespace

Extension extend(const Field& k, const KPoly& g0) {
  if (g0.degree() < 2) throw std::invalid_argument("extension by a linear polynomial");
  const KPoly g = g0.monic();
  const size_t n = static_cast<size_t>(g.degree());
  Integer den = 1;
  for (const auto& c : g.coeffs()) den = lcm_denominators(c.rep(), den);
  // g_D(x) = D^n g(x / D): monic with coefficients in Z[a]
  std::vector<KElem> gd(n + 1);
  {
    Rational f = 1;
    for (size_t j = n + 1; j-- > 0;) {
      gd[j] = g.coeffs()[j] * KElem(f);
      f *= den;
    }
  }
  const KPoly gD(gd);

  if (!k) {
    UniPoly nm = to_unipoly(gD);
    if (n == 2) return quadratic_extension(nm, den);
    IsolatedRoots iso = isolate_roots(nm);
    size_t pick = 0;
    for (size_t i = 1; i < iso.roots.size(); ++i) {
      if (preferred(iso.roots[i], iso.roots[pick])) pick = i;
    }
    Field l = NumberField::create(nm, iso.roots[pick]);
    return {nullptr, l, KElem(0), l->generator() * KElem(Rational(Integer(1), den))};
  }

  const KElem gen = k->generator();
  for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L, 7L}) {
    KPoly h = shift_by(gD, -(gen * KElem(s)));  // roots c + s a
    UniPoly nm = norm(h, k);
    if (gcd(nm, nm.derivative()).degree() > 0) continue;
    // roots of nm that are roots of h under the designated embedding of a
    std::vector<size_t> hits;
    IsolatedRoots iso;
    for (mpfr_prec_t bits = 64; bits <= kMaxBits; bits *= 2) {
      iso = isolate_roots(nm, pow2_neg(bits), bits);
      std::vector<ComplexInterval> hc;
      for (const auto& c : h.coeffs()) hc.push_back(enclose(c, pow2_neg(bits)));
      hits.clear();
      for (size_t i = 0; i < iso.roots.size(); ++i) {
        ComplexInterval z = iso.roots[i].box(bits + 64);
        ComplexInterval acc(bits + 64);
        for (size_t j = hc.size(); j-- > 0;) acc = acc * z + hc[j];
        if (acc.contains_zero()) hits.push_back(i);
      }
      if (hits.size() == n) break;
    }
    if (hits.size() != n) throw std::runtime_error("extension: could not identify the embedding");
    size_t pick = hits[0];
    for (size_t i : hits) {
      if (preferred(iso.roots[i], iso.roots[pick])) pick = i;
    }
    Field l = NumberField::create(nm, iso.roots[pick]);
    const KElem theta = l->generator();
    // the old generator a is the common root of m(y) and g_D(theta - s y)
    KPoly lin{theta, KElem(-s)};
    KPoly hy;
    KPoly pw(KElem(1));
    for (size_t j = 0; j <= n; ++j) {
      hy = hy + to_kpoly(gD.coeffs()[j].rep()) * pw;
      pw = pw * lin;
    }
    KPoly common = gcd(to_kpoly(k->minpoly()), hy);
    if (common.degree() != 1) throw std::logic_error("extension: primitive element relation is not linear");
    KElem old_gen = -common.coeffs()[0];
    KElem root = (theta - old_gen * KElem(s)) * KElem(Rational(Integer(1), den));
    return {k, l, old_gen, root};
  }
  throw std::runtime_error("extension: no separating primitive element found");
}

KElem lift(const KElem& a, const Extension& ext) {
  if (a.is_rational()) return a;
  if (a.field() != ext.base) throw std::logic_error("lift: element is not in the base field");
  return to_kpoly(a.rep())(ext.old_generator);
}

UniPoly minimal_polynomial(const KElem& a) {
  if (a.is_rational()) return primitive_part(UniPoly{-a.to_rational(), Rational(1)});
  const Field& k = a.field();
  const size_t n = static_cast<size_t>(k->degree());
  RatMatrix mat(n, std::vector<Rational>(n, Rational(0)));
  UniPoly basis(Rational(1));
  for (size_t j = 0; j < n; ++j) {
    UniPoly col = (a.rep() * basis) % k->minpoly();
    for (size_t i = 0; i < n; ++i) mat[i][j] = col[i];
    basis = basis * UniPoly::x();
  }
  return primitive_part(squarefree_part(char_poly(mat)));
}

}  // namespace conecert
