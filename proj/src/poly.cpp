#include "conecert/poly.hpp"

#include <cstdint>
#include <sstream>

namespace conecert {

UniPoly primitive_part(const UniPoly& p) {
  if (p.is_zero_poly()) return p;
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  std::vector<Rational> out(p.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) {
    Rational v = p.coeffs()[i] * den;
    out[i] = v;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (sgn(p.lead()) < 0) g = -g;
  for (auto& v : out) v /= g;
  return UniPoly(std::move(out));
}

namespace {

constexpr uint64_t kGcdPrime = 2147483647;

std::vector<uint64_t> reduce_mod(const UniPoly& p) {
  std::vector<uint64_t> r;
  r.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), c.get_num_mpz_t(), kGcdPrime);
    r.push_back(m.get_ui());
  }
  return r;
}

uint64_t inv_mod(uint64_t a) {
  uint64_t r = 1, e = kGcdPrime - 2;
  while (e) {
    if (e & 1) r = r * a % kGcdPrime;
    a = a * a % kGcdPrime;
    e >>= 1;
  }
  return r;
}

void trim_mod(std::vector<uint64_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

long gcd_degree_mod(std::vector<uint64_t> a, std::vector<uint64_t> b) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    const uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      const uint64_t f = a.back() * inv % kGcdPrime;
      const size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] = (a[off + i] + (kGcdPrime - f) * b[i]) % kGcdPrime;
      trim_mod(a);
    }
    std::swap(a, b);
  }
  return static_cast<long>(a.size()) - 1;
}

// lc(b)^k a mod b for integer polynomials, made primitive
UniPoly primitive_prem(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> r = a.coeffs();
  const std::vector<Rational>& bc = b.coeffs();
  const Rational& lb = b.lead();
  while (r.size() >= bc.size()) {
    const Rational f = r.back();
    const size_t off = r.size() - bc.size();
    for (auto& c : r) c *= lb;
    for (size_t i = 0; i < bc.size(); ++i) r[off + i] -= f * bc[i];
    r.pop_back();
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
  }
  return primitive_part(UniPoly(std::move(r)));
}

}  // namespace

UniPoly gcd(const UniPoly& a0, const UniPoly& b0) {
  if (a0.is_zero_poly()) return b0.is_zero_poly() ? b0 : b0.monic();
  if (b0.is_zero_poly()) return a0.monic();
  if (a0.degree() == 0 || b0.degree() == 0) return UniPoly(Rational(1));
  UniPoly a = primitive_part(a0);
  UniPoly b = primitive_part(b0);
  const auto am = reduce_mod(a);
  const auto bm = reduce_mod(b);
  if (am.back() != 0 && bm.back() != 0 && gcd_degree_mod(am, bm) == 0) return UniPoly(Rational(1));
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero_poly()) {
    if (b.degree() == 0) return UniPoly(Rational(1));
    UniPoly r = primitive_prem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Integer> integer_coeffs(const UniPoly& p) {
  UniPoly q = primitive_part(p);
  std::vector<Integer> r;
  r.reserve(q.size());
  for (const auto& c : q.coeffs()) r.push_back(c.get_num());
  return r;
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return p.exact_div(g).monic();
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() <= 0) return out;
  UniPoly a = p.monic();
  UniPoly b = a.derivative();
  UniPoly c = gcd(a, b);
  UniPoly w = a.exact_div(c);
  UniPoly y = b.exact_div(c);
  UniPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w.exact_div(g);
    y = z.exact_div(g);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

UniPoly taylor_shift(const UniPoly& p, const Rational& a) {
  std::vector<Rational> c = p.coeffs();
  const size_t n = c.size();
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t j = n - 1; j-- > i;) c[j] += a * c[j + 1];
  }
  return UniPoly(std::move(c));
}

UniPoly scale_variable(const UniPoly& p, const Rational& s) {
  std::vector<Rational> c = p.coeffs();
  Rational f = 1;
  for (auto& v : c) {
    v *= f;
    f *= s;
  }
  return UniPoly(std::move(c));
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s) {
    if (ch != ' ' && ch != '\t') t.push_back(ch);
  }
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos) throw std::invalid_argument("malformed rational literal: " + s);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    Rational r;
    if (r.get_num().set_str(digits, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, t.size() - dot - 1);
    r = Rational(r.get_num(), den);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const UniPoly& p, const std::string& var) {
  if (p.is_zero_poly()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = p.size(); k-- > 0;) {
    const Rational& c = p.coeffs()[k];
    if (is_zero(c)) continue;
    Rational a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (k == 0 || a != 1) {
      os << a.get_str();
      if (k > 0) os << "*";
    }
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

Rational root_bound(const UniPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  const Rational& lc = p.lead();
  for (long i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeffs()[static_cast<size_t>(i)] / lc);
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace conecert
