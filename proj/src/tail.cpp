#include "conecert/tail.hpp"

#include <utility>

namespace conecert {

namespace {

constexpr mpfr_prec_t kPrec = 192;
constexpr int kMaxHalvings = 400;
constexpr long kMaxPieces = 20000;

std::vector<Interval> real_coeffs(const KPoly& f) {
  std::vector<Interval> out;
  for (const auto& c : f.coeffs()) out.push_back(enclose(c, kPrec).re());
  return out;
}

Interval horner(const std::vector<Interval>& c, size_t from, const Interval& y) {
  Interval acc(kPrec);
  for (size_t i = c.size(); i-- > from;) acc = acc * y + c[i];
  return acc;
}

// sum_{i > v} |c_i| delta^{i - v} < c_v
bool dominates(const std::vector<Interval>& c, size_t v, const Rational& delta) {
  Interval d(delta, kPrec);
  Interval acc(kPrec);
  for (size_t i = c.size(); i-- > v + 1;) acc = acc * d + c[i].abs();
  acc = acc * d;
  return (c[v] - acc).positive();
}

// Covers [lo, hi] left to right. Returns the right end of the certified prefix.
Rational cover(const std::vector<Interval>& c, size_t v, const Rational& lo, const Rational& hi, long& pieces) {
  const Rational min_width = (hi - lo) * pow2(-24);
  std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
  Rational reached = lo;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    Interval y(a, b, kPrec);
    if (horner(c, v, y).positive()) {
      ++pieces;
      reached = b;
      continue;
    }
    if (b - a < min_width || pieces > kMaxPieces) return reached;
    Rational m = (a + b) / 2;
    stack.emplace_back(m, b);
    stack.emplace_back(a, m);
  }
  return reached;
}

}  // namespace

long index_for(const Rational& y) {
  if (sgn(y) <= 0) throw std::domain_error("threshold must be positive");
  Rational inv = 1 / y;
  Integer n = inv.get_num() / inv.get_den();
  if (Rational(n) < inv) n += 1;
  return std::max(1L, n.get_si());
}

long TailCertificate::index() const { return index_for(threshold); }

Interval eval_real(const KPoly& f, const Interval& y) { return horner(real_coeffs(f), 0, y); }

TailResult certify_tail_positive(const KPoly& f, const Rational& y_max, const std::string& id) {
  TailResult r;
  r.cert.id = id;
  if (f.is_zero_poly()) {
    r.reason = "identically zero";
    return r;
  }
  const long v = f.valuation();
  r.cert.valuation = v;
  int s = 0;
  try {
    s = sign(f[static_cast<size_t>(v)]);
  } catch (const std::domain_error&) {
    r.reason = "non-real coefficient";
    return r;
  }
  if (s < 0) {
    r.reason = "negative near 0";
    return r;
  }
  const auto c = real_coeffs(f);
  const auto vs = static_cast<size_t>(v);
  Rational delta = y_max;
  int it = 0;
  while (!dominates(c, vs, delta) && it++ < kMaxHalvings) delta /= 2;
  if (it > kMaxHalvings) {
    r.reason = "no domination radius";
    return r;
  }
  r.cert.delta = delta;
  long pieces = 0;
  Rational top = delta < y_max ? cover(c, vs, delta, y_max, pieces) : delta;
  r.cert.threshold = top;
  r.cert.pieces = pieces;
  r.ok = true;
  return r;
}

bool replay_tail(const KPoly& f, const TailCertificate& cert) {
  if (f.is_zero_poly() || f.valuation() != cert.valuation) return false;
  if (sgn(cert.delta) <= 0 || cert.threshold < cert.delta) return false;
  int s = 0;
  try {
    s = sign(f[static_cast<size_t>(cert.valuation)]);
  } catch (const std::domain_error&) {
    return false;
  }
  if (s <= 0) return false;
  const auto c = real_coeffs(f);
  const auto vs = static_cast<size_t>(cert.valuation);
  if (!dominates(c, vs, cert.delta)) return false;
  if (cert.threshold == cert.delta) return true;
  long pieces = 0;
  return cover(c, vs, cert.delta, cert.threshold, pieces) == cert.threshold;
}

}  // namespace conecert
