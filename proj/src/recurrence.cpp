#include "conecert/recurrence.hpp"

#include <algorithm>
#include <sstream>

namespace conecert {

std::vector<long> nonnegative_integer_roots(const UniPoly& p) {
  std::vector<long> out;
  for (const Rational& r : rational_roots(p)) {
    if (r.get_den() == 1 && sgn(r) >= 0) out.push_back(r.get_num().get_si());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate(const Recurrence& rec) {
  if (rec.p.size() < 2) throw InputError("recurrence order must be at least 1");
  const size_t d = rec.order();
  if (rec.initial.size() != d) {
    throw InputError("expected " + std::to_string(d) + " initial values, got " + std::to_string(rec.initial.size()));
  }
  if (rec.p[d].is_zero_poly()) throw InputError("leading coefficient is zero");
  if (rec.p[0].is_zero_poly()) throw InputError("trailing coefficient is zero");
  auto roots = nonnegative_integer_roots(rec.p[d]);
  if (!roots.empty()) {
    throw InputError("leading coefficient vanishes at n = " + std::to_string(roots.front()));
  }
  for (size_t i = 0; i < d; ++i) {
    if (rec.p[i].degree() > rec.p[d].degree()) throw InputError("not Poincaré type");
  }
}

RatFuncMatrix companion(const Recurrence& rec) {
  validate(rec);
  const size_t d = rec.order();
  RatFuncMatrix a(d, std::vector<RationalFunction>(d));
  for (size_t i = 0; i + 1 < d; ++i) a[i][i + 1] = RationalFunction(UniPoly(Rational(1)));
  for (size_t j = 0; j < d; ++j) a[d - 1][j] = RationalFunction(rec.p[j], rec.p[d]);
  return a;
}

void unroll_more(const Recurrence& rec, std::vector<Rational>& u, size_t count) {
  const size_t d = rec.order();
  if (u.size() < d) throw std::invalid_argument("unroll needs the initial values");
  u.reserve(count);
  while (u.size() < count) {
    const size_t n = u.size() - d;
    const Rational nq(static_cast<long>(n));
    Rational acc = 0;
    for (size_t i = 0; i < d; ++i) acc += rec.p[i](nq) * u[n + i];
    u.push_back(acc / rec.p[d](nq));
  }
}

std::vector<Rational> unroll(const Recurrence& rec, size_t count) {
  validate(rec);
  std::vector<Rational> u = rec.initial;
  for (auto& v : u) v.canonicalize();
  unroll_more(rec, u, count);
  u.resize(count);
  return u;
}

RatMatrix limit_matrix(const RatFuncMatrix& a) {
  RatMatrix out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    for (const auto& f : a[i]) {
      if (f.is_zero()) {
        out[i].emplace_back(0);
        continue;
      }
      const long dn = f.num().degree(), dd = f.den().degree();
      if (dn > dd) throw InputError("not Poincaré type");
      out[i].push_back(dn == dd ? Rational(f.num().lead() / f.den().lead()) : Rational(0));
    }
  }
  return out;
}

RatMatrix evaluate(const RatFuncMatrix& a, const Rational& n) {
  RatMatrix out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    for (const auto& f : a[i]) out[i].push_back(f(n));
  }
  return out;
}

std::string to_string(const Recurrence& rec) {
  std::ostringstream os;
  const size_t d = rec.order();
  os << "(" << to_string(rec.p[d], "n") << ") u(n+" << d << ") =";
  for (size_t i = d; i-- > 0;) {
    os << (i + 1 == d ? " " : " + ") << "(" << to_string(rec.p[i], "n") << ") u(n+" << i << ")";
  }
  return os.str();
}

}  // namespace conecert
