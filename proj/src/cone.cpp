#include "conecert/cone.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace conecert {

namespace {

using KPolyMatrix = std::vector<std::vector<KPoly>>;

constexpr mpfr_prec_t kPrec = 192;

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

KElem at(const KPoly& p, long n) { return p(KElem(Rational(1, n))); }

KPoly det_poly(const KPolyMatrix& m) {
  const size_t d = m.size();
  if (d == 1) return m[0][0];
  if (d == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  KPoly acc;
  for (size_t c = 0; c < d; ++c) {
    if (m[0][c].is_zero_poly()) continue;
    KPolyMatrix minor;
    for (size_t r = 1; r < d; ++r) {
      std::vector<KPoly> row;
      for (size_t k = 0; k < d; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    KPoly term = m[0][c] * det_poly(minor);
    acc = c % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

KPolyMatrix adjugate(const KPolyMatrix& m) {
  const size_t d = m.size();
  KPolyMatrix adj(d, std::vector<KPoly>(d));
  if (d == 1) {
    adj[0][0] = KPoly(KElem(1));
    return adj;
  }
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      KPolyMatrix minor;
      for (size_t r = 0; r < d; ++r) {
        if (r == i) continue;
        std::vector<KPoly> row;
        for (size_t k = 0; k < d; ++k) {
          if (k != j) row.push_back(m[r][k]);
        }
        minor.push_back(row);
      }
      KPoly c = det_poly(minor);
      adj[j][i] = (i + j) % 2 == 0 ? c : -c;
    }
  }
  return adj;
}

KPolyMatrix mul(const KPolyMatrix& a, const KPolyMatrix& b) {
  KPolyMatrix out(a.size(), std::vector<KPoly>(b[0].size()));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero_poly()) continue;
      for (size_t j = 0; j < b[0].size(); ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    }
  }
  return out;
}

// (1 + Y)^h f(Y / (1 + Y)) for deg f <= h
KPoly next_index(const KPoly& f, long h) {
  const KPoly one_plus_y{KElem(1), KElem(1)};
  KPoly out;
  for (size_t k = 0; k < f.size(); ++k) {
    if (is_zero(f.coeffs()[k])) continue;
    out = out + KPoly::monomial(f.coeffs()[k], k) * one_plus_y.pow(static_cast<unsigned>(h - static_cast<long>(k)));
  }
  return out;
}

KPoly rev(const UniPoly& p, size_t deg) { return to_kpoly(p.reversed(deg)); }

KMatrix solve(KMatrix a, std::vector<KElem> b) {
  const size_t d = a.size();
  for (size_t c = 0; c < d; ++c) {
    size_t p = c;
    while (p < d && is_zero(a[p][c])) ++p;
    if (p == d) throw std::domain_error("singular basis matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    const KElem inv = inverse(a[c][c]);
    for (size_t r = 0; r < d; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      const KElem f = a[r][c] * inv;
      for (size_t k = c; k < d; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  KMatrix x(d, std::vector<KElem>(1));
  for (size_t r = 0; r < d; ++r) x[r][0] = b[r] / a[r][r];
  return x;
}

// X with A X = B, column by column
KMatrix solve_matrix(const KMatrix& a, const KMatrix& b) {
  const size_t d = a.size();
  KMatrix x(d, std::vector<KElem>(b[0].size()));
  for (size_t j = 0; j < b[0].size(); ++j) {
    std::vector<KElem> col(d);
    for (size_t i = 0; i < d; ++i) col[i] = b[i][j];
    KMatrix s = solve(a, col);
    for (size_t i = 0; i < d; ++i) x[i][j] = s[i][0];
  }
  return x;
}

Interval magnitude(const KElem& x) {
  if (is_zero(x)) return Interval(kPrec);
  return enclose(x, kPrec).abs();
}

// ---------------------------------------------------------------- dominance

// |value| with value * partner = |value|^2; `real` when value is its own conjugate.
struct Term {
  KPoly value;
  KPoly partner;
  bool real = true;
};

struct Row {
  std::string id;
  KPoly lead;
  std::vector<Term> terms;
};

using Family = std::vector<std::pair<std::string, KPoly>>;

struct Magnitude {
  KPoly norm;
  int count;
};

std::vector<Magnitude> magnitudes(const std::vector<Term>& terms) {
  std::vector<Magnitude> mags;
  for (const auto& t : terms) {
    if (t.real || t.value.is_zero_poly()) continue;
    KPoly n = t.value * t.partner;
    auto it = std::find_if(mags.begin(), mags.end(), [&](const Magnitude& m) { return m.norm == n; });
    if (it != mags.end()) {
      ++it->count;
    } else {
      mags.push_back({n, 1});
    }
  }
  std::stable_sort(mags.begin(), mags.end(),
                   [](const Magnitude& a, const Magnitude& b) { return a.norm.valuation() < b.norm.valuation(); });
  return mags;
}

// Polynomials whose positivity on (0, Y*] gives lead > sum |terms| there.
// Real terms enter with their sign near 0, which the first polynomials pin
// down; the complex term of lowest order is removed by squaring and the
// others by monomial majorants r Y^v with r^2 Y^2v > |term|^2.
Family dominance_family(const Row& row, long slack_bits) {
  Family f;
  KPoly l = row.lead;
  int real_no = 0;
  for (const auto& t : row.terms) {
    if (!t.real || t.value.is_zero_poly()) continue;
    const int s = sign(t.value[static_cast<size_t>(t.value.valuation())]);
    const KPoly signed_value = s > 0 ? t.value : -t.value;
    f.emplace_back(row.id + "-sign-" + std::to_string(real_no++), signed_value);
    l = l - signed_value;
  }
  const auto mags = magnitudes(row.terms);
  if (mags.empty()) {
    f.emplace_back(row.id + "-main", l);
    return f;
  }
  for (size_t k = 1; k < mags.size(); ++k) {
    const KPoly& n = mags[k].norm;
    const long w = n.valuation();
    const long v = w / 2;
    const Interval c0 = enclose(n[static_cast<size_t>(w)], kPrec).re();
    Rational r = round_up(c0.sqrt().hi_q() * (1 + pow2(-slack_bits)), 64);
    if (sgn(r) <= 0) r = pow2(-slack_bits);
    f.emplace_back(row.id + "-majorant-" + std::to_string(k),
                   KPoly::monomial(KElem(r * r), static_cast<size_t>(2 * v)) - n);
    l = l - KPoly::monomial(KElem(r * mags[k].count), static_cast<size_t>(v));
  }
  const Magnitude& major = mags.front();
  f.emplace_back(row.id + "-main", l);
  f.emplace_back(row.id + "-square", l * l - major.norm * KPoly(KElem(major.count * major.count)));
  return f;
}

struct Dominance {
  bool ok = false;
  Rational threshold;
  long slack_bits = 0;
  std::string reason;
  std::vector<TailCertificate> certs;
};

Dominance certify_family(const Family& fam) {
  Dominance out;
  out.threshold = 1;
  for (const auto& [id, poly] : fam) {
    TailResult t = certify_tail_positive(poly, Rational(1), id);
    if (!t.ok) {
      out.reason = id + ": " + t.reason;
      return out;
    }
    out.threshold = std::min(out.threshold, t.cert.threshold);
    out.certs.push_back(t.cert);
  }
  out.ok = true;
  return out;
}

constexpr long kSlackBits[] = {3, 6, 10, 20, 40};

Dominance certify_dominance(const Row& row) {
  const bool uses_slack = magnitudes(row.terms).size() > 1;
  Dominance last;
  for (long bits : kSlackBits) {
    last = certify_family(dominance_family(row, uses_slack ? bits : 0));
    last.slack_bits = uses_slack ? bits : 0;
    if (last.ok || !uses_slack) return last;
  }
  return last;
}

// Recomputes each certificate of the family and demands identical records.
bool replay_family(const Family& fam, const std::vector<TailCertificate>& certs, Rational& threshold,
                   std::string& why) {
  for (const auto& [id, poly] : fam) {
    auto it = std::find_if(certs.begin(), certs.end(), [&](const TailCertificate& c) { return c.id == id; });
    if (it == certs.end()) {
      why = "missing tail certificate " + id;
      return false;
    }
    if (!replay_tail(poly, *it)) {
      why = "tail certificate " + id + " does not replay";
      return false;
    }
    TailResult fresh = certify_tail_positive(poly, Rational(1), id);
    if (!fresh.ok || !(fresh.cert == *it)) {
      why = "tail certificate " + id + " differs from its recomputation";
      return false;
    }
    threshold = std::min(threshold, it->threshold);
  }
  return true;
}

KPolyMatrix symbolic_step(const ConeBasis& b, const Recurrence& rec) {
  const size_t d = b.d;
  long h = 0;
  for (const auto& row : b.t) {
    for (const auto& e : row) h = std::max(h, e.degree());
  }
  KPolyMatrix next(d, std::vector<KPoly>(d));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) next[i][j] = next_index(b.t[i][j], h);
  }
  const auto delta = static_cast<size_t>(rec.p.back().degree());
  const KPoly pd = rev(rec.p.back(), delta);
  KPolyMatrix a(d, std::vector<KPoly>(d));
  for (size_t i = 0; i + 1 < d; ++i) a[i][i + 1] = pd;
  for (size_t j = 0; j < d; ++j) a[d - 1][j] = rev(rec.p[j], delta);
  KPoly scale = det_poly(next) * pd;
  if (b.pair_sign < 0) scale = -scale;
  KPolyMatrix m = mul(mul(adjugate(next), a), b.t);
  for (auto& row : m) {
    for (auto& e : row) e = e * scale;
  }
  return m;
}

bool row_condition(const KMatrix& m, const std::vector<int>& conj) {
  const size_t d = m.size();
  Interval head = enclose(m[0][0], kPrec).re();
  for (size_t k = 1; k < d; ++k) head = head - magnitude(m[0][k]);
  if (!head.positive()) return false;
  std::vector<bool> done(d, false);
  for (size_t i = 1; i < d; ++i) {
    if (done[i]) continue;
    done[i] = true;
    done[static_cast<size_t>(conj[i])] = true;
    Interval s = head;
    for (size_t k = 0; k < d; ++k) s = s - magnitude(m[i][k]);
    if (!s.positive()) return false;
  }
  return true;
}

}  // namespace

std::string to_string(Membership m) {
  switch (m) {
    case Membership::In:
      return "in";
    case Membership::Out:
      return "out";
    default:
      return "boundary";
  }
}

Rational choose_epsilon(const SpectralReport& r) {
  size_t mu = 0;
  while (mu < r.order.size() && r.multiplicity_at(mu) == 1) ++mu;
  if (mu == r.order.size()) return Rational(0);
  if (mu == 0) throw UnsupportedBasis("dominant eigenvalue not simple");
  const size_t upper = mu == 1 ? 0 : 1;
  const KElem a = r.branch(upper).limit();
  const KElem b = r.branch(mu).limit();
  if (a.is_rational() && b.is_rational()) {
    const Rational gap = abs(a.to_rational()) - abs(b.to_rational());
    if (sgn(gap) <= 0) throw UnsupportedBasis("gap undetectable");
    return gap / 2;
  }
  const AlgebraicNumber la = make_algebraic(a), lb = make_algebraic(b);
  if (compare_modulus(la, lb) != Ordering::Greater) throw UnsupportedBasis("gap undetectable");
  for (Rational w = pow2(-16);; w *= pow2(-16)) {
    const Interval gap = refine(la, w).abs() - refine(lb, w).abs();
    if (gap.positive()) return round_down(gap.lo_q(), 32) / 2;
  }
}

ConeBasis build_basis(const SpectralReport& r, const Rational& epsilon) {
  ConeBasis b;
  b.d = r.dimension();
  b.epsilon = epsilon;
  const size_t d = b.d;
  b.truncation_order = r.branch(0).truncation_order;
  for (size_t k = 0; k < r.order.size(); ++k) {
    const PuiseuxBranch& br = r.branch(k);
    if (br.ramification != 1) throw UnsupportedBasis("ramified eigenvalue branch");
    b.truncation_order = std::min(b.truncation_order, br.truncation_order);
  }
  b.t.assign(d, std::vector<KPoly>());
  std::vector<std::pair<int, int>> cols;  // (rank, j)
  for (size_t k = 0; k < r.order.size(); ++k) {
    for (int j = 1; j <= r.multiplicity_at(k); ++j) cols.emplace_back(static_cast<int>(k), j);
  }
  if (cols.size() != d) throw std::logic_error("column count differs from the dimension");
  std::vector<int> rank_of(r.set.branches.size());
  for (size_t k = 0; k < r.order.size(); ++k) rank_of[static_cast<size_t>(r.order[k])] = static_cast<int>(k);
  int pairs = 0;
  for (size_t c = 0; c < d; ++c) {
    const auto [k, j] = cols[c];
    const PuiseuxBranch& br = r.branch(static_cast<size_t>(k));
    b.rank.push_back(k);
    b.jordan.push_back(j);
    const int ck = rank_of[static_cast<size_t>(br.conjugate)];
    const auto pos = std::find(cols.begin(), cols.end(), std::make_pair(ck, j)) - cols.begin();
    b.conjugate.push_back(static_cast<int>(pos));
    if (static_cast<size_t>(pos) > c) ++pairs;
    Rational scale = 1;
    for (int s = 1; s < j; ++s) scale *= epsilon;
    if (c == 0) scale = static_cast<long>(d);
    for (size_t l = 0; l < d; ++l) {
      const long e = static_cast<long>(l) - j + 1;
      const long coef = binom(static_cast<long>(l), j - 1);
      KPoly entry;
      if (e >= 0 && coef != 0 && sgn(scale) != 0) {
        entry = br.series.pow(static_cast<unsigned>(e)) * KPoly(KElem(scale * coef));
      }
      b.t[l].push_back(entry);
    }
  }
  b.pair_sign = pairs % 2 == 0 ? 1 : -1;
  b.det = det_poly(b.t);
  if (b.det.is_zero_poly()) throw UnsupportedBasis("degenerate basis");
  KPoly sq = b.det * b.det;
  if (b.pair_sign < 0) sq = -sq;
  TailResult t = certify_tail_positive(sq, Rational(1), "basis-determinant");
  long from = 1;
  if (t.ok) {
    b.certificates.push_back(t.cert);
    from = t.cert.index();
  } else {
    // leading coefficient of |det|^2 is positive, so only a domination failure lands here
    throw UnsupportedBasis("basis determinant not certified: " + t.reason);
  }
  while (from > 1 && !is_zero(at(b.det, from - 1))) --from;
  b.valid_from = from;
  return b;
}

KMatrix evaluate_basis(const ConeBasis& b, long n) {
  KMatrix m(b.d, std::vector<KElem>(b.d));
  for (size_t i = 0; i < b.d; ++i) {
    for (size_t j = 0; j < b.d; ++j) m[i][j] = at(b.t[i][j], n);
  }
  return m;
}

KMatrix step_matrix(const ConeBasis& b, const Recurrence& rec, long n) {
  const RatMatrix a = evaluate(companion(rec), Rational(n));
  const KMatrix tn = evaluate_basis(b, n);
  KMatrix at_n(b.d, std::vector<KElem>(b.d));
  for (size_t i = 0; i < b.d; ++i) {
    for (size_t j = 0; j < b.d; ++j) {
      KElem s;
      for (size_t k = 0; k < b.d; ++k) {
        if (sgn(a[i][k]) != 0) s += KElem(a[i][k]) * tn[k][j];
      }
      at_n[i][j] = s;
    }
  }
  return solve_matrix(evaluate_basis(b, n + 1), at_n);
}

std::vector<KElem> cone_coordinates(const std::vector<KElem>& u, long n, const ConeBasis& b) {
  if (u.size() != b.d) throw std::invalid_argument("state vector of the wrong size");
  KMatrix x = solve(evaluate_basis(b, n), u);
  std::vector<KElem> out;
  for (const auto& row : x) out.push_back(row[0]);
  return out;
}

std::vector<KElem> cone_coordinates(const std::vector<Rational>& u, long n, const ConeBasis& b) {
  return cone_coordinates(std::vector<KElem>(u.begin(), u.end()), n, b);
}

Membership membership_exact(const std::vector<KElem>& u, long n, const ConeBasis& b) {
  const std::vector<KElem> alpha = cone_coordinates(u, n, b);
  const int s1 = sign(alpha[0]);
  if (s1 < 0) return Membership::Out;
  bool boundary = s1 == 0;
  const KElem sq = alpha[0] * alpha[0];
  for (size_t c = 1; c < b.d; ++c) {
    const int s = sign(sq - alpha[c] * alpha[static_cast<size_t>(b.conjugate[c])]);
    if (s < 0) return Membership::Out;
    if (s == 0) boundary = true;
  }
  return boundary ? Membership::Boundary : Membership::In;
}

Membership membership(const std::vector<Rational>& u, long n, const ConeBasis& b) {
  return membership_exact(std::vector<KElem>(u.begin(), u.end()), n, b);
}

bool positivity_holds_at(const ConeBasis& b, long n) {
  const KMatrix t = evaluate_basis(b, n);
  for (size_t l = 0; l < b.d; ++l) {
    Interval s = enclose(t[l][0], kPrec).re();
    for (size_t c = 1; c < b.d; ++c) s = s - magnitude(t[l][c]);
    if (!s.positive()) return false;
  }
  return true;
}

bool inclusion_holds_at(const ConeBasis& b, const Recurrence& rec, long n) {
  if (n < b.valid_from) return false;
  return row_condition(step_matrix(b, rec, n), b.conjugate);
}

namespace {

std::vector<Row> positivity_rows(const ConeBasis& b) {
  std::vector<Row> rows;
  for (size_t l = 0; l < b.d; ++l) {
    Row row{"positivity-" + std::to_string(l), b.t[l][0], {}};
    for (size_t c = 1; c < b.d; ++c) {
      row.terms.push_back({b.t[l][c], b.t[l][static_cast<size_t>(b.conjugate[c])], b.real_column(c)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Row> inclusion_rows(const ConeBasis& b, const Recurrence& rec) {
  const KPolyMatrix m = symbolic_step(b, rec);
  const size_t d = b.d;
  auto term = [&](size_t i, size_t k) {
    const auto ci = static_cast<size_t>(b.conjugate[i]);
    const auto ck = static_cast<size_t>(b.conjugate[k]);
    return Term{m[i][k], m[ci][ck], ci == i && ck == k};
  };
  std::vector<Term> head;
  for (size_t k = 1; k < d; ++k) head.push_back(term(0, k));
  std::vector<Row> rows{{"inclusion-row-0", m[0][0], head}};
  std::vector<bool> done(d, false);
  for (size_t i = 1; i < d; ++i) {
    if (done[i]) continue;
    done[i] = true;
    done[static_cast<size_t>(b.conjugate[i])] = true;
    Row row{"inclusion-row-" + std::to_string(i), m[0][0], head};
    for (size_t k = 0; k < d; ++k) row.terms.push_back(term(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Holds>
IndexResult certify_rows(const std::vector<Row>& rows, long floor, long scan_limit, const std::string& what,
                         Holds holds) {
  IndexResult out;
  Rational threshold = 1;
  for (const auto& row : rows) {
    Dominance dm = certify_dominance(row);
    if (!dm.ok) {
      out.reason = row.id + " not certified (" + dm.reason + ")";
      return out;
    }
    threshold = std::min(threshold, dm.threshold);
    out.slack_bits.push_back(dm.slack_bits);
    out.certificates.insert(out.certificates.end(), dm.certs.begin(), dm.certs.end());
  }
  long n = std::max(index_for(threshold), floor);
  if (n > scan_limit) {
    out.reason = what + " index beyond the scan limit";
    return out;
  }
  while (n > floor && holds(n - 1)) --n;
  out.ok = true;
  out.index = n;
  return out;
}

// Rebuilds every family with the recorded slack, requires identical tail
// certificates, then checks the claimed index is the least one by direct
// evaluation and samples the range beyond the certified tail.
template <class Holds>
bool replay_rows(const std::vector<Row>& rows, const IndexResult& claimed, long floor, Holds holds,
                 std::string& why) {
  if (!claimed.ok) {
    why = "index not established";
    return false;
  }
  if (claimed.slack_bits.size() != rows.size()) {
    why = "slack recipe has the wrong length";
    return false;
  }
  Rational threshold = 1;
  std::vector<TailCertificate> expected;
  for (size_t k = 0; k < rows.size(); ++k) {
    const bool uses_slack = magnitudes(rows[k].terms).size() > 1;
    const long bits = claimed.slack_bits[k];
    if (uses_slack ? std::find(std::begin(kSlackBits), std::end(kSlackBits), bits) == std::end(kSlackBits)
                   : bits != 0) {
      why = rows[k].id + ": slack not in the admissible set";
      return false;
    }
    // a smaller slack that also certifies would have been chosen
    Dominance fresh = certify_dominance(rows[k]);
    if (!fresh.ok || fresh.slack_bits != bits) {
      why = rows[k].id + ": slack differs from the recomputed choice";
      return false;
    }
    const Family fam = dominance_family(rows[k], bits);
    if (!replay_family(fam, claimed.certificates, threshold, why)) return false;
    expected.insert(expected.end(), fresh.certs.begin(), fresh.certs.end());
  }
  if (expected != claimed.certificates) {
    why = "certificate list differs from the recomputation";
    return false;
  }
  const long tail = std::max(index_for(threshold), floor);
  if (claimed.index < floor || claimed.index > tail) {
    why = "index outside the certified range";
    return false;
  }
  for (long n = claimed.index; n < tail; ++n) {
    if (!holds(n)) {
      why = "condition fails at n = " + std::to_string(n);
      return false;
    }
  }
  if (claimed.index > floor && holds(claimed.index - 1)) {
    why = "index is not minimal";
    return false;
  }
  for (long n = tail; n < tail + 20; ++n) {
    if (!holds(n)) {
      why = "sampled check fails at n = " + std::to_string(n);
      return false;
    }
  }
  return true;
}

}  // namespace

IndexResult positivity_index(const ConeBasis& b, long scan_limit) {
  return certify_rows(positivity_rows(b), 1, scan_limit, "positivity",
                      [&](long n) { return positivity_holds_at(b, n); });
}

IndexResult inclusion_index(const ConeBasis& b, const Recurrence& rec, long scan_limit) {
  return certify_rows(inclusion_rows(b, rec), b.valid_from, scan_limit, "inclusion",
                      [&](long n) { return inclusion_holds_at(b, rec, n); });
}

bool replay_positivity(const ConeBasis& b, const IndexResult& claimed, std::string& why) {
  return replay_rows(positivity_rows(b), claimed, 1, [&](long n) { return positivity_holds_at(b, n); }, why);
}

bool replay_inclusion(const ConeBasis& b, const Recurrence& rec, const IndexResult& claimed, std::string& why) {
  return replay_rows(inclusion_rows(b, rec), claimed, b.valid_from,
                     [&](long n) { return inclusion_holds_at(b, rec, n); }, why);
}

bool replay_basis(const ConeBasis& b, std::string& why) {
  KPoly sq = b.det * b.det;
  if (b.pair_sign < 0) sq = -sq;
  if (b.certificates.size() != 1) {
    why = "basis needs exactly one determinant certificate";
    return false;
  }
  Rational threshold = 1;
  if (!replay_family({{"basis-determinant", sq}}, b.certificates, threshold, why)) return false;
  long from = b.certificates[0].index();
  while (from > 1 && !is_zero(at(b.det, from - 1))) --from;
  if (from != b.valid_from) {
    why = "determinant validity index differs";
    return false;
  }
  return true;
}

std::vector<std::pair<Rational, Rational>> sample_coefficients(const ConeBasis& b, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> u(-1000, 1000);
  std::vector<std::pair<Rational, Rational>> alpha(b.d);
  alpha[0] = {Rational(1), Rational(0)};
  for (size_t c = 1; c < b.d; ++c) {
    const auto p = static_cast<size_t>(b.conjugate[c]);
    if (p < c) {
      alpha[c] = {alpha[p].first, -alpha[p].second};
      continue;
    }
    Rational re(u(rng), 1000), im(p == c ? 0 : u(rng), 1000);
    re.canonicalize();
    im.canonicalize();
    // scale into the unit disk; the boundary itself is included occasionally
    const Rational n2 = re * re + im * im;
    if (n2 > 1) {
      const Rational s = Rational(1) / (abs(re) + abs(im));
      re *= s;
      im *= s;
    }
    alpha[c] = {re, im};
  }
  return alpha;
}

std::vector<ComplexInterval> apply_matrix(const KMatrix& m, const std::vector<std::pair<Rational, Rational>>& alpha) {
  std::vector<ComplexInterval> out;
  for (const auto& row : m) {
    ComplexInterval s(kPrec);
    for (size_t c = 0; c < row.size(); ++c) {
      if (is_zero(row[c])) continue;
      const ComplexInterval a(Interval(alpha[c].first, kPrec), Interval(alpha[c].second, kPrec));
      s = s + enclose(row[c], kPrec) * a;
    }
    out.push_back(s);
  }
  return out;
}

bool in_coefficient_set(const std::vector<ComplexInterval>& beta) {
  const Interval& b1 = beta[0].re();
  if (!b1.positive()) return false;
  for (size_t k = 1; k < beta.size(); ++k) {
    if (!(b1 - beta[k].abs()).nonnegative()) return false;
  }
  return true;
}

std::string cone_csv(const ConeBasis& b, long n_from, long n_to, const std::vector<std::vector<Rational>>& states) {
  std::ostringstream os;
  os << "n,role";
  for (size_t l = 0; l < b.d; ++l) os << ",x" << l;
  os << "\n";
  auto fmt = [](const Interval& x) {
    std::ostringstream s;
    s << std::setprecision(17) << x.mid_d();
    return s.str();
  };
  for (long n = n_from; n <= n_to; ++n) {
    const KMatrix t = evaluate_basis(b, n);
    for (size_t c = 0; c < b.d; ++c) {
      os << n << ",V_" << b.rank[c] + 1 << "_" << b.jordan[c];
      for (size_t l = 0; l < b.d; ++l) {
        const ComplexInterval z = enclose(t[l][c], 64);
        os << "," << fmt(z.re());
        if (!b.real_column(c)) os << (z.im().mid_d() < 0 ? "" : "+") << fmt(z.im()) << "i";
      }
      os << "\n";
    }
    const auto idx = static_cast<size_t>(n - n_from);
    if (idx < states.size()) {
      os << n << ",U";
      for (const auto& x : states[idx]) os << "," << fmt(Interval(x, 64));
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace conecert
