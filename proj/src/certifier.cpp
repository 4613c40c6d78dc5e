#include "conecert/certifier.hpp"

#include <algorithm>
#include <sstream>

namespace conecert {

namespace {

int decimal_digits(long bits) { return static_cast<int>(std::clamp(bits * 3 / 10, 6L, 25L)); }

std::string decimal(const Rational& q, int digits) {
  Float f(q, 256);
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, f.get());
  return buf.data();
}

std::string approx(const AlgebraicNumber& a, int digits) {
  if (a.is_rational()) return decimal(a.rational_value(), digits);
  const ComplexInterval z = refine(a, pow2(-4 * digits - 16));
  std::string s = decimal(z.re().mid_q(), digits);
  if (a.is_real()) return s;
  const Rational im = z.im().mid_q();
  return s + (sgn(im) < 0 ? " - " : " + ") + decimal(abs(im), digits) + "i";
}

bool same_box(const Box& a, const Box& b) {
  return a.re_lo == b.re_lo && a.re_hi == b.re_hi && a.im_lo == b.im_lo && a.im_hi == b.im_hi;
}

bool same(const AlgebraicRecord& a, const AlgebraicRecord& b) {
  return a.rep == b.rep && a.minimal_polynomial == b.minimal_polynomial && same_box(a.box, b.box) &&
         a.approx == b.approx;
}

bool same(const BranchRecord& a, const BranchRecord& b) {
  if (a.id != b.id || a.rank != b.rank || a.multiplicity != b.multiplicity || a.conjugate != b.conjugate ||
      a.ramification != b.ramification || a.truncation_order != b.truncation_order || a.exact != b.exact ||
      a.series.size() != b.series.size()) {
    return false;
  }
  for (size_t k = 0; k < a.series.size(); ++k) {
    if (!same(a.series[k], b.series[k])) return false;
  }
  return true;
}

bool same(const FieldRecord& a, const FieldRecord& b) {
  if (a.present != b.present) return false;
  return !a.present || (a.minimal_polynomial == b.minimal_polynomial && same_box(a.box, b.box) && a.approx == b.approx);
}

bool same(const CertificateDiagnostics& a, const CertificateDiagnostics& b) {
  if (a.contraction_from != b.contraction_from || a.margin_samples.size() != b.margin_samples.size()) return false;
  for (size_t k = 0; k < a.margin_samples.size(); ++k) {
    if (a.margin_samples[k].n != b.margin_samples[k].n || a.margin_samples[k].value != b.margin_samples[k].value) {
      return false;
    }
  }
  return a.contraction == b.contraction && a.distinct_limits == b.distinct_limits &&
         a.step_below_margin == b.step_below_margin && a.report == b.report;
}

AlgebraicRecord record(const KElem& a, int digits) {
  AlgebraicRecord r;
  r.rep = a.rep().coeffs();
  const AlgebraicNumber an = make_algebraic(a);
  r.minimal_polynomial = an.minimal_polynomial();
  r.box = an.isolating_box();
  r.approx = approx(an, digits);
  return r;
}

FieldRecord field_record(const Field& k, int digits) {
  FieldRecord f;
  if (!k) return f;
  f.present = true;
  f.minimal_polynomial = k->minpoly();
  const AlgebraicNumber g = make_algebraic(k->generator());
  f.box = g.isolating_box();
  f.approx = approx(g, digits);
  return f;
}

std::vector<BranchRecord> branch_records(const SpectralReport& r, int digits) {
  std::vector<BranchRecord> out;
  for (size_t j = 0; j < r.set.branches.size(); ++j) {
    const PuiseuxBranch& b = r.set.branches[j];
    BranchRecord br;
    br.id = static_cast<int>(j);
    br.rank = static_cast<int>(std::find(r.order.begin(), r.order.end(), static_cast<int>(j)) - r.order.begin());
    br.multiplicity = r.multiplicity[j];
    br.conjugate = b.conjugate;
    br.ramification = b.ramification;
    br.truncation_order = b.truncation_order;
    br.exact = b.exact;
    for (const auto& c : b.series.coeffs()) br.series.push_back(record(c, digits));
    out.push_back(std::move(br));
  }
  return out;
}

CertificateDiagnostics diagnostics(const SpectralReport& r, long bits) {
  CertificateDiagnostics d;
  const ContractionResult c = check_contraction(r);
  d.contraction_from = c.holds ? c.holds_from : 0;
  if (c.holds) {
    const long h = std::max(1L, c.holds_from);
    for (long f : {1L, 2L, 5L, 10L, 100L, 1000L}) {
      d.margin_samples.push_back({h * f, contraction_margin(r, h * f).to_string(decimal_digits(bits))});
    }
  }
  const TheoremConditions t = check_theorem_conditions(r);
  d.contraction = t.contraction;
  d.distinct_limits = t.distinct_limits;
  d.step_below_margin = t.step_below_margin;
  d.report = t.diagnostics;
  return d;
}

std::vector<Rational> state(const std::vector<Rational>& u, long n, size_t d) {
  return {u.begin() + n, u.begin() + n + static_cast<long>(d)};
}

struct Attempt {
  bool ok = false;
  bool escalate = false;
  std::string reason;
  Rational order;
  SpectralReport report;
  Rational epsilon;
  ConeBasis basis;
  IndexResult positivity;
  IndexResult inclusion;
  long start = 0;
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Attempt attempt_at(const Recurrence& rec, const Rational& order, const SpectralConfig& cfg, long scan_limit) {
  Attempt a;
  a.order = order;
  try {
    a.report = analyze_spectrum(companion(rec), order, cfg);
  } catch (const OrderCapError& e) {
    a.reason = std::string("expansion order cap: ") + e.what();
    return a;
  } catch (const std::invalid_argument& e) {
    a.reason = std::string("spectrum: ") + e.what();
    return a;
  }
  const ContractionResult c = check_contraction(a.report);
  if (!c.holds) {
    a.reason = "contraction: " + c.reason;
    a.escalate = starts_with(c.reason, "truncation") || starts_with(c.reason, "dominance not certified");
    return a;
  }
  try {
    a.epsilon = choose_epsilon(a.report);
    a.basis = build_basis(a.report, a.epsilon);
  } catch (const UnsupportedBasis& e) {
    a.reason = std::string("basis: ") + e.what();
    a.escalate = starts_with(e.what(), "degenerate basis") || starts_with(e.what(), "basis determinant");
    return a;
  }
  a.positivity = positivity_index(a.basis, scan_limit);
  if (!a.positivity.ok) {
    a.reason = "positivity: " + a.positivity.reason;
    a.escalate = true;
    return a;
  }
  a.inclusion = inclusion_index(a.basis, rec, scan_limit);
  if (!a.inclusion.ok) {
    a.reason = "inclusion: " + a.inclusion.reason;
    a.escalate = true;
    return a;
  }
  a.start = std::max({a.inclusion.index, a.positivity.index, a.basis.valid_from});
  a.ok = true;
  return a;
}

// Unrolls u up to `count` terms and returns the index of the first negative
// term among the new ones, or -1.
long extend_checked(const Recurrence& rec, std::vector<Rational>& u, size_t count) {
  const size_t from = u.size();
  unroll_more(rec, u, count);
  for (size_t k = from; k < u.size(); ++k) {
    if (sgn(u[k]) < 0) return static_cast<long>(k);
  }
  return -1;
}

Verdict not_positive(const std::vector<Rational>& u, long k) {
  Verdict v;
  v.outcome = Outcome::NotPositive;
  v.witness_index = k;
  v.witness_value = u[static_cast<size_t>(k)];
  v.diagnostics = "u_" + std::to_string(k) + " = " + to_string(v.witness_value);
  return v;
}

SpectralConfig config(const Rational& max_order) {
  SpectralConfig cfg;
  cfg.puiseux.max_order = max_order;
  return cfg;
}

// ------------------------------------------------------------------ verify

struct Rejection {
  std::string why;
};

[[noreturn]] void reject(const std::string& why) { throw Rejection{why}; }

void require(bool ok, const std::string& why) {
  if (!ok) reject(why);
}

Field rebuild_field(const FieldRecord& f) {
  if (!f.present) return nullptr;
  const UniPoly& m = f.minimal_polynomial;
  require(m.degree() >= 2 && m.lead() == 1, "field polynomial must be monic of degree >= 2");
  for (const auto& c : m.coeffs()) require(c.get_den() == 1, "field polynomial must be integral");
  const auto factors = factor_over_q(m);
  require(factors.size() == 1 && factors[0].degree() == m.degree(), "field polynomial is reducible");
  AlgebraicNumber g;
  try {
    g = make_algebraic(m, f.box);
  } catch (const std::invalid_argument&) {
    reject("field box does not isolate a root");
  }
  return NumberField::create(m, g.disk());
}

KElem rebuild_element(const AlgebraicRecord& r, const Field& k) {
  const UniPoly rep(r.rep);
  require(rep.coeffs() == r.rep, "coefficient representation not normalized");
  if (rep.degree() <= 0) return KElem(rep[0]);
  require(k != nullptr && rep.degree() < k->degree(), "coefficient outside the field");
  return KElem(k, rep);
}

// conj(a) == b, exactly
bool conjugates(const KElem& a, const KElem& b) {
  if (a.is_rational() || b.is_rational()) return a == b;
  const AlgebraicNumber x = make_algebraic(a);
  const Box bx = x.isolating_box();
  const Box flipped{bx.re_lo, bx.re_hi, -bx.im_hi, -bx.im_lo};
  return make_algebraic(x.minimal_polynomial(), flipped) == make_algebraic(b);
}

// The report described by a certificate, checked against the recurrence
// independently of any recomputation of the expansion.
SpectralReport parse_report(const Recurrence& rec, const PositivityCertificate& cert) {
  SpectralReport r;
  r.q = reversed_char_poly(companion(rec));
  r.distinct = BiPoly(UniPoly(Rational(1)));
  for (const auto& sf : squarefree_decomposition(r.q)) {
    if (sf.multiplicity < 1) continue;
    r.factors.push_back(sf);
    r.distinct = r.distinct * sf.factor;
  }
  r.set.source = r.distinct;
  r.set.field = rebuild_field(cert.field);
  const size_t nb = cert.branches.size();
  require(static_cast<long>(nb) == r.distinct.degree(), "branch count differs from the number of eigenvalues");
  r.order.assign(nb, -1);
  r.multiplicity.assign(nb, 0);
  for (size_t j = 0; j < nb; ++j) {
    const BranchRecord& br = cert.branches[j];
    require(br.id == static_cast<int>(j), "branch ids must be 0, 1, ...");
    require(br.ramification == 1, "ramified branches are not supported");
    require(br.rank >= 0 && br.rank < static_cast<int>(nb) && r.order[static_cast<size_t>(br.rank)] == -1,
            "branch ranks must be a permutation");
    require(br.conjugate >= 0 && br.conjugate < static_cast<int>(nb), "conjugate index out of range");
    require(br.multiplicity >= 1, "multiplicity must be positive");
    require(br.truncation_order >= cert.truncation_order, "branch truncated below the certificate order");
    r.order[static_cast<size_t>(br.rank)] = br.id;
    r.multiplicity[j] = br.multiplicity;
    PuiseuxBranch b;
    b.id = br.id;
    b.ramification = 1;
    b.truncation_order = br.truncation_order;
    b.exact = br.exact;
    b.conjugate = br.conjugate;
    std::vector<KElem> cs;
    for (const auto& c : br.series) cs.push_back(rebuild_element(c, r.set.field));
    b.series = KPoly(cs);
    require(b.series.size() == br.series.size(), "series has trailing zeros");
    r.set.branches.push_back(std::move(b));
  }
  for (size_t j = 0; j < nb; ++j) {
    const PuiseuxBranch& b = r.set.branches[j];
    const Rational res = residual_order(r.distinct, b);
    const bool vanishes = res == Rational(1L << 30);
    require(vanishes == b.exact, "exactness flag of branch " + std::to_string(j) + " is wrong");
    require(res > b.truncation_order, "branch " + std::to_string(j) + " is not a root to its order");
    require(roots_beyond(r.distinct, b, b.truncation_order) == 1,
            "branch " + std::to_string(j) + " does not single out one eigenvalue");
    for (size_t i = 0; i < j; ++i) {
      const PuiseuxBranch& a = r.set.branches[i];
      const Rational t = std::min(a.truncation_order, b.truncation_order);
      bool differ = false;
      for (long k = 0; Rational(k) <= t; ++k) {
        if (a.series[static_cast<size_t>(k)] != b.series[static_cast<size_t>(k)]) differ = true;
      }
      require(differ, "branches " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
    const PuiseuxBranch& c = r.set.branches[static_cast<size_t>(b.conjugate)];
    require(c.conjugate == b.id, "conjugation is not an involution");
    require(c.series.size() == b.series.size(), "conjugate branches differ in length");
    for (size_t k = 0; k < b.series.size(); ++k) {
      require(conjugates(b.series[k], c.series[k]), "branch " + std::to_string(j) + " has a wrong conjugate");
    }
  }
  size_t pos = 0;
  for (int s : cert.grouping.sizes) {
    require(s >= 1 && pos + static_cast<size_t>(s) <= nb, "grouping does not cover the branches");
    r.groups.emplace_back(r.order.begin() + static_cast<long>(pos), r.order.begin() + static_cast<long>(pos + s));
    pos += static_cast<size_t>(s);
  }
  require(pos == nb, "grouping does not cover the branches");
  r.grouping = cert.grouping;
  return r;
}

void check_index_record(const IndexResult& r, const std::string& what) {
  require(r.ok, what + " index missing");
  require(r.index >= 1, what + " index must be positive");
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Positive:
      return "positive";
    case Outcome::NotPositive:
      return "not positive";
    default:
      return "inconclusive";
  }
}

long PositivityCertificate::start_index() const {
  return std::max({inclusion.index, positivity.index, basis_valid_from});
}

Verdict decide_positivity(const Recurrence& rec, const CertifierOptions& opts) {
  validate(rec);
  if (sgn(opts.truncation_order) <= 0 || opts.truncation_order > opts.max_expansion_order) {
    throw InputError("truncation order must lie in (0, max expansion order]");
  }
  const size_t d = rec.order();
  std::vector<Rational> u = rec.initial;
  for (auto& x : u) x.canonicalize();
  for (size_t k = 0; k < d; ++k) {
    if (sgn(u[k]) < 0) return not_positive(u, static_cast<long>(k));
  }

  const SpectralConfig cfg = config(opts.max_expansion_order);
  std::optional<Attempt> best;
  std::string reason;
  for (Rational o = opts.truncation_order; o <= opts.max_expansion_order; o *= 2) {
    Attempt a = attempt_at(rec, o, cfg, opts.max_unroll);
    if (a.ok) {
      // one more doubling often lowers the start index considerably
      const bool refined = best.has_value();
      if (!best || a.start < best->start) best = std::move(a);
      if (refined) break;
      continue;
    }
    if (best) break;
    reason = a.reason;
    if (!a.escalate) break;
  }

  auto fallback = [&](const std::string& why, const std::string& diag) {
    const long k = extend_checked(rec, u, static_cast<size_t>(std::max<long>(opts.max_unroll, static_cast<long>(d))));
    if (k >= 0) return not_positive(u, k);
    Verdict v;
    v.outcome = Outcome::Inconclusive;
    v.reason = why;
    v.diagnostics = diag;
    return v;
  };
  if (!best) return fallback(reason, "no negative term among u_0 .. u_" + std::to_string(opts.max_unroll - 1));

  const Attempt& a = *best;
  long n0 = -1;
  for (long n = a.start; n <= opts.max_unroll; ++n) {
    const long k = extend_checked(rec, u, static_cast<size_t>(n) + d);
    if (k >= 0) return not_positive(u, k);
    if (membership(state(u, n, d), n, a.basis) == Membership::In) {
      n0 = n;
      break;
    }
  }
  if (n0 < 0) {
    return fallback("no entry index within the unroll cap",
                    "U_n stayed outside K_n for n in [" + std::to_string(a.start) + ", " +
                        std::to_string(opts.max_unroll) +
                        "]; the initial values may lie on the exceptional hyperplane where U_n / |U_n| does not "
                        "tend to the dominant eigenvector");
  }

  PositivityCertificate cert;
  cert.recurrence = rec;
  for (auto& x : cert.recurrence.initial) x.canonicalize();
  cert.max_expansion_order = opts.max_expansion_order;
  cert.precision_bits = opts.precision_bits;
  cert.truncation_order = a.order;
  const int digits = decimal_digits(opts.precision_bits);
  cert.field = field_record(a.report.set.field, digits);
  cert.branches = branch_records(a.report, digits);
  cert.grouping = a.report.grouping;
  cert.epsilon = a.epsilon;
  cert.basis_valid_from = a.basis.valid_from;
  cert.basis_certificates = a.basis.certificates;
  cert.positivity = a.positivity;
  cert.inclusion = a.inclusion;
  cert.entry_index = n0;
  cert.initial_segment.assign(u.begin(), u.begin() + n0);
  cert.diagnostics = diagnostics(a.report, opts.precision_bits);

  Verdict v;
  v.outcome = Outcome::Positive;
  std::ostringstream os;
  os << "truncation order " << to_string(a.order) << ", epsilon " << to_string(a.epsilon) << "\n"
     << "basis valid from n = " << a.basis.valid_from << ", positivity index " << a.positivity.index
     << ", inclusion index " << a.inclusion.index << ", entry index " << n0 << "\n"
     << cert.diagnostics.report;
  v.diagnostics = os.str();
  v.certificate = std::move(cert);
  return v;
}

ConeBasis certificate_basis(const PositivityCertificate& cert) {
  SpectralReport r = parse_report(cert.recurrence, cert);
  return build_basis(r, cert.epsilon);
}

VerificationReport verify_certificate(const Recurrence& rec, const PositivityCertificate& cert) {
  VerificationReport out;
  std::ostringstream log;
  try {
    validate(rec);
    require(cert.recurrence.p == rec.p, "certificate is for different coefficients");
    std::vector<Rational> init = rec.initial;
    for (auto& x : init) x.canonicalize();
    require(cert.recurrence.initial == init, "certificate is for different initial values");
    require(sgn(cert.truncation_order) > 0 && cert.truncation_order <= cert.max_expansion_order,
            "truncation order out of range");
    require(cert.precision_bits >= 16 && cert.precision_bits <= 4096, "precision out of range");
    const size_t d = rec.order();
    const int digits = decimal_digits(cert.precision_bits);

    SpectralReport r = parse_report(rec, cert);
    log << "branches are roots of the reversed characteristic polynomial to their orders\n";

    // the same analysis from scratch must give the recorded data
    const SpectralReport fresh =
        analyze_spectrum(companion(rec), cert.truncation_order, config(cert.max_expansion_order));
    require(same(field_record(fresh.set.field, digits), cert.field), "field differs from the recomputation");
    const auto branches = branch_records(fresh, digits);
    require(branches.size() == cert.branches.size(), "branch count differs from the recomputation");
    for (size_t j = 0; j < branches.size(); ++j) {
      require(same(branches[j], cert.branches[j]), "branch " + std::to_string(j) + " differs from the recomputation");
    }
    require(fresh.grouping.sizes == cert.grouping.sizes && fresh.grouping.paths == cert.grouping.paths,
            "modulus grouping differs from the recomputation");
    log << "spectral data match a fresh expansion at order " << to_string(cert.truncation_order) << "\n";

    require(check_contraction(r).holds, "contraction condition not certified");
    require(choose_epsilon(r) == cert.epsilon, "epsilon differs from the rule");
    ConeBasis b = build_basis(r, cert.epsilon);
    require(b.certificates == cert.basis_certificates, "basis determinant certificate differs");
    require(b.valid_from == cert.basis_valid_from, "basis validity index differs");
    std::string why;
    require(replay_basis(b, why), "basis: " + why);

    check_index_record(cert.positivity, "positivity");
    check_index_record(cert.inclusion, "inclusion");
    require(replay_positivity(b, cert.positivity, why), "positivity: " + why);
    require(replay_inclusion(b, rec, cert.inclusion, why), "inclusion: " + why);
    log << "positivity index " << cert.positivity.index << " and inclusion index " << cert.inclusion.index
        << " replayed\n";

    const long start = cert.start_index();
    const long n0 = cert.entry_index;
    require(n0 >= start, "entry index below max(N, N_pos, basis validity)");
    require(static_cast<long>(cert.initial_segment.size()) == n0, "initial segment has the wrong length");
    const std::vector<Rational> u = unroll(rec, static_cast<size_t>(n0) + d);
    for (long k = 0; k < n0; ++k) {
      require(cert.initial_segment[static_cast<size_t>(k)] == u[static_cast<size_t>(k)],
              "initial segment differs from unrolling at k = " + std::to_string(k));
      require(sgn(u[static_cast<size_t>(k)]) >= 0, "negative initial value at k = " + std::to_string(k));
    }
    require(membership(state(u, n0, d), n0, b) == Membership::In, "U_n0 is not in K_n0");
    for (long n = start; n < n0; ++n) {
      require(membership(state(u, n, d), n, b) != Membership::In, "entry index is not the first one");
    }
    log << "U_" << n0 << " lies in K_" << n0 << " and u_0 .. u_" << n0 - 1 << " are nonnegative\n";

    require(same(diagnostics(r, cert.precision_bits), cert.diagnostics), "diagnostics differ from the recomputation");
    out.accepted = true;
    log << "accepted";
  } catch (const Rejection& e) {
    log << "rejected: " << e.why;
  } catch (const std::exception& e) {
    log << "rejected: " << e.what();
  }
  out.report = log.str();
  return out;
}

std::string describe_spectrum(const Recurrence& rec, const CertifierOptions& opts) {
  const SpectralReport r = analyze_spectrum(companion(rec), opts.truncation_order, config(opts.max_expansion_order));
  std::ostringstream os;
  os << "reversed characteristic polynomial: " << to_string(r.q) << "\n";
  os << "modulus groups:";
  for (size_t g = 0; g < r.grouping.sizes.size(); ++g) {
    os << " " << r.grouping.sizes[g] << " (" << r.grouping.paths[g] << ")";
  }
  os << "\n";
  if (r.set.field) os << "field: " << r.set.field->to_string() << "\n";
  for (size_t k = 0; k < r.order.size(); ++k) {
    const PuiseuxBranch& b = r.branch(k);
    os << "lambda_" << k + 1 << " = " << b.to_string() << "  [" << (b.is_real() ? "real" : "complex")
       << ", multiplicity " << r.multiplicity_at(k) << ", limit "
       << approx(make_algebraic(b.limit()), decimal_digits(opts.precision_bits)) << "]\n";
  }
  const TheoremConditions t = check_theorem_conditions(r);
  os << "contraction: " << to_string(t.contraction) << "\n"
     << "distinct limits: " << to_string(t.distinct_limits) << "\n"
     << "step below margin: " << to_string(t.step_below_margin) << "\n"
     << t.diagnostics;
  return os.str();
}

}  // namespace conecert
