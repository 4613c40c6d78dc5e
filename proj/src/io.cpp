#include "conecert/io.hpp"

#include <json.hpp>

namespace conecert {

namespace {

using json = nlohmann::ordered_json;

Rational rat(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw FormatError("expected a rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::vector<Rational> rats(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rat(x));
  return out;
}

json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json to_json(const UniPoly& p) { return to_json(p.coeffs()); }

long integer(const json& j) {
  if (!j.is_number_integer()) throw FormatError("expected an integer, got " + j.dump());
  return j.get<long>();
}

std::string text(const json& j) {
  if (!j.is_string()) throw FormatError("expected a string, got " + j.dump());
  return j.get<std::string>();
}

json to_json(const Box& b) {
  return {{"re", {to_string(b.re_lo), to_string(b.re_hi)}}, {"im", {to_string(b.im_lo), to_string(b.im_hi)}}};
}

Box box_from(const json& j) {
  const auto re = rats(j.at("re")), im = rats(j.at("im"));
  if (re.size() != 2 || im.size() != 2) throw FormatError("a box needs two corners");
  return {re[0], re[1], im[0], im[1]};
}

json to_json(const TailCertificate& c) {
  return {{"id", c.id},
          {"valuation", c.valuation},
          {"delta", to_string(c.delta)},
          {"threshold", to_string(c.threshold)},
          {"pieces", c.pieces}};
}

TailCertificate tail_from(const json& j) {
  TailCertificate c;
  c.id = text(j.at("id"));
  c.valuation = integer(j.at("valuation"));
  c.delta = rat(j.at("delta"));
  c.threshold = rat(j.at("threshold"));
  c.pieces = integer(j.at("pieces"));
  return c;
}

json to_json(const std::vector<TailCertificate>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

std::vector<TailCertificate> tails_from(const json& j) {
  if (!j.is_array()) throw FormatError("expected a certificate list");
  std::vector<TailCertificate> out;
  for (const auto& x : j) out.push_back(tail_from(x));
  return out;
}

json to_json(const IndexResult& r) {
  return {{"index", r.index}, {"slack_bits", r.slack_bits}, {"certificates", to_json(r.certificates)}};
}

IndexResult index_from(const json& j) {
  IndexResult r;
  r.ok = true;
  r.index = integer(j.at("index"));
  if (!j.at("slack_bits").is_array()) throw FormatError("slack_bits must be an array");
  for (const auto& x : j.at("slack_bits")) r.slack_bits.push_back(integer(x));
  r.certificates = tails_from(j.at("certificates"));
  return r;
}

json to_json(const AlgebraicRecord& a) {
  return {{"rep", to_json(a.rep)},
          {"minimal_polynomial", to_json(a.minimal_polynomial)},
          {"box", to_json(a.box)},
          {"approx", a.approx}};
}

AlgebraicRecord algebraic_from(const json& j) {
  AlgebraicRecord a;
  a.rep = rats(j.at("rep"));
  a.minimal_polynomial = UniPoly(rats(j.at("minimal_polynomial")));
  a.box = box_from(j.at("box"));
  a.approx = text(j.at("approx"));
  return a;
}

Tri tri_from(const json& j) {
  const std::string s = text(j);
  if (s == "true") return Tri::True;
  if (s == "false") return Tri::False;
  if (s == "undetermined") return Tri::Undetermined;
  throw FormatError("bad condition value " + s);
}

json recurrence_json(const Recurrence& r) {
  json cs = json::array();
  for (const auto& p : r.p) cs.push_back(to_json(p));
  return {{"order", r.order()}, {"coefficients", cs}, {"initial", to_json(r.initial)}};
}

Recurrence recurrence_from(const json& j) {
  Recurrence r;
  const json& cs = j.at("coefficients");
  if (!cs.is_array()) throw FormatError("coefficients must be an array of arrays");
  for (const auto& p : cs) r.p.emplace_back(rats(p));
  r.initial = rats(j.at("initial"));
  for (auto& x : r.initial) x.canonicalize();
  if (j.contains("order")) {
    const long d = integer(j.at("order"));
    if (d < 1 || static_cast<size_t>(d) + 1 != r.p.size()) {
      throw FormatError("order " + std::to_string(d) + " does not match " + std::to_string(r.p.size()) +
                        " coefficient polynomials");
    }
  }
  return r;
}

template <class F>
auto guarded(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Problem parse_problem(const std::string& s) {
  return guarded([&] {
    const json j = json::parse(s);
    if (!j.is_object()) throw FormatError("problem must be a JSON object");
    Problem p;
    p.recurrence = recurrence_from(j);
    if (j.contains("options")) {
      const json& o = j.at("options");
      if (o.contains("truncation_order")) p.options.truncation_order = rat(o.at("truncation_order"));
      if (o.contains("max_expansion_order")) p.options.max_expansion_order = rat(o.at("max_expansion_order"));
      if (o.contains("max_unroll")) p.options.max_unroll = integer(o.at("max_unroll"));
      if (o.contains("precision_bits")) p.options.precision_bits = integer(o.at("precision_bits"));
    }
    validate(p.recurrence);
    return p;
  });
}

std::string problem_to_json(const Problem& p) {
  json j = recurrence_json(p.recurrence);
  j["options"] = {{"truncation_order", to_string(p.options.truncation_order)},
                  {"max_expansion_order", to_string(p.options.max_expansion_order)},
                  {"max_unroll", p.options.max_unroll},
                  {"precision_bits", p.options.precision_bits}};
  return j.dump(2);
}

std::string certificate_to_json(const PositivityCertificate& c) {
  json j;
  j["format"] = "conecert-certificate/1";
  j["recurrence"] = recurrence_json(c.recurrence);
  j["settings"] = {{"truncation_order", to_string(c.truncation_order)},
                   {"max_expansion_order", to_string(c.max_expansion_order)},
                   {"precision_bits", c.precision_bits}};
  if (c.field.present) {
    j["field"] = {{"minimal_polynomial", to_json(c.field.minimal_polynomial)},
                  {"box", to_json(c.field.box)},
                  {"approx", c.field.approx}};
  } else {
    j["field"] = nullptr;
  }
  json bs = json::array();
  for (const auto& b : c.branches) {
    json series = json::array();
    for (const auto& a : b.series) series.push_back(to_json(a));
    bs.push_back({{"id", b.id},
                  {"rank", b.rank},
                  {"multiplicity", b.multiplicity},
                  {"conjugate", b.conjugate},
                  {"ramification", b.ramification},
                  {"truncation_order", to_string(b.truncation_order)},
                  {"exact", b.exact},
                  {"series", series}});
  }
  j["branches"] = bs;
  j["grouping"] = {{"sizes", c.grouping.sizes}, {"paths", c.grouping.paths}};
  j["epsilon"] = to_string(c.epsilon);
  j["basis"] = {{"valid_from", c.basis_valid_from}, {"certificates", to_json(c.basis_certificates)}};
  j["positivity"] = to_json(c.positivity);
  j["inclusion"] = to_json(c.inclusion);
  j["entry_index"] = c.entry_index;
  j["initial_segment"] = to_json(c.initial_segment);
  json samples = json::array();
  for (const auto& s : c.diagnostics.margin_samples) samples.push_back({{"n", s.n}, {"value", s.value}});
  j["diagnostics"] = {{"contraction_from", c.diagnostics.contraction_from},
                      {"margin_samples", samples},
                      {"conditions",
                       {{"contraction", to_string(c.diagnostics.contraction)},
                        {"distinct_limits", to_string(c.diagnostics.distinct_limits)},
                        {"step_below_margin", to_string(c.diagnostics.step_below_margin)}}},
                      {"report", c.diagnostics.report}};
  return j.dump(2);
}

PositivityCertificate certificate_from_json(const std::string& s) {
  return guarded([&] {
    const json j = json::parse(s);
    if (text(j.at("format")) != "conecert-certificate/1") throw FormatError("unknown certificate format");
    PositivityCertificate c;
    c.recurrence = recurrence_from(j.at("recurrence"));
    const json& st = j.at("settings");
    c.truncation_order = rat(st.at("truncation_order"));
    c.max_expansion_order = rat(st.at("max_expansion_order"));
    c.precision_bits = integer(st.at("precision_bits"));
    const json& f = j.at("field");
    if (!f.is_null()) {
      c.field.present = true;
      c.field.minimal_polynomial = UniPoly(rats(f.at("minimal_polynomial")));
      c.field.box = box_from(f.at("box"));
      c.field.approx = text(f.at("approx"));
    }
    if (!j.at("branches").is_array()) throw FormatError("branches must be an array");
    for (const auto& b : j.at("branches")) {
      BranchRecord br;
      br.id = static_cast<int>(integer(b.at("id")));
      br.rank = static_cast<int>(integer(b.at("rank")));
      br.multiplicity = static_cast<int>(integer(b.at("multiplicity")));
      br.conjugate = static_cast<int>(integer(b.at("conjugate")));
      br.ramification = integer(b.at("ramification"));
      br.truncation_order = rat(b.at("truncation_order"));
      if (!b.at("exact").is_boolean()) throw FormatError("exact must be a boolean");
      br.exact = b.at("exact").get<bool>();
      if (!b.at("series").is_array()) throw FormatError("series must be an array");
      for (const auto& a : b.at("series")) br.series.push_back(algebraic_from(a));
      c.branches.push_back(std::move(br));
    }
    const json& g = j.at("grouping");
    for (const auto& x : g.at("sizes")) c.grouping.sizes.push_back(static_cast<int>(integer(x)));
    for (const auto& x : g.at("paths")) c.grouping.paths.push_back(text(x));
    c.epsilon = rat(j.at("epsilon"));
    c.basis_valid_from = integer(j.at("basis").at("valid_from"));
    c.basis_certificates = tails_from(j.at("basis").at("certificates"));
    c.positivity = index_from(j.at("positivity"));
    c.inclusion = index_from(j.at("inclusion"));
    c.entry_index = integer(j.at("entry_index"));
    c.initial_segment = rats(j.at("initial_segment"));
    const json& d = j.at("diagnostics");
    c.diagnostics.contraction_from = integer(d.at("contraction_from"));
    for (const auto& x : d.at("margin_samples")) {
      c.diagnostics.margin_samples.push_back({integer(x.at("n")), text(x.at("value"))});
    }
    const json& cond = d.at("conditions");
    c.diagnostics.contraction = tri_from(cond.at("contraction"));
    c.diagnostics.distinct_limits = tri_from(cond.at("distinct_limits"));
    c.diagnostics.step_below_margin = tri_from(cond.at("step_below_margin"));
    c.diagnostics.report = text(d.at("report"));
    return c;
  });
}

VerificationReport verify_certificate_json(const Recurrence& rec, const std::string& text_in) {
  PositivityCertificate c;
  try {
    c = certificate_from_json(text_in);
  } catch (const std::exception& e) {
    return {false, std::string("rejected: malformed certificate: ") + e.what()};
  }
  return verify_certificate(rec, c);
}

std::string verdict_to_json(const Verdict& v) {
  json j;
  j["verdict"] = to_string(v.outcome);
  if (v.outcome == Outcome::NotPositive) {
    j["witness"] = {{"index", v.witness_index}, {"value", to_string(v.witness_value)}};
  }
  if (v.outcome == Outcome::Positive && v.certificate) {
    const auto& c = *v.certificate;
    j["truncation_order"] = to_string(c.truncation_order);
    j["epsilon"] = to_string(c.epsilon);
    j["basis_valid_from"] = c.basis_valid_from;
    j["positivity_index"] = c.positivity.index;
    j["inclusion_index"] = c.inclusion.index;
    j["entry_index"] = c.entry_index;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["diagnostics"] = v.diagnostics;
  return j.dump(2);
}

}  // namespace conecert
