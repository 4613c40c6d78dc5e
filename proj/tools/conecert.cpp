// conecert: prove, verify and inspect positivity of P-finite recurrences.
//
// Exit codes: 0 positive / certificate accepted, 1 not positive / certificate
// rejected, 2 inconclusive, 3 input or format error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "conecert/certifier.hpp"
#include "conecert/cone.hpp"
#include "conecert/io.hpp"

using namespace conecert;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInconclusive = 2;
constexpr int kInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << data;
}

struct Overrides {
  std::string truncation_order;
  std::string max_expansion_order;
  long max_unroll = -1;
  long precision_bits = -1;

  void apply(CertifierOptions& o) const {
    if (!truncation_order.empty()) o.truncation_order = parse_rational(truncation_order);
    if (!max_expansion_order.empty()) o.max_expansion_order = parse_rational(max_expansion_order);
    if (max_unroll >= 0) o.max_unroll = max_unroll;
    if (precision_bits >= 0) o.precision_bits = precision_bits;
  }
};

void add_option_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--truncation-order", ov.truncation_order, "starting truncation order of the eigenvalue series");
  cmd->add_option("--max-expansion-order", ov.max_expansion_order, "largest truncation order tried");
  cmd->add_option("--max-unroll", ov.max_unroll, "cap on the entry index scan and on unrolling");
  cmd->add_option("--precision-bits", ov.precision_bits, "precision of decimal renderings");
}

int prove(const std::string& problem_path, const Overrides& ov, const std::string& output, const std::string& csv,
          bool quiet) {
  Problem p = parse_problem(read_file(problem_path));
  ov.apply(p.options);
  const Verdict v = decide_positivity(p.recurrence, p.options);
  std::ostream& info = output.empty() ? std::cerr : std::cout;
  if (!quiet) {
    info << "verdict: " << to_string(v.outcome) << "\n";
    if (v.outcome == Outcome::NotPositive) {
      info << "witness: u_" << v.witness_index << " = " << to_string(v.witness_value) << "\n";
    }
    if (!v.reason.empty()) info << "reason: " << v.reason << "\n";
    if (!v.diagnostics.empty() && v.outcome != Outcome::NotPositive) {
      info << v.diagnostics << (v.diagnostics.back() == '\n' ? "" : "\n");
    }
  } else if (v.outcome == Outcome::NotPositive) {
    info << "witness: u_" << v.witness_index << " = " << to_string(v.witness_value) << "\n";
  }
  if (v.outcome == Outcome::Positive) {
    const PositivityCertificate& c = *v.certificate;
    const std::string js = certificate_to_json(c) + "\n";
    if (output.empty()) {
      std::cout << js;
    } else {
      write_file(output, js);
    }
    if (!csv.empty()) {
      const ConeBasis b = certificate_basis(c);
      const long from = c.start_index(), to = c.entry_index + 10;
      const auto u = unroll(p.recurrence, static_cast<size_t>(to) + p.recurrence.order());
      std::vector<std::vector<Rational>> states;
      for (long n = from; n <= to; ++n) {
        states.emplace_back(u.begin() + n, u.begin() + n + static_cast<long>(p.recurrence.order()));
      }
      write_file(csv, cone_csv(b, from, to, states));
    }
    return kPositive;
  }
  return v.outcome == Outcome::NotPositive ? kNegative : kInconclusive;
}

int verify(const std::string& problem_path, const std::string& cert_path, bool quiet) {
  const Problem p = parse_problem(read_file(problem_path));
  PositivityCertificate c;
  try {
    c = certificate_from_json(read_file(cert_path));
  } catch (const InputError& e) {
    std::cerr << "rejected: malformed certificate: " << e.what() << "\n";
    return kInputError;
  }
  const VerificationReport r = verify_certificate(p.recurrence, c);
  if (!quiet || !r.accepted) std::cout << r.report << "\n";
  return r.accepted ? kPositive : kNegative;
}

int spectrum(const std::string& problem_path, const Overrides& ov) {
  Problem p = parse_problem(read_file(problem_path));
  ov.apply(p.options);
  std::cout << describe_spectrum(p.recurrence, p.options);
  return kPositive;
}

int unroll_terms(const std::string& problem_path, long count) {
  const Problem p = parse_problem(read_file(problem_path));
  if (count < 0) throw InputError("--count must be nonnegative");
  for (const auto& x : unroll(p.recurrence, static_cast<size_t>(count))) std::cout << to_string(x) << "\n";
  return kPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity certificates for P-finite recurrences via cone sequences"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "only print the essentials");

  Overrides ov;
  std::string problem, cert, output, csv;
  long count = 10;

  CLI::App* prove_cmd = app.add_subcommand("prove", "decide positivity and emit a certificate");
  prove_cmd->add_option("problem", problem, "problem JSON")->required();
  prove_cmd->add_option("-o,--output", output, "certificate path (stdout when omitted)");
  prove_cmd->add_option("--dump-cones", csv, "write cone generators and states as CSV");
  prove_cmd->add_flag("-q,--quiet", quiet, "only print the essentials");
  add_option_flags(prove_cmd, ov);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a certificate independently");
  verify_cmd->add_option("problem", problem, "problem JSON")->required();
  verify_cmd->add_option("certificate", cert, "certificate JSON")->required();
  verify_cmd->add_flag("-q,--quiet", quiet, "only print the essentials");

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalue branches, grouping and conditions");
  spectrum_cmd->add_option("problem", problem, "problem JSON")->required();
  add_option_flags(spectrum_cmd, ov);

  CLI::App* unroll_cmd = app.add_subcommand("unroll", "print the first terms exactly");
  unroll_cmd->add_option("problem", problem, "problem JSON")->required();
  unroll_cmd->add_option("--count", count, "number of terms")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*prove_cmd) return prove(problem, ov, output, csv, quiet);
    if (*verify_cmd) return verify(problem, cert, quiet);
    if (*spectrum_cmd) return spectrum(problem, ov);
    return unroll_terms(problem, count);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconclusive;
  }
}
