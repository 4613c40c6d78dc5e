// Python bindings. Problems and certificates cross the boundary as JSON text;
// the package wrapper in conecert/__init__.py handles dicts and paths.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conecert/certifier.hpp"
#include "conecert/io.hpp"

namespace py = pybind11;
using namespace conecert;

namespace {

py::dict prove(const std::string& problem) {
  const Problem p = parse_problem(problem);
  Verdict v;
  {
    py::gil_scoped_release release;
    v = decide_positivity(p.recurrence, p.options);
  }
  py::dict out;
  out["verdict"] = to_string(v.outcome);
  out["certificate"] = v.certificate ? py::object(py::str(certificate_to_json(*v.certificate))) : py::none();
  if (v.outcome == Outcome::NotPositive) {
    out["witness_index"] = v.witness_index;
    out["witness_value"] = to_string(v.witness_value);
  }
  out["reason"] = v.reason;
  out["diagnostics"] = v.diagnostics;
  return out;
}

py::tuple verify(const std::string& problem, const std::string& certificate) {
  const Problem p = parse_problem(problem);
  VerificationReport r;
  {
    py::gil_scoped_release release;
    r = verify_certificate_json(p.recurrence, certificate);
  }
  return py::make_tuple(r.accepted, r.report);
}

std::vector<std::string> unroll_terms(const std::string& problem, size_t count) {
  std::vector<std::string> out;
  for (const auto& x : unroll(parse_problem(problem).recurrence, count)) out.push_back(to_string(x));
  return out;
}

std::string spectrum(const std::string& problem) {
  const Problem p = parse_problem(problem);
  return describe_spectrum(p.recurrence, p.options);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Positivity certificates for P-finite recurrences";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  m.def("prove", &prove, py::arg("problem"));
  m.def("verify", &verify, py::arg("problem"), py::arg("certificate"));
  m.def("unroll", &unroll_terms, py::arg("problem"), py::arg("count"));
  m.def("spectrum", &spectrum, py::arg("problem"));
}
