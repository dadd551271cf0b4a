// Python module exposing the main operations: coefficient evaluation,
// divisibility certificates, integer factorization, the Weil representation
// relation report, the divisor-sum lift, and a generic pass-through to the
// command-line entry point.

#include "hz/cli.hpp"
#include "hz/coeffs.hpp"
#include "hz/divisibility.hpp"
#include "hz/lattice.hpp"
#include "hz/lift.hpp"
#include "hz/qexp.hpp"
#include "hz/weilrep.hpp"
#include "hz/weyl.hpp"

#include "json.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hz;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

WeylChamber chamber_from(const std::string& y1, const std::string& y2,
                         const std::string& m, long D) {
    return chamber_of(Rat(y1), Rat(y2), Rat(m), D);
}

py::dict coefficient_py(const std::string& nu_text, long D, long k,
                        const std::string& m, const std::string& y1,
                        const std::string& y2, long alpha_cap,
                        long precision_bits) {
    set_precision_bits(unsigned(precision_bits));
    const QuadRat nu = parse_nu(nu_text, D);
    const CoefficientResult r =
        omega_coefficient(nu, Rat(m), k, chamber_from(y1, y2, m, D), alpha_cap);
    py::dict d;
    d["nu"] = format_quadrat(r.nu, D);
    d["branch"] = branch_name(r.branch);
    d["exact"] = r.exact;
    if (r.exact) {
        d["value"] = r.exact_value.str();
        d["error"] = "0";
    } else {
        d["value"] = r.value.str(24);
        d["error"] = r.error.str(6);
        d["is_integer"] = r.is_integer;
        if (r.is_integer) d["rounded"] = r.rounded.str();
        d["tail_alpha"] = r.tail_alpha;
    }
    return d;
}

py::object certificate_py(const std::string& nu_text, const std::string& value,
                          long D, long k) {
    return json_to_py(
        certificate_to_json(certificate(parse_nu(nu_text, D), Int(value), D, k), D));
}

py::dict factorize_py(const std::string& n) {
    const Factorization f = factorize(Int(n));
    py::list factors;
    for (const auto& [p, e] : f.factors) factors.append(py::make_tuple(p.str(), e));
    py::dict d;
    d["sign"] = f.sign;
    d["factors"] = factors;
    d["formatted"] = format_factorization(f);
    return d;
}

py::object weilrep_check_py(long D, double tol, long precision_bits) {
    set_precision_bits(unsigned(precision_bits));
    bool pass = false;
    return json_to_py(weilrep_report(D, tol, pass));
}

py::object lift_py(const py::object& expansion, const std::vector<std::string>& targets,
                   const std::string& y1, const std::string& y2, long D,
                   const std::string& m) {
    const std::string text =
        py::isinstance<py::str>(expansion)
            ? expansion.cast<std::string>()
            : py::module_::import("json").attr("dumps")(expansion).cast<std::string>();
    auto G = discriminant_group(hmf_gram(D));
    const VVQExpansion F = qexp_from_json(nlohmann::json::parse(text), G);
    std::vector<QuadRat> nus;
    for (const std::string& t : targets) nus.push_back(parse_nu(t, D));
    return json_to_py(lift_to_json(lift_coefficients(F, chamber_from(y1, y2, m, D), nus)));
}

py::tuple run_py(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::istringstream in;
    const int code = run_cli(args, out, err, in);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_hzcoeff, m) {
    m.doc() = "Fourier coefficients of meromorphic Hilbert modular forms";

    m.def("coefficient", &coefficient_py, py::arg("nu"), py::arg("D") = 5,
          py::arg("k") = 4, py::arg("m") = "-1/5", py::arg("y1") = "2",
          py::arg("y2") = "1", py::arg("alpha_cap") = 10000,
          py::arg("precision_bits") = 192,
          "coefficient of omega at nu ('x+y*sqrt(D)' or 's,t' coordinates)");

    m.def("certificate", &certificate_py, py::arg("nu"), py::arg("value"),
          py::arg("D") = 5, py::arg("k") = 4,
          "divisibility certificate for an integer coefficient value");

    m.def("factorize", &factorize_py, py::arg("n"),
          "sign and prime factorization of an integer below 2^64 in magnitude");

    m.def("weilrep_check", &weilrep_check_py, py::arg("D"), py::arg("tol") = 1e-12,
          py::arg("precision_bits") = 192,
          "deviations of the Weil representation relations");

    m.def("lift", &lift_py, py::arg("expansion"), py::arg("targets"),
          py::arg("y1") = "2", py::arg("y2") = "1", py::arg("D") = 5,
          py::arg("m") = "-1/5",
          "divisor-sum lift of a formal expansion (json text or dict)");

    m.def("run", &run_py, py::arg("args"),
          "invoke the command-line interface; returns (exit_code, stdout, stderr)");
}
