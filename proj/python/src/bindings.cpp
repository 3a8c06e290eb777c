#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl2r/qsl2r.hpp"

namespace py = pybind11;
using namespace qsl2r;

namespace {

py::dict report_dict(const ResidualReport& r) {
    py::dict d;
    d["relation"] = r.relation;
    d["residual"] = r.max_abs_residual;
    d["row"] = r.row_ktype;
    d["col"] = r.col_ktype;
    d["interior_size"] = r.interior_size;
    d["pass"] = r.pass;
    return d;
}

py::object json_loads(const std::string& s) { return py::module_::import("json").attr("loads")(s); }

Algebra algebra_of(const std::string& s) {
    if (s == "qreduced") return Algebra::QReduced;
    if (s == "groupoid") return Algebra::Groupoid;
    throw DomainError("algebra is 'qreduced' or 'groupoid'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "truncated matrix models of the deformed SL(2,R) family";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<FamilyError>(m, "FamilyError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("qint", &qint, py::arg("n"), py::arg("q"));
    m.def("eta", &eta, py::arg("q"), py::arg("t"));

    py::class_<TruncatedModule>(m, "TruncatedModule")
        .def_property_readonly("family", [](const TruncatedModule& x) { return family_name(x.family); })
        .def_property_readonly("q", [](const TruncatedModule& x) { return x.base.q; })
        .def_property_readonly("t", [](const TruncatedModule& x) { return x.base.t; })
        .def_readonly("epsilon", &TruncatedModule::epsilon)
        .def_readonly("lam", &TruncatedModule::lambda)
        .def_readonly("N", &TruncatedModule::N)
        .def_readonly("window", &TruncatedModule::window)
        .def_readonly("weights", &TruncatedModule::weights)
        .def_readonly("theta", &TruncatedModule::theta)
        .def_readonly("X", &TruncatedModule::X)
        .def_readonly("Z", &TruncatedModule::Z)
        .def_readonly("Xstar", &TruncatedModule::Xstar)
        .def("index", &TruncatedModule::index)
        .def("to_json", [](const TruncatedModule& x) { return module_to_json(x); })
        .def("__len__", &TruncatedModule::size);

    m.def(
        "build_principal_q",
        [](double q, double t, int epsilon, cplx lam, int N) {
            return build_principal_q(make_point(q, t), epsilon, lam, N);
        },
        py::arg("q"), py::arg("t"), py::arg("epsilon"), py::arg("lam"), py::arg("N") = 60);
    m.def(
        "build_discrete_q",
        [](double q, double t, int sigma, int n, int sign, int N) {
            return build_discrete_q(make_point(q, t), sigma, n, sign, N);
        },
        py::arg("q"), py::arg("t"), py::arg("sigma"), py::arg("n"), py::arg("sign"), py::arg("N") = 60);
    m.def("build_classical_principal", &build_classical_principal, py::arg("lam"), py::arg("epsilon"),
          py::arg("N") = 60, py::arg("t") = 1.0);
    m.def("build_motion", &build_motion, py::arg("lam"), py::arg("epsilon"), py::arg("N") = 60);
    m.def("build_groupoid", &build_groupoid, py::arg("lam"), py::arg("epsilon"), py::arg("N") = 60,
          py::arg("q") = 2.0);
    m.def("detect_submodules", &detect_submodules, py::arg("module"), py::arg("tol") = 1e-12);

    m.def(
        "check_relations",
        [](const TruncatedModule& x, double tol, int margin) {
            const bool lim = x.family == Family::ClassicalPrincipal || x.family == Family::Motion ||
                             x.family == Family::Groupoid;
            const auto r = lim ? check_relations_limit(x, tol > 0 ? tol : 1e-12, margin)
                               : check_relations_uq(x, tol > 0 ? tol : 1e-10, margin);
            py::list out;
            for (const auto& e : r) out.append(report_dict(e));
            return out;
        },
        py::arg("module"), py::arg("tol") = 0.0, py::arg("margin") = 4);
    m.def(
        "check_unitarity",
        [](const TruncatedModule& x, double tol, int margin) { return report_dict(check_unitarity(x, tol, margin)); },
        py::arg("module"), py::arg("tol") = 1e-10, py::arg("margin") = 4);
    m.def("discrete_weight_discrepancy", &discrete_weight_discrepancy, py::arg("qt"), py::arg("n"), py::arg("sign"),
          py::arg("N") = 60);

    m.def(
        "convergence",
        [](const std::string& study, double fixed, int epsilon, double mu, std::vector<double> steps, int N) {
            const auto lam = AnalyticLambda::power_tau(cplx(0.0, mu));
            const auto r = study == "t" ? convergence_in_t(fixed, epsilon, lam, steps, N)
                                        : convergence_in_q(fixed, epsilon, lam, steps, N);
            py::dict d;
            d["study"] = r.study;
            d["steps"] = r.steps;
            d["errors"] = r.errors;
            d["slope"] = r.slope;
            d["exact"] = r.exact;
            d["pass"] = r.pass;
            return d;
        },
        py::arg("study"), py::arg("fixed"), py::arg("epsilon"), py::arg("mu"),
        py::arg("steps") = std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4}, py::arg("N") = 16);

    m.def(
        "enumerate_spectrum",
        [](const std::string& algebra, double q, int res, int n_max) {
            std::vector<std::string> out;
            const double t = algebra == "groupoid" ? 0.0 : 1.0;
            for (const auto& x : enumerate_spectrum(algebra_of(algebra), q, t, res, n_max)) out.push_back(x.label());
            return out;
        },
        py::arg("algebra"), py::arg("q"), py::arg("res"), py::arg("n_max"));
    m.def(
        "closure_graph",
        [](const std::string& algebra, double q, int n_max, int res) {
            const double t = algebra == "groupoid" ? 0.0 : 1.0;
            return json_loads(closure_graph(algebra_of(algebra), q, t, n_max, res).to_json());
        },
        py::arg("algebra"), py::arg("q"), py::arg("n_max"), py::arg("res") = 721);

    m.def(
        "J_suite",
        [](double q, int n_max, double tol) {
            py::list out;
            for (const auto& r : J_suite(q, n_max, tol))
                out.append(py::dict(py::arg("section") = r.section, py::arg("pairs") = r.pairs,
                                    py::arg("max_residual") = r.max_residual, py::arg("pass") = r.pass));
            return out;
        },
        py::arg("q"), py::arg("n_max"), py::arg("tol") = 1e-12);

    m.def(
        "mu_table", [](double q, int res, int n_max) { return json_loads(mu_table(q, res, n_max).to_json()); },
        py::arg("q"), py::arg("res"), py::arg("n_max"));
    m.def(
        "verify_mu",
        [](double q, int n_max, int res) {
            const auto r = verify_mu(q, n_max, res);
            py::dict checks;
            for (const auto& c : r.checks) checks[py::str(c.id)] = c.pass;
            py::dict d;
            d["checks"] = checks;
            d["witness"] = py::make_tuple(r.witness_char.label(), r.witness_source.label());
            d["seconds"] = r.seconds;
            d["pass"] = r.pass();
            return d;
        },
        py::arg("q"), py::arg("n_max"), py::arg("res") = 721);

    m.def("wm", &wm, py::arg("m"));
    m.def(
        "k_summary", [](double q, int n_max, int res) { return json_loads(k_summary(q, n_max, res).to_json()); },
        py::arg("q"), py::arg("n_max"), py::arg("res") = 37);
}
