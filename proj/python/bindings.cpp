#include "ncsurf/classifier.hpp"
#include "ncsurf/cli.hpp"
#include "ncsurf/emit.hpp"
#include "ncsurf/errors.hpp"
#include "ncsurf/geometry.hpp"
#include "ncsurf/parser.hpp"
#include "ncsurf/representations.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ncsurf;

namespace {

AlgebraContext context_of(const std::string& R) { return AlgebraContext{parse_exact_rational(R)}; }

py::dict residual_dict(const ResidualReport& r) {
    py::dict d;
    for (const auto& [name, v] : r.entries) d[py::str(name)] = v;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Normal forms, representations and classification for the algebra A(R)";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<NotDivisible>(m, "NotDivisible", base.ptr());
    py::register_exception<ContextMismatch>(m, "ContextMismatch", base.ptr());
    py::register_exception<UnknownGenerator>(m, "UnknownGenerator", base.ptr());
    py::register_exception<InvalidSpec>(m, "InvalidSpec", base.ptr());
    auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ChartDomainError>(m, "ChartDomainError", domain.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    // algebra
    m.def(
        "reduce", [](const std::string& expr, const std::string& R) { return parse_expr(expr, context_of(R)).to_string(); },
        py::arg("expr"), py::arg("R") = "0", "Normal form of an expression; R is an exact decimal or rational string.");
    m.def(
        "is_zero", [](const std::string& expr, const std::string& R) { return parse_expr(expr, context_of(R)).is_zero(); },
        py::arg("expr"), py::arg("R") = "0");
    m.def(
        "poisson",
        [](const std::string& f, const std::string& g, const std::string& R) {
            const auto ctx = context_of(R);
            return nf_poisson(parse_expr(f, ctx), parse_expr(g, ctx)).to_string();
        },
        py::arg("f"), py::arg("g"), py::arg("R") = "0");
    m.def(
        "poisson_at",
        [](const std::string& f, const std::string& g, const std::string& R, double p, double q) {
            const auto ctx = context_of(R);
            return nf_poisson(parse_expr(f, ctx), parse_expr(g, ctx)).eval_chart(p, q);
        },
        py::arg("f"), py::arg("g"), py::arg("R"), py::arg("p"), py::arg("q"));

    // geometry
    m.def("topology", [](double R) { return topology_name(topology_of(R)); }, py::arg("R"));
    m.def("slice_curve", &slice_curve, py::arg("R"), py::arg("samples") = 64);
    m.def(
        "darboux_point",
        [](double p, double q, double R) {
            const Point3 pt = darboux_point(DarbouxPoint{p, q}, R);
            return py::make_tuple(pt.x, pt.y, pt.z);
        },
        py::arg("p"), py::arg("q"), py::arg("R"));

    // representations
    py::enum_<Family>(m, "Family")
        .value("S2Min", Family::S2Min)
        .value("S2NonMin", Family::S2NonMin)
        .value("T2Finite", Family::T2Finite)
        .value("T2Window", Family::T2Window)
        .value("FuzzySphere", Family::FuzzySphere)
        .value("NCTorusFinite", Family::NCTorusFinite);

    py::class_<ReprSpec>(m, "ReprSpec")
        .def(py::init([](const std::string& family, double R, int n, double alpha, double beta_prime,
                         std::optional<int> k, std::optional<std::complex<double>> nu, std::optional<int> M) {
                 ReprSpec s;
                 s.family = parse_family(family);
                 s.R = R;
                 s.n = n;
                 s.alpha = alpha;
                 s.beta_prime = beta_prime;
                 s.k = k;
                 s.nu = nu;
                 s.M = M;
                 return s;
             }),
             py::arg("family"), py::arg("R"), py::arg("n"), py::arg("alpha") = 0.0, py::arg("beta_prime") = 0.0,
             py::arg("k") = py::none(), py::arg("nu") = py::none(), py::arg("M") = py::none())
        .def_property_readonly("family", [](const ReprSpec& s) { return family_name(s.family); })
        .def_readwrite("R", &ReprSpec::R)
        .def_readwrite("n", &ReprSpec::n)
        .def_readwrite("alpha", &ReprSpec::alpha)
        .def_readwrite("beta_prime", &ReprSpec::beta_prime)
        .def_readwrite("k", &ReprSpec::k)
        .def_readwrite("nu", &ReprSpec::nu)
        .def_readwrite("M", &ReprSpec::M);

    py::class_<ReprMatrices>(m, "ReprMatrices")
        .def_readonly("spec", &ReprMatrices::spec)
        .def_readonly("eps", &ReprMatrices::eps)
        .def_readonly("U", &ReprMatrices::U)
        .def_readonly("Ap", &ReprMatrices::Ap)
        .def_readonly("Am", &ReprMatrices::Am)
        .def_readonly("Z", &ReprMatrices::Z)
        .def_readonly("boundary", &ReprMatrices::boundary)
        .def_property_readonly("dim", &ReprMatrices::dim)
        .def("to_json", &rep_to_json)
        .def_static("from_json", &rep_from_json);

    m.def("build", &build, py::arg("spec"));
    m.def("build_fuzzy_sphere", &build_fuzzy_sphere, py::arg("n"));
    m.def(
        "build_nc_torus",
        [](int n, int k, double beta, std::complex<double> nu) {
            const TorusPair t = build_nc_torus(n, k, beta, nu);
            return py::make_tuple(t.U, t.V, t.q);
        },
        py::arg("n"), py::arg("k"), py::arg("beta") = 0.0, py::arg("nu") = std::complex<double>(1.0));
    m.def("verify_relations", [](const ReprMatrices& r) { return residual_dict(verify_relations(r)); });
    m.def("check_irreducible", &check_irreducible);
    m.def(
        "rep_evaluate",
        [](const std::string& expr, const std::string& R, const ReprMatrices& r) {
            return rep_evaluate(parse_expr(expr, context_of(R)), r);
        },
        py::arg("expr"), py::arg("R"), py::arg("rep"));

    // classifier
    py::class_<SolutionRecord>(m, "SolutionRecord")
        .def_property_readonly("family", [](const SolutionRecord& s) { return family_name(s.family); })
        .def_readonly("R", &SolutionRecord::R)
        .def_readonly("n", &SolutionRecord::n)
        .def_readonly("alpha", &SolutionRecord::alpha)
        .def_readonly("beta_prime", &SolutionRecord::beta_prime)
        .def_property_readonly("beta", [](const SolutionRecord& s) { return s.beta_prime + s.alpha / 2; })
        .def_readonly("k", &SolutionRecord::k)
        .def_readonly("branch", &SolutionRecord::branch)
        .def_readonly("exists", &SolutionRecord::exists)
        .def_readonly("reject_reason", &SolutionRecord::reject_reason)
        .def_readonly("failing_index", &SolutionRecord::failing_index)
        .def("to_spec", &SolutionRecord::to_spec);

    py::class_<BetaWindow>(m, "BetaWindow")
        .def_property_readonly("kind", [](const BetaWindow& w) { return window_kind_name(w.kind); })
        .def_readonly("lower", &BetaWindow::lower)
        .def_readonly("upper", &BetaWindow::upper)
        .def_readonly("delta", &BetaWindow::delta)
        .def_readonly("threshold", &BetaWindow::threshold);

    m.def("r_hat", &r_hat, py::arg("alpha"), py::arg("n"));
    m.def("solve_minimal_s2", &solve_minimal_s2, py::arg("R"), py::arg("n"));
    m.def("enumerate_s2_nonminimal", &enumerate_s2_nonminimal, py::arg("R"), py::arg("n"),
          py::arg("grid") = kDefaultGrid);
    m.def("t2_beta_window", &t2_beta_window, py::arg("R"), py::arg("n"), py::arg("k"));
    m.def("t2_inequality_holds", &t2_inequality_holds, py::arg("R"), py::arg("n"), py::arg("k"),
          py::arg("beta_prime"));
    m.def(
        "classify_region",
        [](double R, double eps) {
            const RegionClass c = classify_region(R, eps);
            py::dict d;
            d["label"] = region_name(c.label);
            d["R_eps"] = c.R_eps;
            d["minimal_s2"] = c.flags.minimal_s2;
            d["nonminimal_s2"] = c.flags.nonminimal_s2;
            d["finite_t2"] = c.flags.finite_t2;
            d["semi_infinite_t2"] = c.flags.semi_infinite_t2;
            d["infinite_t2"] = c.flags.infinite_t2;
            return d;
        },
        py::arg("R"), py::arg("eps"));

    // emitters
    m.def(
        "sweep_csv",
        [](int n, double lo, double hi, int steps, int grid) { return sweep_to_csv(sweep_regions(n, RGrid{lo, hi, steps}, grid)); },
        py::arg("n"), py::arg("lo"), py::arg("hi"), py::arg("steps"), py::arg("grid") = kDefaultGrid);
    m.def("diagram_svg", &diagram_svg, py::arg("spec"));

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli_main(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line tool in-process; returns (exit code, stdout, stderr).");
}
