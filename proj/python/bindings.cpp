#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "kmirror/cli.hpp"
#include "kmirror/koszul.hpp"

namespace py = pybind11;
using namespace kmirror;

namespace {

cli::run_config make_config(const rational& energy, int arity, int degree, int base_degree,
                            std::optional<double> eval_t, bool floating, bool inject) {
    cli::run_config c;
    c.energy_cutoff = energy;
    c.arity = arity;
    c.degree = degree;
    c.base_degree = base_degree;
    c.eval_t = eval_t;
    c.arithmetic = floating ? cli::mode::floating : cli::mode::exact;
    c.inject_sign_error = inject;
    c.validate();
    return c;
}

rational parse_rational(const std::string& s) { return cli::parse_point(s, 1).front(); }

std::string run(const std::string& command, const std::string& polytope, const std::vector<std::string>& points,
                const std::string& alpha, const std::string& energy, int arity, int degree, int base_degree,
                std::optional<double> eval_t, bool floating, bool inject) {
    const toric_data T = parse_polytope_text(polytope);
    const auto cfg = make_config(parse_rational(energy), arity, degree, base_degree, eval_t, floating, inject);
    cli::report r;
    if (command == "potential") {
        r = cli::cmd_potential(T, cfg);
    } else if (command == "check") {
        r = cli::cmd_check(T, cfg);
    } else if (command == "complete") {
        r = cli::cmd_complete(T, cfg);
    } else if (command == "mf") {
        if (points.size() != 1) throw input_error("mf takes exactly one point");
        auto a = alpha.empty() ? std::vector<rational>(T.n, 0) : cli::parse_point(alpha, T.n);
        r = cli::cmd_mf(T, cli::parse_point(points.front(), T.n), a, cfg);
    } else if (command == "hf") {
        std::vector<std::vector<rational>> ps;
        for (const auto& p : points) ps.push_back(cli::parse_point(p, T.n));
        if (ps.empty()) ps.push_back(T.basepoint);
        r = cli::cmd_hf(T, ps, cfg);
    } else {
        throw input_error("unknown command '" + command + "'");
    }
    return r.to_json().dump();
}

} // namespace

PYBIND11_MODULE(_kmirror, m) {
    py::register_exception<error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<cutoff_error>(m, "CutoffError", PyExc_ArithmeticError);

    m.def("run", &run, py::arg("command"), py::arg("polytope"), py::arg("points") = std::vector<std::string>{},
          py::arg("alpha") = "", py::arg("energy") = "3", py::arg("arity") = 6, py::arg("degree") = 10,
          py::arg("base_degree") = 4, py::arg("eval_t") = std::nullopt, py::arg("floating") = false,
          py::arg("inject_sign_error") = false, py::call_guard<py::gil_scoped_release>());
    m.def("potential_text", [](const std::string& polytope, double t) {
        return potential_text(parse_polytope_text(polytope), t);
    });
    m.def("critical_values", [](const std::string& polytope, double t) {
        std::vector<cplx> out;
        for (const auto& p : critical_points(parse_polytope_text(polytope), t).points) out.push_back(p.value);
        return out;
    });
    m.def("epsilon_sign", &epsilon_sign);
    m.def("eta_sign", &eta_sign);
    m.def("koszul_concentrated", [](int n, int degree) { return koszul_cohomology(n, degree).concentrated(); });
}
