#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commbound/circle_bounds.hpp"
#include "commbound/experiments.hpp"
#include "commbound/matrix_lab.hpp"
#include "commbound/periodic_fn.hpp"
#include "commbound/positive_bounds.hpp"

namespace py = pybind11;
using namespace commbound;

namespace {

py::dict record_dict(const SampleRecord& r) {
    py::dict d;
    d["seed"] = r.seed;
    d["dim"] = r.dim;
    d["delta"] = r.delta;
    d["measured"] = r.measured;
    d["bound"] = r.bound;
    d["margin"] = r.margin;
    return d;
}

py::dict sweep_dict(const SweepResult& result) {
    py::dict d;
    py::list records;
    for (const auto& r : result.records) records.append(record_dict(r));
    d["records"] = records;
    d["min_margin"] = result.min_margin;
    d["min_margin_seed"] = result.min_margin_seed;
    return d;
}

SweepConfig sweep_config(std::size_t count, int dim_min, int dim_max, std::uint64_t seed,
                         std::optional<std::string> mode) {
    SweepConfig c;
    c.count = count;
    c.dim_min = dim_min;
    c.dim_max = dim_max;
    c.seed = seed;
    if (mode) c.spectrum_mode = parse_spectrum_mode(*mode);
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Commutator-norm bound curves and a dense-matrix validation lab";

    py::register_exception<Error>(m, "CommboundError", PyExc_RuntimeError);
    py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_RuntimeError);

    // periodic functions
    py::class_<PeriodicFunction>(m, "PeriodicFunction")
        .def_readonly("name", &PeriodicFunction::name)
        .def_readonly("real_valued", &PeriodicFunction::real_valued)
        .def("__call__", [](const PeriodicFunction& f, double x) { return f(x); })
        .def("has_exact_coefficients", &PeriodicFunction::has_exact_coefficients);

    py::class_<TrigPolynomial>(m, "TrigPolynomial")
        .def_property_readonly("degree", &TrigPolynomial::degree)
        .def("coefficient", &TrigPolynomial::coefficient)
        .def("__call__", [](const TrigPolynomial& p, double x) { return evaluate(p, x); })
        .def("is_real", &TrigPolynomial::is_real, py::arg("tol") = 1e-14);

    m.def("triangle", &builtin_triangle);
    m.def("bump", &builtin_bump);
    m.def("cosine", &builtin_cos);
    m.def("exponential", &builtin_exponential, py::arg("n"));
    m.def("constant", &builtin_constant, py::arg("c"));
    m.def("from_coefficients", &from_coefficients, py::arg("coefficients"), py::arg("name") = "coefficients");
    m.def("load_coefficient_file", &load_coefficient_file, py::arg("path"));

    m.def("fourier_coefficient", [](const PeriodicFunction& f, int n) { return fourier_coefficient(f, n); },
          py::arg("f"), py::arg("n"));
    m.def(
        "quadrature_coefficients",
        [](const PeriodicFunction& f, const std::vector<int>& indices, double tolerance) {
            QuadratureOptions o;
            o.tolerance = tolerance;
            const auto r = quadrature_coefficients(f, indices, o);
            return py::make_tuple(r.coefficients, r.error_estimate, r.samples);
        },
        py::arg("f"), py::arg("indices"), py::arg("tolerance") = 1e-10);
    m.def("truncate", [](const PeriodicFunction& f, int N) { return truncate(f, N); }, py::arg("f"), py::arg("degree"));
    m.def("derivative_fourier_norm", &derivative_fourier_norm);
    m.def(
        "range_extent",
        [](const PeriodicFunction& f, std::size_t grid) {
            const auto e = range_extent(f, grid);
            return py::make_tuple(e.min, e.max);
        },
        py::arg("f"), py::arg("grid_size") = kDefaultExtentGrid);
    m.def("chebyshev_radius", &chebyshev_radius, py::arg("f"), py::arg("grid_size") = kDefaultExtentGrid);

    // bound curves
    py::class_<BoundLine>(m, "BoundLine")
        .def_readonly("slope", &BoundLine::slope)
        .def_readonly("intercept", &BoundLine::intercept)
        .def_readonly("domain_max", &BoundLine::domain_max)
        .def_property_readonly("provenance", [](const BoundLine& l) { return l.provenance.label(); })
        .def("__call__", &BoundLine::operator());

    py::class_<BoundCurve>(m, "BoundCurve")
        .def("__call__", [](const BoundCurve& c, double d) { return c(d); })
        .def("evaluate",
             [](const BoundCurve& c, double d) {
                 const auto p = c.evaluate(d);
                 return py::make_tuple(p.value, p.provenance.label());
             })
        .def("breakpoints",
             [](const BoundCurve& c) {
                 py::list out;
                 for (const auto& s : c.breakpoints())
                     out.append(py::make_tuple(s.delta_start, s.delta_end, s.line.slope, s.line.intercept,
                                               s.line.provenance.label()));
                 return out;
             })
        .def_property_readonly("lines", &BoundCurve::lines)
        .def_property_readonly("domain_max", &BoundCurve::domain_max);

    m.def("folk_line", &folk_line);
    m.def("split_line", &split_line, py::arg("f"), py::arg("g"), py::arg("grid_size") = kDefaultExtentGrid);
    m.def("constant_cap", &constant_cap, py::arg("f"), py::arg("grid_size") = kDefaultExtentGrid);
    m.def("truncation_envelope", [](const PeriodicFunction& f, int n_max) { return truncation_envelope(f, n_max); },
          py::arg("f"), py::arg("n_max"));
    m.def(
        "eta_lower",
        [](const PeriodicFunction& f, double delta, std::size_t grid) {
            const auto p = eta_lower(f, delta, grid);
            return py::make_tuple(p.value, p.x1, p.x2);
        },
        py::arg("f"), py::arg("delta"), py::arg("grid_size") = kDefaultLowerGrid);
    m.def("continuity_bound", &continuity_bound);

    m.def("sqrt_series", [](int N) { return sqrt_series(N).coefficients(); }, py::arg("N"));
    m.def("pedersen_line", py::overload_cast<int>(&pedersen_line), py::arg("N"));
    m.def("tangent_line", [](double a) { return tangent_line(TangentParam(a)); }, py::arg("a"));
    m.def("gamma0", &gamma0, py::arg("n_max") = kDefaultPedersenMax, py::arg("a_grid") = kDefaultTangentGrid);
    m.def("pedersen_envelope", &pedersen_envelope, py::arg("n_max") = kDefaultPedersenMax);

    // matrices
    m.def("op_norm", [](const DenseMatrix& a) { return op_norm(a); });
    m.def("commutator", [](const DenseMatrix& a, const DenseMatrix& b) { return commutator(a, b); });
    m.def("haar_unitary", py::overload_cast<int, std::uint64_t>(&haar_unitary), py::arg("n"), py::arg("seed"));
    m.def("random_contraction", py::overload_cast<int, std::uint64_t>(&random_contraction), py::arg("n"),
          py::arg("seed"));
    m.def(
        "random_positive_contraction",
        [](int n, std::uint64_t seed, const std::string& mode) {
            return random_positive_contraction(n, seed, parse_spectrum_mode(mode));
        },
        py::arg("n"), py::arg("seed"), py::arg("spectrum_mode") = "uniform");
    m.def("unitary_calculus", [](const PeriodicFunction& f, const DenseMatrix& v) { return unitary_calculus(f, v); });
    m.def("sqrtm_positive", [](const DenseMatrix& h) { return hermitian_calculus(sqrt_function(), h); });
    m.def("block_pair", &block_pair);
    m.def("lower_bound_instance",
          [](const PeriodicFunction& f, double x1, double x2) { return record_dict(lower_bound_instance(f, x1, x2)); });

    m.def(
        "sweep_positive",
        [](const BoundCurve& curve, std::size_t count, int dim_min, int dim_max, std::uint64_t seed,
           std::optional<std::string> mode) {
            return sweep_dict(sweep_positive(sqrt_function(), curve, sweep_config(count, dim_min, dim_max, seed, mode)));
        },
        py::arg("curve"), py::arg("count") = 200, py::arg("dim_min") = 2, py::arg("dim_max") = 8,
        py::arg("seed") = 42, py::arg("spectrum_mode") = py::none());
    m.def(
        "sweep_unitary",
        [](const PeriodicFunction& f, const BoundCurve& curve, std::size_t count, int dim_min, int dim_max,
           std::uint64_t seed) {
            return sweep_dict(sweep_unitary(f, curve, sweep_config(count, dim_min, dim_max, seed, std::nullopt)));
        },
        py::arg("f"), py::arg("curve"), py::arg("count") = 200, py::arg("dim_min") = 2, py::arg("dim_max") = 8,
        py::arg("seed") = 42);
    m.def(
        "probe",
        [](double delta, int dim, int iterations, std::uint64_t seed) {
            ProbeConfig c;
            c.delta_target = delta;
            c.dim = dim;
            c.iterations = iterations;
            c.seed = seed;
            const auto r = probe_max_commutator(c);
            py::dict d = record_dict(r.best);
            d["sqrt_gap"] = r.sqrt_gap;
            d["best_restart"] = r.best_restart;
            d["h"] = r.h;
            d["a"] = r.a;
            return d;
        },
        py::arg("delta"), py::arg("dim") = 2, py::arg("iterations") = 10000, py::arg("seed") = 42);

    m.def(
        "run_command",
        [](const std::string& command, const std::string& function, std::optional<double> delta_min,
           std::optional<double> delta_max, std::optional<int> steps, std::optional<int> n_max,
           std::optional<std::size_t> samples, std::uint64_t seed, std::optional<std::string> format,
           bool pedersen_only) {
            RunConfig c;
            c.command = command;
            c.function = function;
            c.delta_min = delta_min;
            c.delta_max = delta_max;
            c.steps = steps;
            c.n_max = n_max;
            c.samples = samples;
            c.seed = seed;
            if (format) c.format = parse_format(*format);
            c.pedersen_only = pedersen_only;
            const auto out = run_command(c);
            return py::make_tuple(out.text, out.exit_code);
        },
        py::arg("command"), py::arg("function") = "triangle", py::arg("delta_min") = py::none(),
        py::arg("delta_max") = py::none(), py::arg("steps") = py::none(), py::arg("n_max") = py::none(),
        py::arg("samples") = py::none(), py::arg("seed") = 42, py::arg("format") = py::none(),
        py::arg("pedersen_only") = false);
}
