#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hoadi/combine.hpp"
#include "hoadi/harness.hpp"
#include "hoadi/heston.hpp"
#include "hoadi/pricing.hpp"
#include "hoadi/smoothing.hpp"
#include "hoadi/version.hpp"

namespace py = pybind11;
using namespace hoadi;

namespace {

py::array_t<double> field_to_array(const UniformGrid& grid, const GridField& field) {
    py::array_t<double> out({grid.m(), grid.n()});
    auto buf = out.mutable_unchecked<2>();
    for (int i = 0; i < grid.m(); ++i)
        for (int j = 0; j < grid.n(); ++j) buf(i, j) = field.at(i, j);
    return out;
}

SubgridDtRule rule_from_name(const std::string& name) {
    if (name == "max") return SubgridDtRule::MaxLevel;
    if (name == "sum") return SubgridDtRule::SumLevel;
    if (name == "level") return SubgridDtRule::CombinationLevel;
    throw std::invalid_argument("subgrid_dt must be max|sum|level");
}

}  // namespace

PYBIND11_MODULE(_hoadi, m) {
    m.doc() = "High-order ADI pricing of European options under stochastic volatility, "
              "on full grids and via the sparse grid combination technique";
    m.attr("__version__") = kVersion;

    py::enum_<DriftForm>(m, "DriftForm")
        .value("LINEAR", DriftForm::Linear)
        .value("MEAN_REVERTING_N", DriftForm::MeanRevertingN);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double kappa, double theta, double v, double rho, double r, double alpha,
                         double beta, double lambda0, DriftForm drift) {
                 ModelParams p{kappa, theta, v, rho, r, alpha, beta, lambda0, drift};
                 p.validate();
                 return p;
             }),
             py::arg("kappa") = 2.0, py::arg("theta") = 0.1, py::arg("v") = 0.1,
             py::arg("rho") = -0.5, py::arg("r") = 0.05, py::arg("alpha") = 0.5,
             py::arg("beta") = 0.5, py::arg("lambda0") = 0.0,
             py::arg("drift") = DriftForm::Linear)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("theta", &ModelParams::theta)
        .def_readwrite("v", &ModelParams::v)
        .def_readwrite("rho", &ModelParams::rho)
        .def_readwrite("r", &ModelParams::r)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("lambda0", &ModelParams::lambda0)
        .def_readwrite("drift", &ModelParams::drift);

    py::class_<OptionSpec>(m, "OptionSpec")
        .def(py::init([](double strike, double maturity) {
                 OptionSpec s;
                 s.strike = strike;
                 s.maturity = maturity;
                 s.validate();
                 return s;
             }),
             py::arg("strike") = 100.0, py::arg("maturity") = 1.0)
        .def_readwrite("strike", &OptionSpec::strike)
        .def_readwrite("maturity", &OptionSpec::maturity);

    py::class_<Domain>(m, "Domain")
        .def(py::init([](double L1, double K1, double L2, double K2, double T) {
                 Domain d{L1, K1, L2, K2, T};
                 d.validate();
                 return d;
             }),
             py::arg("L1") = -5.0, py::arg("K1") = 1.5, py::arg("L2") = 0.05,
             py::arg("K2") = 2.5, py::arg("T") = 1.0)
        .def_readwrite("L1", &Domain::L1)
        .def_readwrite("K1", &Domain::K1)
        .def_readwrite("L2", &Domain::L2)
        .def_readwrite("K2", &Domain::K2)
        .def_readwrite("T", &Domain::T);

    m.def("transform",
          [](double S, double sigma, double t, const OptionSpec& spec, const ModelParams& params) {
              const TransformedPoint p = transform(S, sigma, t, spec, params);
              return py::make_tuple(p.x, p.y, p.tau);
          },
          py::arg("S"), py::arg("sigma"), py::arg("t"), py::arg("spec"), py::arg("params"));
    m.def("untransform_price", &untransform_price, py::arg("u"), py::arg("tau"), py::arg("spec"),
          py::arg("params"));
    m.def("payoff", &payoff, py::arg("x"));

    m.def("combination_plan",
          [](int n, int exclusion_min) {
              const CombinationPlan plan = make_plan(n, exclusion_min);
              std::vector<std::tuple<int, int, int>> out;
              for (const auto& t : plan.terms)
                  out.emplace_back(t.level.l1, t.level.l2, t.sign);
              return out;
          },
          py::arg("n"), py::arg("exclusion_min") = 3);

    m.def("heston_put_price", &heston_put_price, py::arg("spot"), py::arg("sigma"),
          py::arg("spec"), py::arg("params"), py::arg("tol") = 1e-8);

    m.def("estimate_order",
          [](const std::vector<double>& errors) { return estimate_order(errors); },
          py::arg("errors"));

    auto make_setup = [](const ModelParams& params, const OptionSpec& spec, const Domain& domain,
                         double phi, double dt_factor, bool smoothing, int threads) {
        SolveSetup setup;
        setup.params = params;
        setup.spec = spec;
        setup.domain = domain;
        setup.domain.T = spec.maturity;
        setup.adi.phi = phi;
        setup.dt_factor = dt_factor;
        setup.smoothing = smoothing;
        setup.threads = threads;
        setup.validate();
        return setup;
    };

    m.def("price_full",
          [make_setup](const ModelParams& params, const OptionSpec& spec, const Domain& domain,
                       int n, double S, double sigma, double phi, double dt_factor, bool smoothing,
                       int threads) {
              const SolveSetup setup =
                  make_setup(params, spec, domain, phi, dt_factor, smoothing, threads);
              const FullSolve solved = full_grid_solve(setup, n);
              return price_at(setup, solved.grid, solved.field, S, sigma);
          },
          py::arg("params"), py::arg("spec"), py::arg("domain"), py::arg("n"), py::arg("S"),
          py::arg("sigma"), py::arg("phi") = 0.5, py::arg("dt_factor") = 5.0,
          py::arg("smoothing") = true, py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def("solve_full_surface",
          [make_setup](const ModelParams& params, const OptionSpec& spec, const Domain& domain,
                       int n, double phi, double dt_factor, bool smoothing, int threads) {
              const SolveSetup setup =
                  make_setup(params, spec, domain, phi, dt_factor, smoothing, threads);
              const FullSolve solved = full_grid_solve(setup, n);
              return py::make_tuple(py::array_t<double>(py::cast(solved.grid.xs())),
                                    py::array_t<double>(py::cast(solved.grid.ys())),
                                    field_to_array(solved.grid, solved.field));
          },
          py::arg("params"), py::arg("spec"), py::arg("domain"), py::arg("n"),
          py::arg("phi") = 0.5, py::arg("dt_factor") = 5.0, py::arg("smoothing") = true,
          py::arg("threads") = 0);

    m.def("price_sparse",
          [make_setup, rule = &rule_from_name](const ModelParams& params, const OptionSpec& spec,
                                               const Domain& domain, int n, double S, double sigma,
                                               const std::string& subgrid_dt, int exclusion_min,
                                               double phi, double dt_factor, bool smoothing,
                                               int threads) {
              const SolveSetup setup =
                  make_setup(params, spec, domain, phi, dt_factor, smoothing, threads);
              const SparseSolve solved =
                  sparse_solve(setup, n, rule(subgrid_dt), exclusion_min);
              return price_at(setup, solved.target, solved.field, S, sigma);
          },
          py::arg("params"), py::arg("spec"), py::arg("domain"), py::arg("n"), py::arg("S"),
          py::arg("sigma"), py::arg("subgrid_dt") = "max", py::arg("exclusion_min") = 3,
          py::arg("phi") = 0.5, py::arg("dt_factor") = 5.0, py::arg("smoothing") = true,
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

    m.def("smoothing_kernel_table",
          [](int resolution) {
              const SmoothingKernel& k = shared_kernel(resolution);
              std::vector<double> xs(k.table_size()), vals(k.table_size());
              for (int i = 0; i < k.table_size(); ++i) {
                  xs[i] = k.table_node(i);
                  vals[i] = k.table_value(i);
              }
              return py::make_tuple(py::array_t<double>(py::cast(xs)),
                                    py::array_t<double>(py::cast(vals)));
          },
          py::arg("resolution") = 4097);
}
