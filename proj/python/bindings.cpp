#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hybridflux/dissipation.hpp"
#include "hybridflux/errors.hpp"
#include "hybridflux/flux.hpp"
#include "hybridflux/models.hpp"
#include "hybridflux/run_config.hpp"
#include "hybridflux/scenarios.hpp"

namespace py = pybind11;
using namespace hybridflux;

namespace {

SolverSpec to_spec(const py::object& obj) {
  if (py::isinstance<SolverSpec>(obj)) return obj.cast<SolverSpec>();
  if (py::isinstance<py::str>(obj)) return parse_solver_spec(obj.cast<std::string>());
  throw py::type_error("solver must be a SolverSpec or a string like 'P2Omega(0.3)'");
}

std::vector<SolverSpec> to_specs(const py::iterable& items) {
  std::vector<SolverSpec> out;
  for (const auto& item : items) out.push_back(to_spec(py::reinterpret_borrow<py::object>(item)));
  return out;
}

FluxOptions flux_options(const std::string& bounds_mode, const std::string& jacobian_mode) {
  FluxOptions f;
  f.bounds_mode = parse_bounds_mode(bounds_mode);
  f.jacobian_mode = parse_jacobian_mode(jacobian_mode);
  return f;
}

py::array_t<double> cells_array(const FieldSnapshot& s) {
  const std::size_t n = s.cells.size();
  const std::size_t m = n == 0 ? 0 : static_cast<std::size_t>(s.cells.front().size());
  py::array_t<double> out({n, m});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) view(i, k) = s.cells[i][static_cast<Eigen::Index>(k)];
  return out;
}

py::array_t<double> centers(const Grid& g) {
  py::array_t<double> out(g.n_cells);
  auto view = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < g.n_cells; ++i) view(i) = g.center(i);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-volume fluxes built from scalar dissipation functions";

  py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UnsupportedKindError>(m, "UnsupportedKindError", PyExc_ValueError);

  py::enum_<SolverKind>(m, "SolverKind")
      .value("Upwind", SolverKind::Upwind)
      .value("LaxFriedrichs", SolverKind::LaxFriedrichs)
      .value("Rusanov", SolverKind::Rusanov)
      .value("HLL", SolverKind::HLL)
      .value("LaxWendroff", SolverKind::LaxWendroff)
      .value("P2", SolverKind::P2)
      .value("DOmega", SolverKind::DOmega)
      .value("HLLOmega", SolverKind::HLLOmega)
      .value("P2Omega", SolverKind::P2Omega);

  py::class_<SolverSpec>(m, "SolverSpec")
      .def(py::init([](SolverKind kind, double omega) { return make_spec(kind, omega); }),
           py::arg("kind"), py::arg("omega") = 0.0)
      .def_readonly("kind", &SolverSpec::kind)
      .def_readonly("omega", &SolverSpec::omega)
      .def_property_readonly("label", &SolverSpec::label)
      .def("__repr__", [](const SolverSpec& s) { return "SolverSpec(" + s.label() + ")"; });

  m.def("solver", [](const std::string& text) { return parse_solver_spec(text); },
        py::arg("text"), "Parse 'HLL', 'P2Omega(0.3)', ...");

  py::class_<Diagnostics>(m, "Diagnostics")
      .def_readonly("degenerate_fallbacks", &Diagnostics::degenerate_fallbacks)
      .def_readonly("inverted_bounds", &Diagnostics::inverted_bounds)
      .def_readonly("jacobian_retries", &Diagnostics::jacobian_retries);

  m.def(
      "eval_d",
      [](const py::object& spec, py::array_t<double> nu, double nu_min, double nu_max) {
        const SolverSpec s = to_spec(spec);
        const NuBounds b{nu_min, nu_max};
        b.validate();
        return py::vectorize([&](double x) { return eval_d(s, x, b); })(std::move(nu));
      },
      py::arg("spec"), py::arg("nu"), py::arg("nu_min"), py::arg("nu_max"),
      "Dissipation function d(nu) for the given Courant-number bounds.");
  m.def(
      "alpha", [](double lo, double hi) { return alpha(NuBounds{lo, hi}); }, py::arg("nu_min"),
      py::arg("nu_max"));
  m.def(
      "beta", [](double lo, double hi, double omega) { return beta(NuBounds{lo, hi}, omega); },
      py::arg("nu_min"), py::arg("nu_max"), py::arg("omega"));
  m.def(
      "quad_coeffs",
      [](const py::object& spec, double lo, double hi) {
        const QuadCoeffs q = quad_coeffs(to_spec(spec), NuBounds{lo, hi});
        return py::make_tuple(q.c0, q.c1, q.c2);
      },
      py::arg("spec"), py::arg("nu_min"), py::arg("nu_max"),
      "(c0, c1, c2) with d(nu) = c0 + c1 nu + c2 nu^2.");
  m.def(
      "sample_dissipation",
      [](const py::iterable& specs, double nu_min, double nu_max, double nu_lo, double nu_hi,
         std::size_t n_samples) {
        const auto rows =
            sample_dissipation(to_specs(specs), NuBounds{nu_min, nu_max}, nu_lo, nu_hi, n_samples);
        py::list labels;
        py::array_t<double> nu(rows.size());
        py::array_t<double> d(rows.size());
        auto nv = nu.mutable_unchecked<1>();
        auto dv = d.mutable_unchecked<1>();
        for (std::size_t i = 0; i < rows.size(); ++i) {
          labels.append(rows[i].spec.label());
          nv(i) = rows[i].nu;
          dv(i) = rows[i].d;
        }
        py::dict out;
        out["label"] = labels;
        out["nu"] = nu;
        out["d"] = d;
        return out;
      },
      py::arg("specs"), py::arg("nu_min"), py::arg("nu_max"), py::arg("nu_lo"),
      py::arg("nu_hi"), py::arg("n_samples") = 201);

  py::class_<WaveSpeeds>(m, "WaveSpeeds")
      .def_readonly("min", &WaveSpeeds::min)
      .def_readonly("max", &WaveSpeeds::max);

  py::class_<Model>(m, "Model")
      .def_property_readonly("n_vars", &Model::n_vars)
      .def("flux", &Model::flux, py::arg("u"))
      .def("speeds", &Model::speeds, py::arg("u"))
      .def("admissible", &Model::admissible, py::arg("u"))
      .def_property_readonly("variable_names", &Model::variable_names);
  py::class_<AdvectionModel, Model>(m, "AdvectionModel")
      .def(py::init<double>(), py::arg("speed") = 1.0);
  py::class_<LinearSystemModel, Model>(m, "LinearSystemModel")
      .def(py::init<Eigen::MatrixXd, Eigen::MatrixXd, Eigen::VectorXd>(), py::arg("matrix"),
           py::arg("eigenvectors"), py::arg("eigenvalues"))
      .def_property_readonly("matrix", &LinearSystemModel::matrix);
  py::class_<MhdModel, Model>(m, "MhdModel")
      .def(py::init<double, double>(), py::arg("bx"), py::arg("gamma") = kMhdDefaultGamma);
  py::class_<MhdModelJacobianFree, Model>(m, "MhdModelJacobianFree")
      .def(py::init<double, double>(), py::arg("bx"), py::arg("gamma") = kMhdDefaultGamma);

  m.def(
      "mhd_prim_to_cons",
      [](double rho, double vx, double vy, double vz, double p, double by, double bz,
         double gamma) {
        return mhd_prim_to_cons(MhdPrimitive{rho, vx, {vy, vz}, p, {by, bz}}, gamma);
      },
      py::arg("rho"), py::arg("vx"), py::arg("vy"), py::arg("vz"), py::arg("p"), py::arg("by"),
      py::arg("bz"), py::arg("gamma") = kMhdDefaultGamma);

  m.def(
      "numerical_flux",
      [](const Model& model, const py::object& spec, const State& ul, const State& ur,
         double dt_over_dx, const std::string& bounds_mode, const std::string& jacobian_mode) {
        Diagnostics diag;
        State f = numerical_flux(model, to_spec(spec), ul, ur, dt_over_dx,
                                 flux_options(bounds_mode, jacobian_mode), &diag);
        return py::make_tuple(f, diag);
      },
      py::arg("model"), py::arg("spec"), py::arg("u_left"), py::arg("u_right"),
      py::arg("dt_over_dx"), py::arg("bounds_mode") = "paper", py::arg("jacobian_mode") = "auto",
      "Returns (flux, diagnostics).");

  py::class_<ScenarioResult>(m, "ScenarioResult")
      .def_readonly("scenario", &ScenarioResult::scenario)
      .def_readonly("solver", &ScenarioResult::solver)
      .def_readonly("steps", &ScenarioResult::steps)
      .def_readonly("peak_courant", &ScenarioResult::peak_courant)
      .def_readonly("cfl_exceedances", &ScenarioResult::cfl_exceedances)
      .def_readonly("wall_seconds", &ScenarioResult::wall_seconds)
      .def_readonly("diagnostics", &ScenarioResult::diagnostics)
      .def_readonly("error", &ScenarioResult::error)
      .def_property_readonly("ok", &ScenarioResult::ok)
      .def_property_readonly("x", [](const ScenarioResult& r) { return centers(r.grid); })
      .def_property_readonly("final", [](const ScenarioResult& r) { return cells_array(r.final); })
      .def_property_readonly("max_u",
                             [](const ScenarioResult& r) {
                               std::vector<double> v;
                               for (const auto& row : r.timeseries) v.push_back(row.max_value);
                               return v;
                             })
      .def_property_readonly("conservation_residual", [](const ScenarioResult& r) {
        return r.conservation ? py::cast(r.conservation->max_relative()) : py::none();
      });

  m.def(
      "run_scalar_sign_test",
      [](std::vector<double> omegas, std::size_t n_cells, double cfl, double t_end,
         std::size_t workers) {
        ScalarSignConfig cfg;
        cfg.n_cells = n_cells;
        cfg.cfl = cfl;
        cfg.t_end = t_end;
        py::gil_scoped_release release;
        return run_scalar_sign_test(omegas, cfg, workers);
      },
      py::arg("omegas"), py::arg("n_cells") = 200, py::arg("cfl") = 0.5, py::arg("t_end") = 0.25,
      py::arg("workers") = 0, "DOmega runs of the sign(x) transport test, one per omega.");

  m.def(
      "run_mhd_riemann",
      [](const py::iterable& solvers, std::size_t n_cells, double dt, double t_end,
         const std::string& bounds_mode, std::size_t workers) {
        const auto specs = to_specs(solvers);
        MhdRiemannConfig cfg = MhdRiemannConfig{}.refined(n_cells);
        cfg.dt = dt > 0.0 ? dt : cfg.dt;
        cfg.t_end = t_end;
        cfg.flux.bounds_mode = parse_bounds_mode(bounds_mode);
        py::gil_scoped_release release;
        return run_mhd_riemann(specs, cfg, workers);
      },
      py::arg("solvers"), py::arg("n_cells") = 300, py::arg("dt") = 0.0, py::arg("t_end") = 1.0,
      py::arg("bounds_mode") = "paper", py::arg("workers") = 0,
      "MHD Riemann problem with Bx = 1.5. dt <= 0 keeps dt/dx of the 300-cell, dt = 0.01 setup.");
}
