#include "hybridflux/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "hybridflux/errors.hpp"

namespace hybridflux {

namespace {

// Runs task(i) for i in [0, n) on a small pool. Tasks must not throw.
template <class Task>
void parallel_for(std::size_t n, std::size_t workers, Task&& task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ScenarioResult execute(const std::string& scenario, const Model& model,
                       const RunConfig& config, const Grid& grid,
                       const FieldSnapshot& initial, bool track_max) {
  ScenarioResult out;
  out.scenario = scenario;
  out.solver = config.solver;
  out.grid = grid;
  out.cfl = config.cfl;
  out.fixed_dt = config.fixed_dt;
  out.t_end = config.t_end;
  out.final = initial;

  std::vector<Observer> observers;
  if (track_max) {
    observers.push_back([&out](const StepInfo& info, const FieldSnapshot& snapshot) {
      double peak = -std::numeric_limits<double>::infinity();
      for (const auto& u : snapshot.cells) peak = std::max(peak, std::abs(u[0]));
      out.timeseries.push_back({info.step, info.t, peak});
    });
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunResult result = run(model, config, grid, initial, observers);
    out.steps = result.steps;
    out.peak_courant = result.peak_courant;
    out.cfl_exceedances = result.cfl_exceedances;
    out.diagnostics = result.diagnostics;
    out.conservation =
        conservation_report(initial, result.final, result.boundary_flux_integral, grid);
    out.final = std::move(result.final);
  } catch (const std::exception& e) {
    out.error = e.what();
    out.steps = out.timeseries.size();
  }
  out.wall_seconds = seconds_since(start);
  return out;
}

}  // namespace

double ConservationReport::max_relative() const {
  return relative_residual.size() == 0 ? 0.0 : relative_residual.maxCoeff();
}

ConservationReport conservation_report(const FieldSnapshot& initial,
                                       const FieldSnapshot& final_snapshot,
                                       const State& boundary_integral,
                                       const Grid& grid) {
  ConservationReport report;
  report.initial_total = total_conserved(initial, grid);
  report.final_total = total_conserved(final_snapshot, grid);
  report.boundary_integral = boundary_integral;
  report.residual = report.final_total - report.initial_total + boundary_integral;

  State magnitude = State::Zero(report.residual.size());
  for (const auto* snap : {&initial, &final_snapshot}) {
    State l1 = State::Zero(report.residual.size());
    for (const auto& u : snap->cells) l1 += u.cwiseAbs();
    magnitude = magnitude.cwiseMax(l1 * grid.dx());
  }
  magnitude = magnitude.cwiseMax(report.initial_total.cwiseAbs())
                  .cwiseMax(report.final_total.cwiseAbs())
                  .cwiseMax(boundary_integral.cwiseAbs());

  report.relative_residual.resize(report.residual.size());
  for (Eigen::Index k = 0; k < report.residual.size(); ++k) {
    const double r = std::abs(report.residual[k]);
    report.relative_residual[k] = magnitude[k] > 0.0 ? r / magnitude[k] : r;
  }
  return report;
}

ScenarioResult run_scalar_sign(const SolverSpec& solver, const ScalarSignConfig& config) {
  const Grid grid(config.x_lo, config.x_hi, config.n_cells);
  const AdvectionModel model(config.speed);
  RunConfig run_config;
  run_config.solver = solver;
  run_config.cfl = config.cfl;
  run_config.t_end = config.t_end;
  run_config.bc = BoundaryCondition::Transmissive;
  run_config.flux = config.flux;
  return execute("scalar", model, run_config, grid, sign_initial_data(grid), true);
}

std::vector<ScenarioResult> run_scalar_sign_test(const std::vector<double>& omegas,
                                                 const ScalarSignConfig& config,
                                                 std::size_t workers) {
  for (double w : omegas) make_spec(SolverKind::DOmega, w);
  std::vector<ScenarioResult> results(omegas.size());
  parallel_for(omegas.size(), workers, [&](std::size_t i) {
    results[i] = run_scalar_sign({SolverKind::DOmega, omegas[i]}, config);
  });
  return results;
}

MhdPrimitive MhdRiemannConfig::default_right_state() {
  return {1.0, 0.0, {0.0, 0.0}, 1.0, {std::cos(1.5), std::sin(1.5)}};
}

MhdRiemannConfig MhdRiemannConfig::refined(std::size_t n) const {
  MhdRiemannConfig out = *this;
  out.n_cells = n;
  out.dt = dt * static_cast<double>(n_cells) / static_cast<double>(n);
  return out;
}

std::vector<ScenarioResult> run_mhd_riemann(const std::vector<SolverSpec>& solvers,
                                            const MhdRiemannConfig& config,
                                            std::size_t workers) {
  for (const auto& s : solvers) s.validate();
  const Grid grid(config.x_lo, config.x_hi, config.n_cells);
  const MhdModel model(config.bx, config.gamma);
  const FieldSnapshot initial =
      riemann_initial_data(grid, mhd_prim_to_cons(config.left, config.gamma),
                           mhd_prim_to_cons(config.right, config.gamma));

  std::vector<ScenarioResult> results(solvers.size());
  parallel_for(solvers.size(), workers, [&](std::size_t i) {
    RunConfig run_config;
    run_config.solver = solvers[i];
    run_config.cfl = config.cfl;
    run_config.courant_limit = config.courant_limit;
    run_config.fixed_dt = config.dt;
    run_config.t_end = config.t_end;
    run_config.bc = BoundaryCondition::Transmissive;
    run_config.flux = config.flux;
    results[i] = execute("mhd", model, run_config, grid, initial, false);
  });
  return results;
}

std::vector<double> default_scalar_omegas() {
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i) out.push_back(i / 10.0);
  return out;
}

std::vector<SolverSpec> default_mhd_solvers() {
  return {{SolverKind::HLL, 0.0},
          {SolverKind::P2, 0.0},
          {SolverKind::P2Omega, 0.3},
          {SolverKind::P2Omega, 0.5}};
}

std::vector<SolverSpec> default_dissipation_specs() {
  return {{SolverKind::Upwind, 0.0},      {SolverKind::HLL, 0.0},
          {SolverKind::LaxWendroff, 0.0}, {SolverKind::P2, 0.0},
          {SolverKind::DOmega, 0.3},      {SolverKind::HLLOmega, 0.3},
          {SolverKind::P2Omega, 0.3}};
}

std::vector<double> component(const FieldSnapshot& snapshot, std::size_t var) {
  std::vector<double> out;
  out.reserve(snapshot.cells.size());
  for (const auto& u : snapshot.cells) out.push_back(u[static_cast<Eigen::Index>(var)]);
  return out;
}

double max_gradient(const std::vector<double>& values, const Grid& grid, double x_lo,
                    double x_hi) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (grid.center(i) < x_lo || grid.center(i + 1) > x_hi) continue;
    best = std::max(best, std::abs(values[i + 1] - values[i]) / grid.dx());
  }
  return best;
}

std::vector<double> project_cell_averages(const std::vector<double>& values,
                                          const Grid& from, const Grid& to) {
  if (values.size() != from.n_cells) {
    throw std::invalid_argument("projection: value count does not match the grid");
  }
  std::vector<double> out(to.n_cells, 0.0);
  std::size_t j = 0;
  for (std::size_t i = 0; i < to.n_cells; ++i) {
    const double a = to.face(i);
    const double b = to.face(i + 1);
    double acc = 0.0;
    while (j < from.n_cells && from.face(j + 1) <= a) ++j;
    for (std::size_t k = j; k < from.n_cells && from.face(k) < b; ++k) {
      const double overlap = std::min(b, from.face(k + 1)) - std::max(a, from.face(k));
      if (overlap > 0.0) acc += overlap * values[k];
    }
    out[i] = acc / (b - a);
  }
  return out;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b,
                   const Grid& grid) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum * grid.dx();
}

}  // namespace hybridflux
