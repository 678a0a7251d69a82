#pragma once

// Scenario runners: the sign(x) transport study over omega and the 1D MHD
// Riemann problem with Bx = 1.5.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hybridflux/engine.hpp"

namespace hybridflux {

struct TimeseriesRow {
  std::size_t step = 0;
  double t = 0.0;
  double max_value = 0.0;
};

/// Discrete conservation balance final - initial + int (F_right - F_left) dt.
struct ConservationReport {
  State initial_total;
  State final_total;
  State boundary_integral;
  State residual;
  /// Residual per component scaled by max(|initial|, |final|, |boundary|,
  /// sum_i |U_i| dx), the magnitude rounding errors are proportional to.
  State relative_residual;

  double max_relative() const;
};

ConservationReport conservation_report(const FieldSnapshot& initial,
                                       const FieldSnapshot& final_snapshot,
                                       const State& boundary_integral,
                                       const Grid& grid);

struct ScenarioResult {
  std::string scenario;
  SolverSpec solver;
  Grid grid;
  double cfl = 0.0;
  std::optional<double> fixed_dt;
  double t_end = 0.0;
  std::size_t steps = 0;
  double peak_courant = 0.0;
  std::size_t cfl_exceedances = 0;
  double wall_seconds = 0.0;
  FieldSnapshot final;
  std::vector<TimeseriesRow> timeseries;
  std::optional<ConservationReport> conservation;
  Diagnostics diagnostics;
  /// Set when the run aborted; the other fields are then partial.
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

struct ScalarSignConfig {
  std::size_t n_cells = 200;
  double cfl = 0.5;
  double t_end = 0.25;
  double x_lo = -1.0;
  double x_hi = 1.0;
  double speed = 1.0;
  FluxOptions flux;
};

/// One DOmega run per omega. Runs are independent and spread over
/// `workers` threads (0 = hardware concurrency); results keep input order.
std::vector<ScenarioResult> run_scalar_sign_test(const std::vector<double>& omegas,
                                                 const ScalarSignConfig& config = {},
                                                 std::size_t workers = 0);

/// Same setup with an arbitrary solver (e.g. Upwind or P2 on advection).
ScenarioResult run_scalar_sign(const SolverSpec& solver, const ScalarSignConfig& config);

struct MhdRiemannConfig {
  std::size_t n_cells = 300;
  double dt = 0.01;
  double t_end = 1.0;
  /// Nominal CFL number of the fixed step; exceedances are counted.
  double cfl = 0.9;
  /// Hard stability limit on the Courant number.
  double courant_limit = 1.0;
  double x_lo = -4.0;
  double x_hi = 4.0;
  double bx = 1.5;
  double gamma = kMhdDefaultGamma;
  MhdPrimitive left = {3.0, 0.0, {0.0, 0.0}, 3.0, {1.0, 1.0}};
  MhdPrimitive right = default_right_state();
  FluxOptions flux;

  static MhdPrimitive default_right_state();

  /// Same problem on n cells with dt scaled to keep dt/dx fixed.
  MhdRiemannConfig refined(std::size_t n) const;
};

/// One run per solver. A solver that fails reports `error` without
/// affecting the others.
std::vector<ScenarioResult> run_mhd_riemann(const std::vector<SolverSpec>& solvers,
                                            const MhdRiemannConfig& config = {},
                                            std::size_t workers = 0);

/// Default sweeps.
std::vector<double> default_scalar_omegas();
std::vector<SolverSpec> default_mhd_solvers();
std::vector<SolverSpec> default_dissipation_specs();

// Profile analysis -----------------------------------------------------------

/// Component `var` of each cell (for MHD: 0 is density).
std::vector<double> component(const FieldSnapshot& snapshot, std::size_t var);

/// max |q_{i+1} - q_i| / dx over neighbouring cell centres both inside
/// [x_lo, x_hi].
double max_gradient(const std::vector<double>& values, const Grid& grid, double x_lo,
                    double x_hi);

/// Conservative projection of piecewise-constant data onto another grid
/// covering the same interval.
std::vector<double> project_cell_averages(const std::vector<double>& values,
                                          const Grid& from, const Grid& to);

/// sum_i |a_i - b_i| dx
double l1_distance(const std::vector<double>& a, const std::vector<double>& b,
                   const Grid& grid);

}  // namespace hybridflux
