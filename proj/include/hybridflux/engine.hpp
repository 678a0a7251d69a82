#pragma once

// Uniform-grid explicit finite-volume driver,
//
//   U_i^{n+1} = U_i^n - dt/dx (F_{i+1/2} - F_{i-1/2}),
//
// with one ghost cell per side.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hybridflux/dissipation.hpp"
#include "hybridflux/flux.hpp"
#include "hybridflux/models.hpp"

namespace hybridflux {

struct Grid {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t n_cells = 1;

  Grid() = default;
  /// Throws std::invalid_argument unless n_cells >= 1 and x_lo < x_hi.
  Grid(double lo, double hi, std::size_t n);

  double dx() const { return (x_hi - x_lo) / static_cast<double>(n_cells); }
  double center(std::size_t i) const {
    return x_lo + (x_hi - x_lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n_cells);
  }
  double face(std::size_t i) const {
    return x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n_cells);
  }
};

enum class BoundaryCondition { Transmissive, Periodic };

BoundaryCondition parse_boundary_condition(std::string_view name);
std::string_view to_string(BoundaryCondition bc);

struct FieldSnapshot {
  double t = 0.0;
  std::vector<State> cells;
};

struct RunConfig {
  SolverSpec solver;
  double cfl = 0.9;
  /// Fixed time step; when empty the step follows from the CFL number.
  std::optional<double> fixed_dt;
  /// Hard Courant limit for fixed steps. Steps above `cfl` but within the
  /// limit are only counted. Defaults to `cfl`.
  std::optional<double> courant_limit;
  double t_end = 0.0;
  BoundaryCondition bc = BoundaryCondition::Transmissive;
  FluxOptions flux;

  /// Throws ConfigError.
  void validate() const;
};

/// Per-step record handed to observers.
struct StepInfo {
  std::size_t step = 0;  // 1-based count of completed steps
  double t = 0.0;
  double dt = 0.0;
  double max_courant = 0.0;
};

using Observer = std::function<void(const StepInfo&, const FieldSnapshot&)>;

/// Fluxes through the two domain ends during one step.
struct BoundaryFluxes {
  State left;
  State right;
};

struct RunResult {
  FieldSnapshot final;
  std::size_t steps = 0;
  /// Time integral of (F_right - F_left) over the run.
  State boundary_flux_integral;
  Diagnostics diagnostics;
  double peak_courant = 0.0;
  /// Steps whose Courant number exceeded the nominal cfl.
  std::size_t cfl_exceedances = 0;
};

/// Largest |lambda| dt/dx over the cells.
double max_courant(const Model& model, const FieldSnapshot& snapshot, const Grid& grid,
                   double dt);

/// cfl dx / max_i spectral radius. Throws NumericFailure when every speed
/// is zero.
double compute_dt(const Model& model, const FieldSnapshot& snapshot, const Grid& grid,
                  double cfl);

/// One forward-Euler update. Errors from the flux carry the interface index.
FieldSnapshot step(const Model& model, const SolverSpec& solver,
                   const FieldSnapshot& snapshot, const Grid& grid, double dt,
                   BoundaryCondition bc, const FluxOptions& options = {},
                   Diagnostics* diagnostics = nullptr,
                   BoundaryFluxes* boundary = nullptr);

/// Advances to config.t_end, truncating the last step to land on it. Fixed
/// steps are checked against the Courant limit before every update.
RunResult run(const Model& model, const RunConfig& config, const Grid& grid,
              const FieldSnapshot& initial,
              const std::vector<Observer>& observers = {});

/// Sum_i U_i dx per component.
State total_conserved(const FieldSnapshot& snapshot, const Grid& grid);

/// Cell averages of a piecewise-constant field that jumps at x = x_jump.
FieldSnapshot riemann_initial_data(const Grid& grid, const State& left,
                                   const State& right, double x_jump = 0.0);

/// Cell averages of sign(x), exact for cells straddling the origin.
FieldSnapshot sign_initial_data(const Grid& grid);

}  // namespace hybridflux
