#include "hybridflux/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridflux/errors.hpp"

namespace hybridflux {

namespace {

constexpr double kLastStepTolerance = 1e-10;
// A final step may stretch up to kLastStepTolerance to land on t_end.
constexpr double kCflSlack = 2.0 * kLastStepTolerance;

void check_shape(const Model& model, const FieldSnapshot& snapshot, const Grid& grid) {
  if (snapshot.cells.size() != grid.n_cells) {
    std::ostringstream msg;
    msg << "snapshot has " << snapshot.cells.size() << " cells, grid has "
        << grid.n_cells;
    throw std::invalid_argument(msg.str());
  }
  for (const auto& u : snapshot.cells) {
    if (static_cast<std::size_t>(u.size()) != model.n_vars()) {
      throw std::invalid_argument("snapshot state length does not match the model");
    }
  }
}

template <class Fn>
auto at_cell(std::size_t i, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidStateError& e) {
    std::ostringstream msg;
    msg << "cell " << i << ": " << e.what();
    throw NumericFailure(msg.str());
  }
}

}  // namespace

Grid::Grid(double lo, double hi, std::size_t n) : x_lo(lo), x_hi(hi), n_cells(n) {
  if (n == 0) throw std::invalid_argument("grid needs at least one cell");
  if (!(lo < hi)) throw std::invalid_argument("grid needs x_lo < x_hi");
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "transmissive") return BoundaryCondition::Transmissive;
  if (name == "periodic") return BoundaryCondition::Periodic;
  throw std::invalid_argument("unknown boundary condition '" + std::string(name) + "'");
}

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Periodic ? "periodic" : "transmissive";
}

void RunConfig::validate() const {
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (fixed_dt && !(*fixed_dt > 0.0 && std::isfinite(*fixed_dt))) {
    throw ConfigError("fixed dt must be positive and finite");
  }
  if (courant_limit && !(*courant_limit >= cfl)) {
    throw ConfigError("courant_limit must not be below cfl");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("t_end must be non-negative and finite");
  }
}

double max_courant(const Model& model, const FieldSnapshot& snapshot, const Grid& grid,
                   double dt) {
  double fastest = 0.0;
  for (std::size_t i = 0; i < snapshot.cells.size(); ++i) {
    const WaveSpeeds s = at_cell(i, [&] { return model.speeds(snapshot.cells[i]); });
    fastest = std::max(fastest, s.spectral_radius());
  }
  return fastest * dt / grid.dx();
}

double compute_dt(const Model& model, const FieldSnapshot& snapshot, const Grid& grid,
                  double cfl) {
  const double unit = max_courant(model, snapshot, grid, 1.0);
  if (!(unit > 0.0)) throw NumericFailure("all wave speeds vanish; no time step");
  return cfl / unit;
}

FieldSnapshot step(const Model& model, const SolverSpec& solver,
                   const FieldSnapshot& snapshot, const Grid& grid, double dt,
                   BoundaryCondition bc, const FluxOptions& options,
                   Diagnostics* diagnostics, BoundaryFluxes* boundary) {
  check_shape(model, snapshot, grid);
  const std::size_t n = grid.n_cells;
  const double dt_over_dx = dt / grid.dx();

  std::vector<State> fluxes(n);
  std::vector<WaveSpeeds> speeds(n);
  for (std::size_t i = 0; i < n; ++i) {
    at_cell(i, [&] {
      fluxes[i] = model.flux(snapshot.cells[i]);
      speeds[i] = model.speeds(snapshot.cells[i]);
      return 0;
    });
  }

  // Face j separates cells j-1 and j; faces 0 and n see the ghost cells.
  const bool periodic = bc == BoundaryCondition::Periodic;
  auto left_of = [&](std::size_t face) { return face == 0 ? (periodic ? n - 1 : 0) : face - 1; };
  auto right_of = [&](std::size_t face) { return face == n ? (periodic ? 0 : n - 1) : face; };

  std::vector<State> face_flux(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t l = left_of(j);
    const std::size_t r = right_of(j);
    const InterfaceStates states{snapshot.cells[l], snapshot.cells[r], fluxes[l],
                                 fluxes[r],         speeds[l],         speeds[r]};
    try {
      face_flux[j] = numerical_flux(model, solver, states, dt_over_dx, options, diagnostics);
    } catch (const NumericFailure& e) {
      std::ostringstream msg;
      msg << "interface " << j << ": " << e.what();
      throw NumericFailure(msg.str(), j);
    } catch (const InvalidStateError& e) {
      std::ostringstream msg;
      msg << "interface " << j << ": " << e.what();
      throw NumericFailure(msg.str(), j);
    }
  }

  FieldSnapshot next;
  next.t = snapshot.t + dt;
  next.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    next.cells[i] = snapshot.cells[i] - dt_over_dx * (face_flux[i + 1] - face_flux[i]);
    if (!next.cells[i].allFinite()) {
      std::ostringstream msg;
      msg << "cell " << i << ": update is not finite";
      throw NumericFailure(msg.str());
    }
  }
  if (boundary != nullptr) {
    boundary->left = face_flux.front();
    boundary->right = face_flux.back();
  }
  return next;
}

RunResult run(const Model& model, const RunConfig& config, const Grid& grid,
              const FieldSnapshot& initial, const std::vector<Observer>& observers) {
  config.validate();
  check_shape(model, initial, grid);

  RunResult result;
  result.final = initial;
  result.boundary_flux_integral = State::Zero(static_cast<Eigen::Index>(model.n_vars()));

  double t = initial.t;
  while (t < config.t_end) {
    const std::size_t step_index = result.steps + 1;
    try {
      double dt = config.fixed_dt ? *config.fixed_dt
                                  : compute_dt(model, result.final, grid, config.cfl);
      const double remaining = config.t_end - t;
      const bool last = remaining <= dt * (1.0 + kLastStepTolerance);
      if (last) dt = remaining;

      const double courant = max_courant(model, result.final, grid, dt);
      const double limit = config.courant_limit.value_or(config.cfl);
      if (courant > limit * (1.0 + kCflSlack)) {
        std::ostringstream msg;
        msg << "Courant number " << courant << " exceeds the limit " << limit;
        throw NumericFailure(msg.str());
      }
      if (courant > config.cfl * (1.0 + kCflSlack)) ++result.cfl_exceedances;
      result.peak_courant = std::max(result.peak_courant, courant);

      BoundaryFluxes boundary;
      FieldSnapshot next = step(model, config.solver, result.final, grid, dt, config.bc,
                                config.flux, &result.diagnostics, &boundary);
      next.t = last ? config.t_end : t + dt;
      result.boundary_flux_integral += dt * (boundary.right - boundary.left);
      result.final = std::move(next);
      result.steps = step_index;
      t = result.final.t;

      const StepInfo info{step_index, t, dt, courant};
      for (const auto& observer : observers) observer(info, result.final);
    } catch (const NumericFailure& e) {
      std::ostringstream msg;
      msg << "step " << step_index << ": " << e.what();
      throw NumericFailure(msg.str(), e.interface_index(), step_index);
    }
  }
  return result;
}

State total_conserved(const FieldSnapshot& snapshot, const Grid& grid) {
  if (snapshot.cells.empty()) return {};
  State total = State::Zero(snapshot.cells.front().size());
  for (const auto& u : snapshot.cells) total += u;
  return total * grid.dx();
}

FieldSnapshot riemann_initial_data(const Grid& grid, const State& left,
                                   const State& right, double x_jump) {
  FieldSnapshot snapshot;
  snapshot.cells.reserve(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    const double a = grid.face(i);
    const double b = grid.face(i + 1);
    if (b <= x_jump) {
      snapshot.cells.push_back(left);
    } else if (a >= x_jump) {
      snapshot.cells.push_back(right);
    } else {
      const double w = (x_jump - a) / (b - a);
      snapshot.cells.push_back(w * left + (1.0 - w) * right);
    }
  }
  return snapshot;
}

FieldSnapshot sign_initial_data(const Grid& grid) {
  return riemann_initial_data(grid, State::Constant(1, -1.0), State::Constant(1, 1.0));
}

}  // namespace hybridflux
