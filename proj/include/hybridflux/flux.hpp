#pragma once

// Interface numerical flux
//
//   f_hat = 1/2 (f_L + f_R) + 1/2 D (U_L - U_R)
//
// for dissipation matrices that are polynomials of the Roe matrix A~,
// (dt/dx) D = c0 I + c1 (dt/dx) A~ + c2 (dt/dx)^2 A~^2. The products are
// formed without any eigendecomposition: A~ dU is the flux jump f_L - f_R
// (Roe property) and A~^2 dU is approximated by A(u_bar) (f_L - f_R) at the
// arithmetic-mean state.

#include "hybridflux/dissipation.hpp"
#include "hybridflux/models.hpp"

namespace hybridflux {

enum class BoundsMode {
  /// nu_min from lambda_min(U_L), nu_max from lambda_max(U_R).
  Paper,
  /// min/max over both adjacent states.
  BothStates,
};

enum class JacobianMode {
  /// Analytic action when the model has one, central differences otherwise.
  Automatic,
  /// Always central differences (two extra flux evaluations).
  Central,
  /// Always one-sided differences (one extra flux evaluation).
  OneSided,
};

BoundsMode parse_bounds_mode(std::string_view name);
std::string_view to_string(BoundsMode mode);
JacobianMode parse_jacobian_mode(std::string_view name);
std::string_view to_string(JacobianMode mode);

struct FluxOptions {
  BoundsMode bounds_mode = BoundsMode::Paper;
  JacobianMode jacobian_mode = JacobianMode::Automatic;
};

/// Precomputed per-cell data for the two states of one interface.
struct InterfaceStates {
  const State& u_left;
  const State& u_right;
  const State& f_left;
  const State& f_right;
  WaveSpeeds speeds_left;
  WaveSpeeds speeds_right;
};

/// Courant-number bounds used by `spec` at an interface. Rusanov always
/// takes the spectral radius over both states. An inverted paper-mode pair
/// (lambda_min(U_L) > lambda_max(U_R)) falls back to both-state bounds and
/// is counted in diagnostics->inverted_bounds.
NuBounds interface_bounds(const SolverSpec& spec, const WaveSpeeds& left,
                          const WaveSpeeds& right, double dt_over_dx,
                          BoundsMode mode, Diagnostics* diagnostics = nullptr);

/// Perturbation size of the Jacobian-free difference quotient.
double jacobian_free_epsilon(const State& u_bar);

/// A(u_bar) v. Uses the model's analytic action unless `mode` forces finite
/// differences. Finite differences shrink epsilon by 10 up to four times
/// when a perturbed state is inadmissible, then throw NumericFailure.
State jacobian_action(const Model& model, const State& u_bar, const State& v,
                      JacobianMode mode = JacobianMode::Automatic,
                      Diagnostics* diagnostics = nullptr);

/// f_hat(U_L, U_R). Throws UnsupportedKindError for Upwind/DOmega on models
/// without an exact eigensystem and NumericFailure on non-finite results.
State numerical_flux(const Model& model, const SolverSpec& spec, const State& u_left,
                     const State& u_right, double dt_over_dx,
                     const FluxOptions& options = {},
                     Diagnostics* diagnostics = nullptr);

State numerical_flux(const Model& model, const SolverSpec& spec,
                     const InterfaceStates& states, double dt_over_dx,
                     const FluxOptions& options = {},
                     Diagnostics* diagnostics = nullptr);

/// Reference flux built from the exact similarity transform
/// D = (dx/dt) T diag(d(nu_i)) T^-1. Linear models only; throws
/// UnsupportedKindError otherwise.
State spectral_flux_oracle(const Model& model, const SolverSpec& spec,
                           const State& u_left, const State& u_right,
                           double dt_over_dx, const FluxOptions& options = {});

}  // namespace hybridflux
