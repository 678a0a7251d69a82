#include "hybridflux/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hybridflux/errors.hpp"

namespace hybridflux {

namespace {

constexpr int kMaxEpsilonRetries = 4;

// (dt/dx) D dU through the exact eigensystem: T diag(d(nu_i)) T^-1 dU.
State spectral_dissipation(const Eigensystem& eig, const SolverSpec& spec,
                           const NuBounds& bounds, const State& jump,
                           double dt_over_dx, Diagnostics* diagnostics) {
  Eigen::VectorXd characteristic = eig.vectors_inv * jump;
  for (Eigen::Index k = 0; k < characteristic.size(); ++k) {
    characteristic[k] *= eval_d(spec, eig.values[k] * dt_over_dx, bounds, diagnostics);
  }
  return eig.vectors * characteristic;
}

void check_dt_over_dx(double dt_over_dx) {
  if (!(dt_over_dx > 0.0) || !std::isfinite(dt_over_dx)) {
    std::ostringstream msg;
    msg << "dt/dx must be positive and finite, got " << dt_over_dx;
    throw std::invalid_argument(msg.str());
  }
}

State assemble(const State& f_left, const State& f_right, const State& dissipation) {
  State out = 0.5 * (f_left + f_right) + 0.5 * dissipation;
  if (!out.allFinite()) throw NumericFailure("numerical flux is not finite");
  return out;
}

}  // namespace

BoundsMode parse_bounds_mode(std::string_view name) {
  if (name == "paper") return BoundsMode::Paper;
  if (name == "both_states" || name == "both-states") return BoundsMode::BothStates;
  throw std::invalid_argument("unknown bounds mode '" + std::string(name) + "'");
}

std::string_view to_string(BoundsMode mode) {
  return mode == BoundsMode::Paper ? "paper" : "both_states";
}

JacobianMode parse_jacobian_mode(std::string_view name) {
  if (name == "auto" || name == "automatic") return JacobianMode::Automatic;
  if (name == "central") return JacobianMode::Central;
  if (name == "one_sided" || name == "one-sided") return JacobianMode::OneSided;
  throw std::invalid_argument("unknown Jacobian mode '" + std::string(name) + "'");
}

std::string_view to_string(JacobianMode mode) {
  switch (mode) {
    case JacobianMode::Automatic: return "auto";
    case JacobianMode::Central: return "central";
    case JacobianMode::OneSided: return "one_sided";
  }
  return "auto";
}

NuBounds interface_bounds(const SolverSpec& spec, const WaveSpeeds& left,
                          const WaveSpeeds& right, double dt_over_dx,
                          BoundsMode mode, Diagnostics* diagnostics) {
  const NuBounds both{std::min(left.min, right.min) * dt_over_dx,
                      std::max(left.max, right.max) * dt_over_dx};
  if (spec.kind == SolverKind::Rusanov || mode == BoundsMode::BothStates) return both;

  const NuBounds paper{left.min * dt_over_dx, right.max * dt_over_dx};
  if (paper.nu_min > paper.nu_max) {
    if (diagnostics != nullptr) ++diagnostics->inverted_bounds;
    return both;
  }
  return paper;
}

double jacobian_free_epsilon(const State& u_bar) {
  return std::sqrt(std::numeric_limits<double>::epsilon()) *
         (1.0 + u_bar.lpNorm<Eigen::Infinity>());
}

State jacobian_action(const Model& model, const State& u_bar, const State& v,
                      JacobianMode mode, Diagnostics* diagnostics) {
  const double norm = v.norm();
  if (norm == 0.0) return State::Zero(v.size());
  if (mode == JacobianMode::Automatic && model.has_jacobian_action()) {
    return model.jacobian_action(u_bar, v);
  }

  const State direction = v / norm;
  double eps = jacobian_free_epsilon(u_bar);
  const bool central = mode != JacobianMode::OneSided;
  for (int attempt = 0; attempt <= kMaxEpsilonRetries; ++attempt, eps *= 0.1) {
    const State plus = u_bar + eps * direction;
    if (central) {
      const State minus = u_bar - eps * direction;
      if (model.admissible(plus) && model.admissible(minus)) {
        return (model.flux(plus) - model.flux(minus)) * (norm / (2.0 * eps));
      }
    } else if (model.admissible(plus)) {
      return (model.flux(plus) - model.flux(u_bar)) * (norm / eps);
    }
    if (diagnostics != nullptr && attempt < kMaxEpsilonRetries) {
      ++diagnostics->jacobian_retries;
    }
  }
  throw NumericFailure("Jacobian-free difference left the admissible set");
}

State numerical_flux(const Model& model, const SolverSpec& spec,
                     const InterfaceStates& s, double dt_over_dx,
                     const FluxOptions& options, Diagnostics* diagnostics) {
  check_dt_over_dx(dt_over_dx);
  const NuBounds bounds = interface_bounds(spec, s.speeds_left, s.speeds_right,
                                           dt_over_dx, options.bounds_mode, diagnostics);
  const State jump = s.u_left - s.u_right;

  if (!has_polynomial_form(spec.kind)) {
    const Eigensystem* eig = model.eigensystem();
    if (eig == nullptr) {
      throw UnsupportedKindError(std::string(to_string(spec.kind)) +
                                 " needs the exact eigensystem; the model has none");
    }
    const State scaled =
        spectral_dissipation(*eig, spec, bounds, jump, dt_over_dx, diagnostics);
    return assemble(s.f_left, s.f_right, scaled / dt_over_dx);
  }

  const QuadCoeffs c = flux_coeffs(spec, bounds, diagnostics);
  const State flux_jump = s.f_left - s.f_right;
  State dissipation = (c.c0 / dt_over_dx) * jump;
  if (c.c1 != 0.0) dissipation += c.c1 * flux_jump;
  if (c.c2 != 0.0) {
    const State u_bar = 0.5 * (s.u_left + s.u_right);
    dissipation += (c.c2 * dt_over_dx) *
                   jacobian_action(model, u_bar, flux_jump, options.jacobian_mode,
                                   diagnostics);
  }
  return assemble(s.f_left, s.f_right, dissipation);
}

State numerical_flux(const Model& model, const SolverSpec& spec, const State& u_left,
                     const State& u_right, double dt_over_dx,
                     const FluxOptions& options, Diagnostics* diagnostics) {
  const State f_left = model.flux(u_left);
  const State f_right = model.flux(u_right);
  const InterfaceStates states{u_left,  u_right, f_left, f_right,
                               model.speeds(u_left), model.speeds(u_right)};
  return numerical_flux(model, spec, states, dt_over_dx, options, diagnostics);
}

State spectral_flux_oracle(const Model& model, const SolverSpec& spec,
                           const State& u_left, const State& u_right,
                           double dt_over_dx, const FluxOptions& options) {
  check_dt_over_dx(dt_over_dx);
  const Eigensystem* eig = model.eigensystem();
  if (eig == nullptr) {
    throw UnsupportedKindError("spectral flux oracle needs a linear model");
  }
  const NuBounds bounds = interface_bounds(spec, model.speeds(u_left),
                                           model.speeds(u_right), dt_over_dx,
                                           options.bounds_mode);
  const State scaled =
      spectral_dissipation(*eig, spec, bounds, u_left - u_right, dt_over_dx, nullptr);
  return assemble(model.flux(u_left), model.flux(u_right), scaled / dt_over_dx);
}

}  // namespace hybridflux
