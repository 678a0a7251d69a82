#pragma once

// Scalar dissipation functions d(nu) of the Riemann solver catalog.
//
// Every solver handled by the framework writes its interface flux as
//
//   f_hat(U_L, U_R) = 1/2 (f(U_L) + f(U_R)) + 1/2 D (U_L - U_R),
//
// and D is a matrix function of the flux Jacobian. In characteristic
// variables the scaled matrix (dt/dx) D acts as the scalar function d(nu)
// on each Courant number nu = lambda dt/dx, so comparing solvers reduces
// to comparing these functions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridflux {

enum class SolverKind {
  Upwind,
  LaxFriedrichs,
  Rusanov,
  HLL,
  LaxWendroff,
  P2,
  DOmega,
  HLLOmega,
  P2Omega,
};

std::string_view to_string(SolverKind kind);
/// Accepts the canonical names ("P2Omega") and lower-case/hyphenated
/// aliases ("p2-omega", "llf", "roe", "lw"). Throws std::invalid_argument.
SolverKind parse_solver_kind(std::string_view name);

/// True for the kinds carrying an omega parameter.
bool uses_omega(SolverKind kind);

struct SolverSpec {
  SolverKind kind = SolverKind::HLL;
  double omega = 0.0;

  /// Throws std::invalid_argument unless 0 <= omega <= 1.
  void validate() const;

  /// "HLL", "P2Omega(0.3)", ...
  std::string label() const;

  friend bool operator==(const SolverSpec&, const SolverSpec&) = default;
};

SolverSpec make_spec(SolverKind kind, double omega = 0.0);

/// Dimensionless extreme Courant numbers at one interface.
struct NuBounds {
  double nu_min = 0.0;
  double nu_max = 0.0;

  /// The wave the P2 tangency condition is imposed on. Ties go to nu_max.
  double nu_bar() const;

  /// Throws std::invalid_argument if non-finite or nu_min > nu_max.
  void validate() const;
};

/// Width below which the HLL-family chords are not evaluated.
double degeneracy_threshold(const NuBounds& bounds);
bool is_degenerate(const NuBounds& bounds);

/// Counters for silent fallbacks. Mergeable across workers.
struct Diagnostics {
  std::uint64_t degenerate_fallbacks = 0;
  std::uint64_t inverted_bounds = 0;
  std::uint64_t jacobian_retries = 0;

  Diagnostics& operator+=(const Diagnostics& other) {
    degenerate_fallbacks += other.degenerate_fallbacks;
    inverted_bounds += other.inverted_bounds;
    jacobian_retries += other.jacobian_retries;
    return *this;
  }
};

/// d(nu) = c0 + c1 nu + c2 nu^2
struct QuadCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double nu) const { return c0 + nu * (c1 + nu * c2); }
};

class UnsupportedKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Individual dissipation functions.
double d_upwind(double nu);
double d_omega(double nu, double omega);
/// Chord of |nu| through nu_min and nu_max. Requires non-degenerate bounds.
double d_hll(double nu, const NuBounds& bounds);
/// Rusanov constant max(|nu_min|, |nu_max|).
double d_rusanov(const NuBounds& bounds);

/// P2 curvature. nullopt for degenerate bounds: the caller has to fall
/// back to the Rusanov value.
std::optional<double> alpha(const NuBounds& bounds);
std::optional<double> beta(const NuBounds& bounds, double omega);

/// Evaluates d(nu) for the given solver. Degenerate bounds make the
/// HLL-family kinds return the Rusanov value and bump
/// diagnostics->degenerate_fallbacks when a sink is given.
double eval_d(const SolverSpec& spec, double nu, const NuBounds& bounds,
              Diagnostics* diagnostics = nullptr);

/// True for the kinds whose d(nu) is a single global polynomial in nu
/// (HLL, LaxWendroff, P2, HLLOmega, P2Omega), plus the constant kinds
/// LaxFriedrichs and Rusanov.
bool has_polynomial_form(SolverKind kind);

/// Polynomial coefficients of d for the HLL, LaxWendroff, P2, HLLOmega and
/// P2Omega kinds. Other kinds throw UnsupportedKindError. Degenerate bounds
/// yield the constant Rusanov polynomial.
QuadCoeffs quad_coeffs(const SolverSpec& spec, const NuBounds& bounds,
                       Diagnostics* diagnostics = nullptr);

/// Like quad_coeffs but also accepts the constant kinds LaxFriedrichs
/// (c0 = 1) and Rusanov (c0 = max |nu|).
QuadCoeffs flux_coeffs(const SolverSpec& spec, const NuBounds& bounds,
                       Diagnostics* diagnostics = nullptr);

struct DissipationSample {
  SolverSpec spec;
  double nu = 0.0;
  double d = 0.0;
};

/// Samples each spec on a uniform grid of n_samples points including both
/// end points. Rows are ordered by spec, then ascending nu.
std::vector<DissipationSample> sample_dissipation(
    const std::vector<SolverSpec>& specs, const NuBounds& bounds,
    double nu_lo, double nu_hi, std::size_t n_samples);

}  // namespace hybridflux
