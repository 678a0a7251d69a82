#include "hybridflux/dissipation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace hybridflux {

namespace {

struct KindName {
  SolverKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 9> kKindNames{{
    {SolverKind::Upwind, "Upwind"},
    {SolverKind::LaxFriedrichs, "LaxFriedrichs"},
    {SolverKind::Rusanov, "Rusanov"},
    {SolverKind::HLL, "HLL"},
    {SolverKind::LaxWendroff, "LaxWendroff"},
    {SolverKind::P2, "P2"},
    {SolverKind::DOmega, "DOmega"},
    {SolverKind::HLLOmega, "HLLOmega"},
    {SolverKind::P2Omega, "P2Omega"},
}};

std::string normalize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// Parabola vanishing at both bounds.
double bubble(double nu, const NuBounds& b) {
  return (nu - b.nu_min) * (nu - b.nu_max);
}

// Chord of d_omega through the two bounds (HLLomega).
double d_hll_omega(double nu, const NuBounds& b, double omega) {
  const double lo = d_omega(b.nu_min, omega);
  const double hi = d_omega(b.nu_max, omega);
  return lo + (hi - lo) / (b.nu_max - b.nu_min) * (nu - b.nu_min);
}

QuadCoeffs hll_coeffs(const NuBounds& b) {
  const double lo = b.nu_min;
  const double hi = b.nu_max;
  const double width = lo - hi;
  return {-(std::abs(lo) * hi - std::abs(hi) * lo) / width,
          (std::abs(lo) - std::abs(hi)) / width, 0.0};
}

QuadCoeffs add_bubble(QuadCoeffs c, const NuBounds& b, double weight) {
  c.c0 += weight * (b.nu_min * b.nu_max);
  c.c1 -= weight * (b.nu_min + b.nu_max);
  c.c2 += weight;
  return c;
}

QuadCoeffs rusanov_coeffs(const NuBounds& b) { return {d_rusanov(b), 0.0, 0.0}; }

bool hll_family(SolverKind kind) {
  return kind == SolverKind::HLL || kind == SolverKind::P2 ||
         kind == SolverKind::HLLOmega || kind == SolverKind::P2Omega;
}

void note_fallback(Diagnostics* diagnostics) {
  if (diagnostics != nullptr) ++diagnostics->degenerate_fallbacks;
}

}  // namespace

std::string_view to_string(SolverKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "Unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  const std::string key = normalize(name);
  for (const auto& entry : kKindNames) {
    if (normalize(entry.name) == key) return entry.kind;
  }
  if (key == "roe" || key == "up") return SolverKind::Upwind;
  if (key == "lf") return SolverKind::LaxFriedrichs;
  if (key == "llf" || key == "locallaxfriedrichs") return SolverKind::Rusanov;
  if (key == "lw") return SolverKind::LaxWendroff;
  if (key == "domega" || key == "dw") return SolverKind::DOmega;
  if (key == "hllw") return SolverKind::HLLOmega;
  if (key == "p2w") return SolverKind::P2Omega;
  throw std::invalid_argument("unknown solver kind '" + std::string(name) + "'");
}

bool uses_omega(SolverKind kind) {
  return kind == SolverKind::DOmega || kind == SolverKind::HLLOmega ||
         kind == SolverKind::P2Omega;
}

void SolverSpec::validate() const {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    std::ostringstream msg;
    msg << "omega must lie in [0, 1], got " << omega;
    throw std::invalid_argument(msg.str());
  }
}

std::string SolverSpec::label() const {
  std::string out(to_string(kind));
  if (uses_omega(kind)) {
    std::ostringstream os;
    os << '(' << omega << ')';
    out += os.str();
  }
  return out;
}

SolverSpec make_spec(SolverKind kind, double omega) {
  SolverSpec spec{kind, omega};
  spec.validate();
  return spec;
}

double NuBounds::nu_bar() const {
  return std::abs(nu_max) >= std::abs(nu_min) ? nu_max : nu_min;
}

void NuBounds::validate() const {
  if (!std::isfinite(nu_min) || !std::isfinite(nu_max)) {
    throw std::invalid_argument("Courant-number bounds must be finite");
  }
  if (nu_min > nu_max) {
    std::ostringstream msg;
    msg << "Courant-number bounds out of order: nu_min=" << nu_min
        << " > nu_max=" << nu_max;
    throw std::invalid_argument(msg.str());
  }
}

double degeneracy_threshold(const NuBounds& bounds) {
  return 1e-12 * std::max({1.0, std::abs(bounds.nu_min), std::abs(bounds.nu_max)});
}

bool is_degenerate(const NuBounds& bounds) {
  return bounds.nu_max - bounds.nu_min <= degeneracy_threshold(bounds);
}

double d_upwind(double nu) { return std::abs(nu); }

double d_omega(double nu, double omega) {
  return omega * nu * nu + (1.0 - omega) * std::abs(nu);
}

double d_hll(double nu, const NuBounds& b) {
  const double lo = b.nu_min;
  const double hi = b.nu_max;
  return (std::abs(lo) - std::abs(hi)) / (lo - hi) * nu -
         (std::abs(lo) * hi - std::abs(hi) * lo) / (lo - hi);
}

double d_rusanov(const NuBounds& b) {
  return std::max(std::abs(b.nu_min), std::abs(b.nu_max));
}

std::optional<double> alpha(const NuBounds& b) {
  if (is_degenerate(b)) return std::nullopt;
  const double width = b.nu_max - b.nu_min;
  const double a = (width - std::abs(std::abs(b.nu_max) - std::abs(b.nu_min))) /
                   (width * width);
  // The numerator is width - ||hi| - |lo|| >= 0 up to rounding.
  return std::max(a, 0.0);
}

std::optional<double> beta(const NuBounds& b, double omega) {
  const auto a = alpha(b);
  if (!a) return std::nullopt;
  return omega + (1.0 - omega) * *a;
}

double eval_d(const SolverSpec& spec, double nu, const NuBounds& bounds,
              Diagnostics* diagnostics) {
  if (spec.kind == SolverKind::P2Omega && spec.omega == 1.0) return nu * nu;
  if (hll_family(spec.kind) && is_degenerate(bounds)) {
    note_fallback(diagnostics);
    return d_rusanov(bounds);
  }

  switch (spec.kind) {
    case SolverKind::Upwind:
      return d_upwind(nu);
    case SolverKind::LaxFriedrichs:
      return 1.0;
    case SolverKind::Rusanov:
      return d_rusanov(bounds);
    case SolverKind::HLL:
      return d_hll(nu, bounds);
    case SolverKind::LaxWendroff:
      return nu * nu;
    case SolverKind::P2:
      return d_hll(nu, bounds) + *alpha(bounds) * bubble(nu, bounds);
    case SolverKind::DOmega:
      return d_omega(nu, spec.omega);
    case SolverKind::HLLOmega:
      return d_hll_omega(nu, bounds, spec.omega);
    case SolverKind::P2Omega:
      if (spec.omega == 0.0) {
        return d_hll(nu, bounds) + *alpha(bounds) * bubble(nu, bounds);
      }
      return d_hll_omega(nu, bounds, spec.omega) +
             *beta(bounds, spec.omega) * bubble(nu, bounds);
  }
  return d_rusanov(bounds);
}

bool has_polynomial_form(SolverKind kind) {
  return kind != SolverKind::Upwind && kind != SolverKind::DOmega;
}

QuadCoeffs quad_coeffs(const SolverSpec& spec, const NuBounds& bounds,
                       Diagnostics* diagnostics) {
  switch (spec.kind) {
    case SolverKind::LaxWendroff:
      return {0.0, 0.0, 1.0};
    case SolverKind::HLL:
    case SolverKind::P2:
    case SolverKind::HLLOmega:
    case SolverKind::P2Omega:
      break;
    default:
      throw UnsupportedKindError("no global polynomial form for solver " +
                                 std::string(to_string(spec.kind)));
  }
  if (spec.kind == SolverKind::P2Omega && spec.omega == 1.0) return {0.0, 0.0, 1.0};
  if (is_degenerate(bounds)) {
    note_fallback(diagnostics);
    return rusanov_coeffs(bounds);
  }

  const QuadCoeffs hll = hll_coeffs(bounds);
  if (spec.kind == SolverKind::HLL) return hll;
  if (spec.kind == SolverKind::P2) return add_bubble(hll, bounds, *alpha(bounds));

  // The chord of nu^2 through the bounds is (nu_min + nu_max) nu - nu_min nu_max,
  // so HLLomega is the omega-weighted mix of that chord and the HLL chord.
  const double w = spec.omega;
  const QuadCoeffs hll_omega{
      -w * (bounds.nu_min * bounds.nu_max) + (1.0 - w) * hll.c0,
      w * (bounds.nu_min + bounds.nu_max) + (1.0 - w) * hll.c1, 0.0};
  if (spec.kind == SolverKind::HLLOmega) return hll_omega;
  return add_bubble(hll_omega, bounds, *beta(bounds, w));
}

QuadCoeffs flux_coeffs(const SolverSpec& spec, const NuBounds& bounds,
                       Diagnostics* diagnostics) {
  if (spec.kind == SolverKind::LaxFriedrichs) return {1.0, 0.0, 0.0};
  if (spec.kind == SolverKind::Rusanov) return rusanov_coeffs(bounds);
  return quad_coeffs(spec, bounds, diagnostics);
}

std::vector<DissipationSample> sample_dissipation(
    const std::vector<SolverSpec>& specs, const NuBounds& bounds,
    double nu_lo, double nu_hi, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be at least 2");
  if (!(nu_lo < nu_hi)) throw std::invalid_argument("nu_lo must be below nu_hi");
  bounds.validate();

  std::vector<DissipationSample> rows;
  rows.reserve(specs.size() * n_samples);
  const double step = (nu_hi - nu_lo) / static_cast<double>(n_samples - 1);
  for (const auto& spec : specs) {
    spec.validate();
    for (std::size_t i = 0; i < n_samples; ++i) {
      const double nu =
          i + 1 == n_samples ? nu_hi : nu_lo + static_cast<double>(i) * step;
      rows.push_back({spec, nu, eval_d(spec, nu, bounds)});
    }
  }
  return rows;
}

}  // namespace hybridflux
