#pragma once

// Hyperbolic models: scalar advection, constant-coefficient linear systems
// and one-dimensional ideal MHD.

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hybridflux {

/// Conserved quantities of one cell.
using State = Eigen::VectorXd;

struct WaveSpeeds {
  double min = 0.0;
  double max = 0.0;

  /// Spectral radius max(|min|, |max|).
  double spectral_radius() const;
};

/// Exact eigensystem of a constant flux Jacobian, A = T diag(lambda) T^-1,
/// with ascending eigenvalues.
struct Eigensystem {
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd vectors_inv;
  Eigen::VectorXd values;
};

class Model {
 public:
  virtual ~Model() = default;

  virtual std::size_t n_vars() const = 0;
  virtual State flux(const State& u) const = 0;
  virtual WaveSpeeds speeds(const State& u) const = 0;

  /// Analytic A(u) v, when the model has one.
  virtual bool has_jacobian_action() const { return false; }
  virtual State jacobian_action(const State& u, const State& v) const;

  /// Present only for linear models.
  virtual const Eigensystem* eigensystem() const { return nullptr; }

  /// Throws InvalidStateError for inadmissible states.
  virtual void validate(const State& u) const;
  bool admissible(const State& u) const;

  virtual std::vector<std::string> variable_names() const;
};

class AdvectionModel final : public Model {
 public:
  explicit AdvectionModel(double speed);

  double speed() const { return speed_; }

  std::size_t n_vars() const override { return 1; }
  State flux(const State& u) const override;
  WaveSpeeds speeds(const State& u) const override;
  bool has_jacobian_action() const override { return true; }
  State jacobian_action(const State& u, const State& v) const override;
  const Eigensystem* eigensystem() const override { return &eigen_; }
  std::vector<std::string> variable_names() const override { return {"u"}; }

 private:
  double speed_;
  Eigensystem eigen_;
};

/// f(U) = A U with A = T diag(lambda) T^-1.
class LinearSystemModel final : public Model {
 public:
  /// Throws std::invalid_argument when ||A - T Lambda T^-1||_inf > 1e-10,
  /// T is singular or an eigenvalue is complex/non-finite.
  LinearSystemModel(Eigen::MatrixXd matrix, Eigen::MatrixXd eigenvectors,
                    Eigen::VectorXd eigenvalues);

  const Eigen::MatrixXd& matrix() const { return matrix_; }

  std::size_t n_vars() const override { return static_cast<std::size_t>(matrix_.rows()); }
  State flux(const State& u) const override;
  WaveSpeeds speeds(const State& u) const override;
  bool has_jacobian_action() const override { return true; }
  State jacobian_action(const State& u, const State& v) const override;
  const Eigensystem* eigensystem() const override { return &eigen_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigensystem eigen_;
};

AdvectionModel advection_model(double speed);
LinearSystemModel linear_system_model(const Eigen::MatrixXd& matrix,
                                      const Eigen::MatrixXd& eigenvectors,
                                      const Eigen::VectorXd& eigenvalues);

// ---------------------------------------------------------------------------
// Ideal MHD, conserved ordering (rho, rho vx, rho vy, rho vz, By, Bz, E).
// Bx and gamma are model constants; E excludes the Bx^2/2 contribution.

inline constexpr double kMhdDefaultGamma = 5.0 / 3.0;
inline constexpr double kMhdDensityFloor = 1e-12;
inline constexpr double kMhdPressureFloor = 1e-12;

struct MhdPrimitive {
  double rho = 1.0;
  double vx = 0.0;
  std::array<double, 2> vt{0.0, 0.0};
  double p = 1.0;
  std::array<double, 2> bt{0.0, 0.0};
};

State mhd_prim_to_cons(const MhdPrimitive& w, double gamma = kMhdDefaultGamma);
/// Throws InvalidStateError when density or pressure is below the floor.
MhdPrimitive mhd_cons_to_prim(const State& u, double gamma = kMhdDefaultGamma);
State mhd_flux(const State& u, double bx, double gamma = kMhdDefaultGamma);
/// Fast magnetosonic extremes vx -/+ c_f.
WaveSpeeds mhd_speeds(const State& u, double bx, double gamma = kMhdDefaultGamma);
double mhd_fast_speed(const MhdPrimitive& w, double bx, double gamma = kMhdDefaultGamma);

class MhdModel final : public Model {
 public:
  explicit MhdModel(double bx, double gamma = kMhdDefaultGamma);

  double bx() const { return bx_; }
  double gamma() const { return gamma_; }

  std::size_t n_vars() const override { return 7; }
  State flux(const State& u) const override;
  WaveSpeeds speeds(const State& u) const override;
  /// Exact directional derivative of the flux (forward-mode differentiation).
  bool has_jacobian_action() const override { return true; }
  State jacobian_action(const State& u, const State& v) const override;
  void validate(const State& u) const override;
  std::vector<std::string> variable_names() const override;

 private:
  double bx_;
  double gamma_;
};

/// Same physics as MhdModel but without the analytic Jacobian action, so
/// the flux assembly has to fall back to finite differences.
class MhdModelJacobianFree final : public Model {
 public:
  explicit MhdModelJacobianFree(double bx, double gamma = kMhdDefaultGamma)
      : inner_(bx, gamma) {}

  std::size_t n_vars() const override { return 7; }
  State flux(const State& u) const override { return inner_.flux(u); }
  WaveSpeeds speeds(const State& u) const override { return inner_.speeds(u); }
  void validate(const State& u) const override { inner_.validate(u); }
  std::vector<std::string> variable_names() const override {
    return inner_.variable_names();
  }

 private:
  MhdModel inner_;
};

}  // namespace hybridflux
