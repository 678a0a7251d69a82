#include "hybridflux/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hybridflux/errors.hpp"

namespace hybridflux {

namespace {

// Value and directional derivative, enough arithmetic for the MHD flux.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
Dual operator*(double s, Dual a) { return {s * a.v, s * a.d}; }

template <class T>
using Vec7 = std::array<T, 7>;

template <class T>
Vec7<T> mhd_flux_impl(const Vec7<T>& u, double bx, double gamma) {
  const T& rho = u[0];
  const T vx = u[1] / rho;
  const T vy = u[2] / rho;
  const T vz = u[3] / rho;
  const T& by = u[4];
  const T& bz = u[5];
  const T& energy = u[6];

  const T kinetic = 0.5 * (rho * (vx * vx + vy * vy + vz * vz));
  const T magnetic = 0.5 * (by * by + bz * bz);
  const T p = (gamma - 1.0) * (energy - kinetic - magnetic);
  const T p_total = p + magnetic;

  return {
      u[1],
      u[1] * vx + p_total,
      u[2] * vx - bx * by,
      u[3] * vx - bx * bz,
      vx * by - bx * vy,
      vx * bz - bx * vz,
      (energy + p_total) * vx - bx * (by * vy + bz * vz),
  };
}

void check_length(const State& u, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(u.size()) != n) {
    std::ostringstream msg;
    msg << what << ": expected " << n << " components, got " << u.size();
    throw InvalidStateError(msg.str());
  }
}

void check_finite(const State& u) {
  if (!u.allFinite()) throw InvalidStateError("state has non-finite components");
}

Vec7<double> to_array(const State& u) {
  Vec7<double> a{};
  std::copy(u.data(), u.data() + 7, a.begin());
  return a;
}

State to_state(const Vec7<double>& a) {
  return Eigen::Map<const Eigen::VectorXd>(a.data(), 7);
}

}  // namespace

double WaveSpeeds::spectral_radius() const {
  return std::max(std::abs(min), std::abs(max));
}

State Model::jacobian_action(const State&, const State&) const {
  throw std::logic_error("model provides no analytic Jacobian action");
}

void Model::validate(const State& u) const {
  check_length(u, n_vars(), "state");
  check_finite(u);
}

bool Model::admissible(const State& u) const {
  try {
    validate(u);
    return true;
  } catch (const InvalidStateError&) {
    return false;
  }
}

std::vector<std::string> Model::variable_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_vars(); ++i) names.push_back("u" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------------------

AdvectionModel::AdvectionModel(double speed) : speed_(speed) {
  if (!std::isfinite(speed)) throw std::invalid_argument("advection speed must be finite");
  eigen_.vectors = Eigen::MatrixXd::Identity(1, 1);
  eigen_.vectors_inv = Eigen::MatrixXd::Identity(1, 1);
  eigen_.values = Eigen::VectorXd::Constant(1, speed);
}

State AdvectionModel::flux(const State& u) const { return speed_ * u; }

WaveSpeeds AdvectionModel::speeds(const State&) const { return {speed_, speed_}; }

State AdvectionModel::jacobian_action(const State&, const State& v) const {
  return speed_ * v;
}

AdvectionModel advection_model(double speed) { return AdvectionModel(speed); }

// ---------------------------------------------------------------------------

LinearSystemModel::LinearSystemModel(Eigen::MatrixXd matrix,
                                     Eigen::MatrixXd eigenvectors,
                                     Eigen::VectorXd eigenvalues)
    : matrix_(std::move(matrix)) {
  const auto n = matrix_.rows();
  if (n == 0 || matrix_.cols() != n || eigenvectors.rows() != n ||
      eigenvectors.cols() != n || eigenvalues.size() != n) {
    throw std::invalid_argument("linear system: inconsistent matrix shapes");
  }
  if (!matrix_.allFinite() || !eigenvectors.allFinite() || !eigenvalues.allFinite()) {
    throw std::invalid_argument("linear system: non-finite entries");
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(eigenvectors);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("linear system: eigenvector matrix is singular");
  }
  const Eigen::MatrixXd inverse = lu.inverse();
  const double residual =
      (matrix_ - eigenvectors * eigenvalues.asDiagonal() * inverse)
          .cwiseAbs()
          .rowwise()
          .sum()
          .maxCoeff();
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "linear system: A differs from T Lambda T^-1 by " << residual
        << " in the infinity norm";
    throw std::invalid_argument(msg.str());
  }

  // Sort the characteristic fields by speed.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eigenvalues[a] < eigenvalues[b];
  });
  eigen_.vectors.resize(n, n);
  eigen_.vectors_inv.resize(n, n);
  eigen_.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    eigen_.vectors.col(k) = eigenvectors.col(src);
    eigen_.vectors_inv.row(k) = inverse.row(src);
    eigen_.values[k] = eigenvalues[src];
  }
}

State LinearSystemModel::flux(const State& u) const { return matrix_ * u; }

WaveSpeeds LinearSystemModel::speeds(const State&) const {
  return {eigen_.values.minCoeff(), eigen_.values.maxCoeff()};
}

State LinearSystemModel::jacobian_action(const State&, const State& v) const {
  return matrix_ * v;
}

LinearSystemModel linear_system_model(const Eigen::MatrixXd& matrix,
                                      const Eigen::MatrixXd& eigenvectors,
                                      const Eigen::VectorXd& eigenvalues) {
  return LinearSystemModel(matrix, eigenvectors, eigenvalues);
}

// ---------------------------------------------------------------------------

State mhd_prim_to_cons(const MhdPrimitive& w, double gamma) {
  const double v2 = w.vx * w.vx + w.vt[0] * w.vt[0] + w.vt[1] * w.vt[1];
  const double b2 = w.bt[0] * w.bt[0] + w.bt[1] * w.bt[1];
  State u(7);
  u << w.rho, w.rho * w.vx, w.rho * w.vt[0], w.rho * w.vt[1], w.bt[0], w.bt[1],
      w.p / (gamma - 1.0) + 0.5 * w.rho * v2 + 0.5 * b2;
  return u;
}

MhdPrimitive mhd_cons_to_prim(const State& u, double gamma) {
  check_length(u, 7, "MHD state");
  check_finite(u);
  MhdPrimitive w;
  w.rho = u[0];
  if (!(w.rho >= kMhdDensityFloor)) {
    std::ostringstream msg;
    msg << "MHD state has non-positive density rho=" << w.rho;
    throw InvalidStateError(msg.str());
  }
  w.vx = u[1] / w.rho;
  w.vt = {u[2] / w.rho, u[3] / w.rho};
  w.bt = {u[4], u[5]};
  const double kinetic = 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]) / w.rho;
  const double magnetic = 0.5 * (u[4] * u[4] + u[5] * u[5]);
  w.p = (gamma - 1.0) * (u[6] - kinetic - magnetic);
  if (!(w.p >= kMhdPressureFloor)) {
    std::ostringstream msg;
    msg << "MHD state has non-positive pressure p=" << w.p << " (rho=" << w.rho
        << ", E=" << u[6] << ", kinetic=" << kinetic << ", magnetic=" << magnetic << ")";
    throw InvalidStateError(msg.str());
  }
  return w;
}

State mhd_flux(const State& u, double bx, double gamma) {
  mhd_cons_to_prim(u, gamma);
  return to_state(mhd_flux_impl(to_array(u), bx, gamma));
}

double mhd_fast_speed(const MhdPrimitive& w, double bx, double gamma) {
  const double a2 = gamma * w.p / w.rho;
  const double b2 = (bx * bx + w.bt[0] * w.bt[0] + w.bt[1] * w.bt[1]) / w.rho;
  const double bx2 = bx * bx / w.rho;
  const double sum = a2 + b2;
  const double disc = std::max(sum * sum - 4.0 * a2 * bx2, 0.0);
  return std::sqrt(0.5 * (sum + std::sqrt(disc)));
}

WaveSpeeds mhd_speeds(const State& u, double bx, double gamma) {
  const MhdPrimitive w = mhd_cons_to_prim(u, gamma);
  const double cf = mhd_fast_speed(w, bx, gamma);
  return {w.vx - cf, w.vx + cf};
}

MhdModel::MhdModel(double bx, double gamma) : bx_(bx), gamma_(gamma) {
  if (!std::isfinite(bx)) throw std::invalid_argument("Bx must be finite");
  if (!(gamma > 1.0)) throw std::invalid_argument("gamma must exceed 1");
}

State MhdModel::flux(const State& u) const { return mhd_flux(u, bx_, gamma_); }

WaveSpeeds MhdModel::speeds(const State& u) const { return mhd_speeds(u, bx_, gamma_); }

State MhdModel::jacobian_action(const State& u, const State& v) const {
  mhd_cons_to_prim(u, gamma_);
  check_length(v, 7, "MHD direction");
  Vec7<Dual> seeded;
  for (std::size_t i = 0; i < 7; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    seeded[i] = {u[k], v[k]};
  }
  const Vec7<Dual> f = mhd_flux_impl(seeded, bx_, gamma_);
  State out(7);
  for (std::size_t i = 0; i < 7; ++i) out[static_cast<Eigen::Index>(i)] = f[i].d;
  return out;
}

void MhdModel::validate(const State& u) const { mhd_cons_to_prim(u, gamma_); }

std::vector<std::string> MhdModel::variable_names() const {
  return {"rho", "mx", "my", "mz", "By", "Bz", "E"};
}

}  // namespace hybridflux
