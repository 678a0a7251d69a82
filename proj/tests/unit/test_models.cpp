#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hybridflux/errors.hpp"
#include "hybridflux/models.hpp"
#include "oracles/oracles.hpp"

using namespace hybridflux;

namespace {

State vec(std::initializer_list<double> values) {
  State u(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) u[i++] = v;
  return u;
}

MhdPrimitive left_ic() { return {3.0, 0.0, {0.0, 0.0}, 3.0, {1.0, 1.0}}; }
MhdPrimitive right_ic() { return {1.0, 0.0, {0.0, 0.0}, 1.0, {std::cos(1.5), std::sin(1.5)}}; }

// Fixed 3x3 system with eigenvalues (-1, 0.1, 2).
LinearSystemModel three_wave_system() {
  Eigen::Matrix3d t;
  t << 1.0, 0.5, 0.2, -0.3, 1.0, 0.4, 0.1, -0.6, 1.0;
  const Eigen::Vector3d lambda(-1.0, 0.1, 2.0);
  const Eigen::Matrix3d a = t * lambda.asDiagonal() * t.inverse();
  return LinearSystemModel(a, t, lambda);
}

}  // namespace

TEST_CASE("advection model") {
  const AdvectionModel m(1.0);
  CHECK(m.flux(vec({0.5}))[0] == 0.5);
  CHECK(m.speeds(vec({42.0})).min == 1.0);
  CHECK(m.speeds(vec({42.0})).max == 1.0);
  CHECK(AdvectionModel(-2.0).flux(vec({3.0}))[0] == -6.0);
  CHECK(AdvectionModel(2.0).jacobian_action(vec({0.0}), vec({3.0}))[0] == 6.0);
  REQUIRE(m.eigensystem() != nullptr);
  CHECK(m.eigensystem()->values[0] == 1.0);
}

TEST_CASE("linear system model") {
  const LinearSystemModel diag(Eigen::Matrix2d(Eigen::Vector2d(-1.0, 2.0).asDiagonal()),
                               Eigen::Matrix2d::Identity(), Eigen::Vector2d(-1.0, 2.0));
  const State f = diag.flux(vec({1.0, 1.0}));
  CHECK(f[0] == -1.0);
  CHECK(f[1] == 2.0);

  const LinearSystemModel ident(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
                                Eigen::Vector2d(1.0, 1.0));
  CHECK(ident.speeds(vec({0.0, 0.0})).min == 1.0);
  CHECK(ident.speeds(vec({0.0, 0.0})).max == 1.0);

  const LinearSystemModel sys = three_wave_system();
  const Eigensystem& e = *sys.eigensystem();
  const double residual = (sys.matrix() - e.vectors * e.values.asDiagonal() * e.vectors_inv)
                              .cwiseAbs()
                              .rowwise()
                              .sum()
                              .maxCoeff();
  CHECK(residual <= 1e-10);
  CHECK(sys.speeds(vec({0, 0, 0})).min == -1.0);
  CHECK(sys.speeds(vec({0, 0, 0})).max == 2.0);

  // Eigenvalues given out of order come back sorted with their vectors.
  Eigen::Matrix2d t;
  t << 1.0, 1.0, 0.0, 1.0;
  const Eigen::Vector2d lambda(3.0, -1.0);
  const Eigen::Matrix2d a = t * lambda.asDiagonal() * t.inverse();
  const LinearSystemModel unsorted(a, t, lambda);
  CHECK(unsorted.eigensystem()->values[0] == -1.0);
  CHECK((a * unsorted.eigensystem()->vectors.col(0) +
         unsorted.eigensystem()->vectors.col(0)).norm() < 1e-12);

  CHECK_THROWS_AS(LinearSystemModel(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity(),
                                    Eigen::Vector2d(1.0, 2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(LinearSystemModel(Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero(),
                                    Eigen::Vector2d(1.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("MHD primitive/conserved conversion") {
  const State u = mhd_prim_to_cons(left_ic());
  const State expected = vec({3, 0, 0, 0, 1, 1, 5.5});
  CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-15);

  MhdPrimitive unit;
  unit.p = kMhdDefaultGamma - 1.0;
  CHECK(mhd_prim_to_cons(unit)[6] == doctest::Approx(1.0).epsilon(1e-15));

  const MhdPrimitive back = mhd_cons_to_prim(expected);
  CHECK(back.rho == 3.0);
  CHECK(back.p == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(back.bt[0] == 1.0);
  CHECK(back.bt[1] == 1.0);

  const MhdPrimitive r = mhd_cons_to_prim(mhd_prim_to_cons(right_ic()));
  CHECK(std::abs(r.p - 1.0) < 1e-14);
  CHECK(std::abs(r.bt[0] - std::cos(1.5)) < 1e-14);

  // Energy below the kinetic plus magnetic part.
  CHECK_THROWS_AS(mhd_cons_to_prim(vec({1, 1, 0, 0, 1, 0, 0.9})), InvalidStateError);
  CHECK_THROWS_AS(mhd_cons_to_prim(vec({-1, 0, 0, 0, 0, 0, 1})), InvalidStateError);
  CHECK_THROWS_AS(mhd_cons_to_prim(vec({1, 0, 0})), InvalidStateError);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const MhdPrimitive w = oracles::random_mhd_primitive(rng);
    const MhdPrimitive v = mhd_cons_to_prim(mhd_prim_to_cons(w));
    const double scale = 1.0 + std::abs(w.p);
    REQUIRE(std::abs(v.rho - w.rho) <= 1e-14);
    REQUIRE(std::abs(v.vx - w.vx) <= 1e-14);
    REQUIRE(std::abs(v.vt[0] - w.vt[0]) <= 1e-14);
    REQUIRE(std::abs(v.vt[1] - w.vt[1]) <= 1e-14);
    REQUIRE(std::abs(v.bt[0] - w.bt[0]) <= 1e-14);
    REQUIRE(std::abs(v.bt[1] - w.bt[1]) <= 1e-14);
    // p comes out of a difference of O(E) terms.
    REQUIRE(std::abs(v.p - w.p) <= 1e-14 * scale * 16);
  }
}

TEST_CASE("MHD flux") {
  const State f = mhd_flux(mhd_prim_to_cons(left_ic()), 1.5);
  const State expected = vec({0, 4, -1.5, -1.5, 0, 0, 0});
  CHECK((f - expected).cwiseAbs().maxCoeff() < 1e-14);

  MhdPrimitive still;
  still.rho = 2.0;
  still.p = 0.7;
  const State g = mhd_flux(mhd_prim_to_cons(still), 0.8);
  CHECK(g[1] == doctest::Approx(0.7));
  for (int k : {0, 2, 3, 4, 5, 6}) CHECK(g[k] == 0.0);

  // rho -> s rho, p -> s p, B -> sqrt(s) B with v fixed scales the flux by s,
  // except the induction rows, which scale by sqrt(s).
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> s_dist(0.3, 4.0);
  for (int i = 0; i < 200; ++i) {
    MhdPrimitive w = oracles::random_mhd_primitive(rng);
    const double bx = 1.2;
    const double s = s_dist(rng);
    const State base = mhd_flux(mhd_prim_to_cons(w), bx);
    w.rho *= s;
    w.p *= s;
    w.bt = {w.bt[0] * std::sqrt(s), w.bt[1] * std::sqrt(s)};
    const State scaled = mhd_flux(mhd_prim_to_cons(w), bx * std::sqrt(s));
    State factor = State::Constant(7, s);
    factor[4] = factor[5] = std::sqrt(s);
    REQUIRE((scaled - factor.cwiseProduct(base)).cwiseAbs().maxCoeff() <=
            1e-12 * s * (1.0 + base.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("MHD fast speed") {
  const MhdModel model(1.5);
  const State ur = mhd_prim_to_cons(right_ic());
  const WaveSpeeds s = model.speeds(ur);
  const auto eig = oracles::numeric_eigenvalues(model, ur);
  CHECK(std::abs(s.max - eig.back()) < 1e-6);
  CHECK(std::abs(s.min - eig.front()) < 1e-6);
  CHECK(s.max == doctest::Approx(1.9930).epsilon(2e-4));

  MhdPrimitive w;
  w.rho = 1.3;
  w.p = 0.9;
  CHECK(mhd_fast_speed(w, 0.0) == doctest::Approx(std::sqrt(kMhdDefaultGamma * 0.9 / 1.3)));
  // Bt = 0: the fast speed is the larger of sound and Alfven speed.
  CHECK(mhd_fast_speed(w, 2.0) == doctest::Approx(std::sqrt(4.0 / 1.3)));
  CHECK(mhd_fast_speed(w, 0.5) == doctest::Approx(std::sqrt(kMhdDefaultGamma * 0.9 / 1.3)));
}

TEST_CASE("MHD speeds bracket every eigenvalue") {
  std::mt19937_64 rng(31);
  const MhdModel model(1.5);
  for (int i = 0; i < 100; ++i) {
    const State u = mhd_prim_to_cons(oracles::random_mhd_primitive(rng));
    const WaveSpeeds s = model.speeds(u);
    for (double lambda : oracles::numeric_eigenvalues(model, u)) {
      REQUIRE(lambda >= s.min - 1e-5);
      REQUIRE(lambda <= s.max + 1e-5);
    }
  }
}

TEST_CASE("MHD analytic Jacobian action matches directional differences") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> g;
  const MhdModel model(1.5);
  for (int i = 0; i < 100; ++i) {
    const State u = mhd_prim_to_cons(oracles::random_mhd_primitive(rng));
    State v(7);
    for (Eigen::Index k = 0; k < 7; ++k) v[k] = g(rng);
    const double h = 1e-6;
    const State fd = (model.flux(u + h * v) - model.flux(u - h * v)) / (2.0 * h);
    const State exact = model.jacobian_action(u, v);
    REQUIRE((fd - exact).cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + exact.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("MHD model validation") {
  const MhdModel model(1.5);
  CHECK(model.admissible(mhd_prim_to_cons(left_ic())));
  CHECK_FALSE(model.admissible(vec({1, 0, 0, 0, 0, 0, -1})));
  CHECK_FALSE(model.admissible(vec({1, 0, 0, 0, 0, 0, NAN})));
  CHECK_THROWS_AS(MhdModel(1.5, 1.0), std::invalid_argument);
  CHECK(model.variable_names().size() == 7);
}
