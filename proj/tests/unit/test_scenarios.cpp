#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hybridflux/errors.hpp"
#include "hybridflux/scenarios.hpp"

using namespace hybridflux;

TEST_CASE("scalar sweep keeps input order and records every step") {
  const std::vector<double> omegas = {0.0, 0.5, 1.0};
  const auto results = run_scalar_sign_test(omegas, {}, 2);
  REQUIRE(results.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const ScenarioResult& r = results[i];
    CHECK(r.ok());
    CHECK(r.solver.kind == SolverKind::DOmega);
    CHECK(r.solver.omega == omegas[i]);
    CHECK(r.steps == 50);
    REQUIRE(r.timeseries.size() == 50);
    CHECK(r.timeseries.front().step == 1);
    CHECK(r.timeseries.back().t == 0.25);
  }
  // Upwind end is monotone, LW end is not.
  CHECK(results[0].timeseries.back().max_value <= 1.0 + 1e-14);
  CHECK(results[2].timeseries.back().max_value > 1.3);

  const auto serial = run_scalar_sign_test(omegas, {}, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t c = 0; c < serial[i].final.cells.size(); ++c)
      REQUIRE(serial[i].final.cells[c][0] == results[i].final.cells[c][0]);
  }

  CHECK_THROWS_AS(run_scalar_sign_test({1.5}), std::invalid_argument);
  CHECK(default_scalar_omegas().size() == 11);
}

TEST_CASE("MHD runs report conservation and isolate failures") {
  MhdRiemannConfig cfg;
  cfg.n_cells = 60;
  cfg.t_end = 0.2;
  cfg.dt = 0.02;
  const auto results = run_mhd_riemann(default_mhd_solvers(), cfg, 2);
  REQUIRE(results.size() == 4);
  for (const auto& r : results) {
    CAPTURE(r.solver.label());
    CHECK(r.ok());
    CHECK(r.steps == 10);
    REQUIRE(r.conservation.has_value());
    CHECK(r.conservation->max_relative() <= 1e-12);
  }

  // A step far above the Courant limit fails for every solver on its own.
  MhdRiemannConfig bad = cfg;
  bad.dt = 1.0;
  const auto failed = run_mhd_riemann({make_spec(SolverKind::HLL), make_spec(SolverKind::P2)}, bad);
  for (const auto& r : failed) {
    CHECK_FALSE(r.ok());
    CHECK(r.error->find("Courant") != std::string::npos);
  }

  // Upwind needs an eigensystem the MHD model does not have; HLL still runs.
  const auto mixed = run_mhd_riemann({make_spec(SolverKind::Upwind), make_spec(SolverKind::HLL)}, cfg);
  CHECK_FALSE(mixed[0].ok());
  CHECK(mixed[1].ok());
}

TEST_CASE("refined configuration keeps dt/dx") {
  const MhdRiemannConfig cfg;
  const MhdRiemannConfig fine = cfg.refined(3000);
  CHECK(fine.n_cells == 3000);
  CHECK(fine.dt == doctest::Approx(0.001));
  CHECK(fine.t_end == cfg.t_end);
}

TEST_CASE("profile helpers") {
  const Grid coarse(0.0, 1.0, 2);
  const Grid fine(0.0, 1.0, 4);
  const auto down = project_cell_averages({1.0, 3.0, 5.0, 7.0}, fine, coarse);
  CHECK(down[0] == doctest::Approx(2.0));
  CHECK(down[1] == doctest::Approx(6.0));
  const auto up = project_cell_averages({1.0, 3.0}, coarse, fine);
  CHECK(up == std::vector<double>{1.0, 1.0, 3.0, 3.0});

  // Non-nested grids keep the integral.
  const Grid a(0.0, 1.0, 7);
  const Grid b(0.0, 1.0, 3);
  std::vector<double> v(7);
  std::iota(v.begin(), v.end(), 1.0);
  const auto p = project_cell_averages(v, a, b);
  const double ia = std::accumulate(v.begin(), v.end(), 0.0) * a.dx();
  const double ib = std::accumulate(p.begin(), p.end(), 0.0) * b.dx();
  CHECK(ia == doctest::Approx(ib).epsilon(1e-14));
  CHECK_THROWS_AS(project_cell_averages({1.0}, a, b), std::invalid_argument);

  CHECK(l1_distance({1.0, 2.0}, {0.0, 4.0}, coarse) == doctest::Approx(1.5));

  const Grid g(0.0, 1.0, 5);
  const std::vector<double> q = {0.0, 0.0, 1.0, 1.0, 5.0};
  CHECK(max_gradient(q, g, 0.0, 1.0) == doctest::Approx(20.0));
  CHECK(max_gradient(q, g, 0.0, 0.75) == doctest::Approx(5.0));
  CHECK(max_gradient(q, g, 0.0, 0.2) == 0.0);
}

TEST_CASE("conservation report") {
  const Grid g(0.0, 1.0, 2);
  FieldSnapshot a;
  a.cells = {State::Constant(1, 1.0), State::Constant(1, 3.0)};
  FieldSnapshot b;
  b.cells = {State::Constant(1, 1.0), State::Constant(1, 2.0)};
  const ConservationReport r = conservation_report(a, b, State::Constant(1, 0.5), g);
  CHECK(r.residual[0] == doctest::Approx(0.0));
  const ConservationReport off = conservation_report(a, b, State::Constant(1, 0.0), g);
  CHECK(off.residual[0] == doctest::Approx(-0.5));
  CHECK(off.max_relative() == doctest::Approx(0.25));
}
