#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stratsim/experiments.hpp"
#include "test_util.hpp"

using namespace stratsim;

namespace {

double combined_hn_of(const VorticityState& s, double n_reg) {
  auto u = velocity_from_omega(s.omega);
  return std::sqrt(std::pow(sobolev_norm(u[0], n_reg), 2) +
                   std::pow(sobolev_norm(u[1], n_reg), 2)) +
         sobolev_norm(s.rho, n_reg);
}

RunConfig small_config(Model model, int n, double epsilon, double kappa) {
  RunConfig cfg;
  cfg.model = model;
  cfg.grid = make_grid(n, 20.0 * pi);
  cfg.kappa = kappa;
  cfg.initial_data.epsilon = epsilon;
  cfg.initial_data.seed = 424242;
  cfg.stepper.cfl_safety = 0.4;
  cfg.stepper.diagnostic_stride = 4;
  return cfg;
}

}  // namespace

TEST_CASE("initial data hits the requested combined H^n norm exactly") {
  GridSpec g = make_grid(64, 20.0 * pi);
  for (auto profile : {InitialDataSpec::Profile::gaussian_pair,
                       InitialDataSpec::Profile::random_band}) {
    InitialDataSpec spec;
    spec.profile = profile;
    spec.epsilon = 0.37;
    spec.n_regularity = 3.5;
    spec.seed = 99;
    VorticityState s = make_initial_boussinesq(spec, g, 1.0);
    CHECK(std::abs(combined_hn_of(s, 3.5) - 0.37) < 1e-10 * 0.37);
    CHECK(std::abs(s.omega.mean()) == 0.0);
    CHECK(hermitian_asymmetry(s.omega) < 1e-12 * max_abs_coeff(s.omega));

    SqgState q = make_initial_sqg(spec, g, 1.0);
    CHECK(std::abs(sobolev_norm(q.theta, 3.5) - 0.37) < 1e-10 * 0.37);
  }

  InitialDataSpec bad;
  bad.epsilon = -1.0;
  CHECK_THROWS_AS(make_initial_boussinesq(bad, g, 1.0), std::invalid_argument);
}

TEST_CASE("initial data is deterministic given the seed") {
  GridSpec g = make_grid(64, 20.0 * pi);
  InitialDataSpec spec;
  spec.profile = InitialDataSpec::Profile::random_band;
  spec.epsilon = 0.2;
  spec.seed = 777;
  VorticityState a = make_initial_boussinesq(spec, g, 1.0);
  VorticityState b = make_initial_boussinesq(spec, g, 1.0);
  auto ca = a.omega.coeffs();
  auto cb = b.omega.coeffs();
  bool identical = true;
  for (size_t k = 0; k < ca.size(); ++k) {
    if (ca[k] != cb[k]) identical = false;
  }
  CHECK(identical);

  spec.seed = 778;
  VorticityState c = make_initial_boussinesq(spec, g, 1.0);
  CHECK(test::rel_err(c.omega, a.omega) > 1e-3);
}

TEST_CASE("gaussian_pair data is resolution independent") {
  InitialDataSpec spec;
  spec.profile = InitialDataSpec::Profile::gaussian_pair;
  spec.epsilon = 0.3;
  spec.n_regularity = 3.5;
  VorticityState coarse =
      make_initial_boussinesq(spec, make_grid(256, 20.0 * pi), 1.0);
  VorticityState fine =
      make_initial_boussinesq(spec, make_grid(512, 20.0 * pi), 1.0);
  const double h_coarse = sobolev_norm(coarse.omega, 3.5);
  const double h_fine = sobolev_norm(fine.omega, 3.5);
  CHECK(std::abs(h_coarse - h_fine) < 1e-6 * h_fine);
}

TEST_CASE("linear-only runs never double and reach the horizon") {
  RunConfig cfg = small_config(Model::boussinesq, 64, 0.2, 1.0);
  cfg.stepper.nonlinearity_enabled = false;
  cfg.experiment.horizon_factor = 1.0;       // short horizon for the test
  cfg.experiment.bootstrap_threshold = 1e6;  // out of reach
  VorticityState init =
      make_initial_boussinesq(cfg.initial_data, cfg.grid, cfg.kappa);
  RunResult res = run_until_threshold(init, cfg);
  CHECK(res.record.stop_reason == "horizon_reached");
  // unitary linear flow preserves the H^n norm along the way
  for (const auto& r : res.reports) {
    CHECK(std::abs(r.sobolev_hn - res.reports.front().sobolev_hn) <
          1e-6 * res.reports.front().sobolev_hn);
  }
}

TEST_CASE("kappa = 0 Euler-type run with large data doubles in finite time") {
  RunConfig cfg = small_config(Model::boussinesq, 64, 6.0, 1e-12);
  cfg.experiment.horizon_factor = 400.0;
  VorticityState init =
      make_initial_boussinesq(cfg.initial_data, cfg.grid, cfg.kappa);
  RunResult res = run_until_threshold(init, cfg);
  CHECK(res.record.stop_reason == "h_n_doubling");
  CHECK(res.record.t_star > 0.0);
  CHECK(res.record.t_star < 400.0 * std::pow(6.0, -4.0 / 3.0) + 1.0);
}

TEST_CASE("T* is stable under halving dt") {
  RunConfig cfg = small_config(Model::sqg, 64, 4.0, 1.0);
  cfg.stepper.dt = 0.05;
  cfg.experiment.horizon_factor = 300.0;
  SqgState init = make_initial_sqg(cfg.initial_data, cfg.grid, cfg.kappa);
  RunResult coarse = run_until_threshold(init, cfg);
  REQUIRE(coarse.record.stop_reason == "h_n_doubling");

  cfg.stepper.dt = 0.025;
  cfg.stepper.diagnostic_stride = 8;  // same sampling times
  RunResult fine = run_until_threshold(init, cfg);
  CHECK(std::abs(coarse.record.t_star - fine.record.t_star) <
        0.02 * fine.record.t_star);
}

TEST_CASE("fit_scaling recovers an exact power law and flags censored rows") {
  std::vector<SweepRecord> records;
  for (double eps : {0.4, 0.3, 0.2, 0.15, 0.1}) {
    SweepRecord r;
    r.model = "boussinesq";
    r.epsilon = eps;
    r.kappa = 1.0;
    r.t_star = std::pow(eps, -4.0 / 3.0);
    r.stop_reason = "h_n_doubling";
    records.push_back(r);
  }
  for (double kappa : {1.0, 2.0, 4.0, 8.0}) {
    SweepRecord r;
    r.model = "boussinesq";
    r.epsilon = 0.3;
    r.kappa = kappa;
    r.t_star = 5.0 * std::cbrt(kappa);
    r.stop_reason = "bootstrap_threshold";
    records.push_back(r);
  }
  SweepRecord censored;
  censored.model = "boussinesq";
  censored.epsilon = 0.05;
  censored.kappa = 1.0;
  censored.t_star = 100.0;
  censored.stop_reason = "horizon_reached";
  records.push_back(censored);

  ScalingFit fit = fit_scaling(records, 1.0, 0.3);
  CHECK(fit.alpha_points == 5);
  CHECK(std::abs(fit.alpha_eps + 4.0 / 3.0) < 1e-10);
  CHECK(fit.alpha_r_squared == doctest::Approx(1.0));
  CHECK(fit.beta_points == 4);
  CHECK(std::abs(fit.beta_kappa - 1.0 / 3.0) < 1e-10);
  CHECK(fit.censored.size() == 1);
  CHECK(fit.censored.front().epsilon == doctest::Approx(0.05));
}

TEST_CASE("time-scaling symmetry: identity at kappa = 1, 4th order at kappa = 4") {
  GridSpec g = make_grid(64, 20.0 * pi);
  InitialDataSpec spec;
  spec.profile = InitialDataSpec::Profile::gaussian_pair;
  spec.epsilon = 0.5;
  spec.n_regularity = 3.5;

  VorticityState unit = make_initial_boussinesq(spec, g, 1.0);
  CHECK(time_scaling_check(unit, 1.0, 0.4) < 1e-12);

  VorticityState strat = make_initial_boussinesq(spec, g, 4.0);
  const double coarse = time_scaling_check(strat, 2.0, 0.4, 0.5, 0.4);
  const double fine = time_scaling_check(strat, 2.0, 0.4, 0.25, 0.2);
  CHECK(coarse < 1e-6);
  if (coarse > 1e-12) {
    const double factor = coarse / fine;
    CHECK(factor > 6.0);
    CHECK(factor < 40.0);
  }
}
