#pragma once

#include <optional>
#include <variant>

#include "stratsim/config.hpp"
#include "stratsim/diagnostics.hpp"

namespace stratsim {

// One (epsilon, kappa) run: lifespan proxy and metadata, the row type for the
// scaling fits. T* is the first time the H^n norm reaches
// hn_doubling_factor * epsilon or the accumulated bootstrap norm reaches its
// threshold; runs reaching the horizon are censored and excluded from fits.
struct SweepRecord {
  std::string model;
  double epsilon = 0.0;
  double kappa = 0.0;
  double n_regularity = 0.0;
  double t_star = 0.0;
  std::string stop_reason;  // h_n_doubling | bootstrap_threshold | horizon_reached | nan_abort
  std::uint64_t seed = 0;
  int grid_n = 0;
  double length = 0.0;
  double dt = 0.0;

  bool censored() const { return stop_reason != "h_n_doubling" &&
                                 stop_reason != "bootstrap_threshold"; }
};

struct ScalingFit {
  double alpha_eps = 0.0;  // exponent of T* vs epsilon at fixed kappa
  double alpha_r_squared = 0.0;
  int alpha_points = 0;
  double beta_kappa = 0.0;  // exponent of T* vs kappa at fixed epsilon
  double beta_r_squared = 0.0;
  int beta_points = 0;
  std::vector<SweepRecord> censored;
};

// Band-limited (dyadic bands -2..3) mean-zero smooth data with the combined
// H^n norm rescaled to epsilon. Deterministic given the seed.
VorticityState make_initial_boussinesq(const InitialDataSpec& spec,
                                       const GridSpec& grid, double kappa);
SqgState make_initial_sqg(const InitialDataSpec& spec, const GridSpec& grid,
                          double kappa);

struct RunResult {
  SweepRecord record;
  std::vector<NormReport> reports;
};

// Integrates with the configured stepper, sampling NormReports every
// diagnostic_stride steps, until a threshold, the horizon or a NaN abort.
RunResult run_until_threshold(const VorticityState& initial, const RunConfig& config);
RunResult run_until_threshold(const SqgState& initial, const RunConfig& config);

// Epsilon axis at kappa_ref plus kappa axis at eps_ref, run in parallel over
// `threads` workers and merged in deterministic (epsilon, kappa, seed) order.
std::vector<SweepRecord> lifespan_sweep(const RunConfig& config, int threads = 1);

// Log-log fits over the uncensored records of each axis (>= 4 points each).
ScalingFit fit_scaling(std::span<const SweepRecord> records, double kappa_ref,
                       double eps_ref);

// Time-scaling symmetry: trajectory A with gravity kappa and data (omega,rho)
// to t_horizon versus trajectory B with gravity 1 and data scaled by 1/kappa
// to kappa * t_horizon. Returns the relative L^2 discrepancy of
// kappa^{-1}(u,rho)_A(T) against (u,rho)_B(kappa T). dt overrides, when
// given, pin the two step sizes (used by the order-verification tests).
double time_scaling_check(const VorticityState& initial, double t_horizon,
                          double cfl_safety = 0.4,
                          std::optional<double> dt_a = std::nullopt,
                          std::optional<double> dt_b = std::nullopt);

}  // namespace stratsim
