#pragma once

#include <stdexcept>

#include "stratsim/model.hpp"

namespace stratsim {

// Thrown when a step produces non-finite coefficients; run loops catch it and
// record the abort with the last valid time.
struct numerical_abort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepperConfig {
  enum class Scheme { rk4, ifrk4 };
  Scheme scheme = Scheme::ifrk4;
  double dt = 0.0;          // fixed step when > 0
  double cfl_safety = 0.4;  // used when dt == 0
  double t_end = 10.0;
  int diagnostic_stride = 4;
  bool nonlinearity_enabled = true;
};

// Exact linear semigroup: coefficients multiplied by exp(-i sign t Lambda),
// so sign=+1 advances the Z_plus / theta linear flow. Unitary: the l2 norm
// is preserved and propagator(t) . propagator(s) = propagator(t+s).
SpectralField propagator(const SpectralField& field, double kappa, double t,
                         int sign);

// Classical RK4 on the full right-hand side.
VorticityState step_rk4(const VorticityState& state, double dt);
ZState step_rk4(const ZState& state, double dt);
SqgState step_rk4(const SqgState& state, double dt);

// Integrating-factor RK4: the oscillation exp(-+ i t Lambda) is handled by
// the exact propagator, RK4 integrates only the quadratic terms. With the
// nonlinearity disabled the step reduces to the exact propagator.
ZState step_ifrk4(const ZState& state, double dt, bool nonlinearity = true);
SqgState step_ifrk4(const SqgState& state, double dt, bool nonlinearity = true);

// dt = safety * dx / max(1, ||u||_inf); rk4 additionally caps at
// safety / kappa to resolve the linear oscillation.
double cfl_dt(const VorticityState& state, double safety, StepperConfig::Scheme scheme);
double cfl_dt(const ZState& state, double safety, StepperConfig::Scheme scheme);
double cfl_dt(const SqgState& state, double safety, StepperConfig::Scheme scheme);

}  // namespace stratsim
