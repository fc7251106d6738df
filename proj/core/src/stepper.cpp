#include "stratsim/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace stratsim {

namespace {

void check_finite(const SpectralField& f, const char* where) {
  if (!all_finite(f)) {
    throw numerical_abort(std::string("non-finite coefficients after ") + where);
  }
}

double max_speed(const SpectralField& u1, const SpectralField& u2) {
  std::vector<complexd> a = inverse_transform_complex(u1);
  std::vector<complexd> b = inverse_transform_complex(u2);
  double m = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::sqrt(std::norm(a[k]) + std::norm(b[k])));
  }
  return m;
}

double cfl_formula(double umax, const GridSpec& g, double safety, double kappa,
                   StepperConfig::Scheme scheme) {
  double dt = safety * g.spacing() / std::max(1.0, umax);
  if (scheme == StepperConfig::Scheme::rk4 && kappa > 0.0) {
    dt = std::min(dt, safety / kappa);
  }
  return dt;
}

// Half-step phases e^{-i Lambda dt/2} for the Z_plus direction; Z_minus uses
// the conjugate, the full step is the square.
struct PhaseTable {
  std::vector<complexd> half;

  PhaseTable(const GridSpec& g, double kappa, double dt)
      : half(static_cast<size_t>(g.size())) {
    const int n = g.n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double lam = lambda_symbol(g, i, j, kappa);
        half[static_cast<size_t>(i) * n + j] = std::polar(1.0, -0.5 * dt * lam);
      }
    }
  }

  SpectralField apply(const SpectralField& f, int power, bool conjugate) const {
    SpectralField out = f;
    auto c = out.coeffs();
    for (size_t k = 0; k < c.size(); ++k) {
      complexd ph = half[k];
      if (power == 2) ph *= ph;
      if (conjugate) ph = std::conj(ph);
      c[k] *= ph;
    }
    return out;
  }
};

}  // namespace

SpectralField propagator(const SpectralField& field, double kappa, double t,
                         int sign) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("propagator: sign must be +1 or -1");
  }
  const GridSpec& g = field.grid();
  SpectralField out = field;
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double lam = lambda_symbol(g, i, j, kappa);
      if (lam != 0.0) {
        out.at(i, j) *= std::polar(1.0, -sign * t * lam);
      }
    }
  }
  return out;
}

VorticityState step_rk4(const VorticityState& state, double dt) {
  auto stage = [&](const VorticityTendency& k, double h) {
    VorticityState s;
    s.omega = state.omega + h * k.d_omega;
    s.rho = state.rho + h * k.d_rho;
    s.kappa = state.kappa;
    s.time = state.time + h;
    return s;
  };
  VorticityTendency k1 = rhs_vorticity(state);
  VorticityTendency k2 = rhs_vorticity(stage(k1, 0.5 * dt));
  VorticityTendency k3 = rhs_vorticity(stage(k2, 0.5 * dt));
  VorticityTendency k4 = rhs_vorticity(stage(k3, dt));

  VorticityState out = state;
  out.omega += (dt / 6.0) * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega);
  out.rho += (dt / 6.0) * (k1.d_rho + 2.0 * k2.d_rho + 2.0 * k3.d_rho + k4.d_rho);
  out.time = state.time + dt;
  check_finite(out.omega, "rk4 step");
  check_finite(out.rho, "rk4 step");
  return out;
}

ZState step_rk4(const ZState& state, double dt) {
  auto stage = [&](const ZTendency& k, double h) {
    ZState s;
    s.z_plus = state.z_plus + h * k.d_zplus;
    s.z_minus = state.z_minus + h * k.d_zminus;
    s.kappa = state.kappa;
    s.time = state.time + h;
    return s;
  };
  ZTendency k1 = rhs_dispersive(state);
  ZTendency k2 = rhs_dispersive(stage(k1, 0.5 * dt));
  ZTendency k3 = rhs_dispersive(stage(k2, 0.5 * dt));
  ZTendency k4 = rhs_dispersive(stage(k3, dt));

  ZState out = state;
  out.z_plus += (dt / 6.0) * (k1.d_zplus + 2.0 * k2.d_zplus + 2.0 * k3.d_zplus + k4.d_zplus);
  out.z_minus += (dt / 6.0) * (k1.d_zminus + 2.0 * k2.d_zminus + 2.0 * k3.d_zminus + k4.d_zminus);
  out.time = state.time + dt;
  check_finite(out.z_plus, "rk4 step");
  check_finite(out.z_minus, "rk4 step");
  return out;
}

SqgState step_rk4(const SqgState& state, double dt) {
  auto stage = [&](const SpectralField& k, double h) {
    SqgState s;
    s.theta = state.theta + h * k;
    s.kappa = state.kappa;
    s.time = state.time + h;
    return s;
  };
  SpectralField k1 = rhs_sqg(state);
  SpectralField k2 = rhs_sqg(stage(k1, 0.5 * dt));
  SpectralField k3 = rhs_sqg(stage(k2, 0.5 * dt));
  SpectralField k4 = rhs_sqg(stage(k3, dt));

  SqgState out = state;
  out.theta += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  out.time = state.time + dt;
  check_finite(out.theta, "rk4 step");
  return out;
}

ZState step_ifrk4(const ZState& state, double dt, bool nonlinearity) {
  const GridSpec& g = state.z_plus.grid();
  const PhaseTable ph(g, state.kappa, dt);

  ZState out = state;
  out.time = state.time + dt;
  if (!nonlinearity) {
    out.z_plus = ph.apply(state.z_plus, 2, false);
    out.z_minus = ph.apply(state.z_minus, 2, true);
    return out;
  }

  auto nl = [&](const SpectralField& zp, const SpectralField& zm) {
    ZState s;
    s.z_plus = zp;
    s.z_minus = zm;
    s.kappa = state.kappa;
    return rhs_dispersive_nonlinear(s);
  };

  const ZTendency a = nl(state.z_plus, state.z_minus);
  const ZTendency b =
      nl(ph.apply(state.z_plus + (0.5 * dt) * a.d_zplus, 1, false),
         ph.apply(state.z_minus + (0.5 * dt) * a.d_zminus, 1, true));
  const ZTendency c =
      nl(ph.apply(state.z_plus, 1, false) + (0.5 * dt) * b.d_zplus,
         ph.apply(state.z_minus, 1, true) + (0.5 * dt) * b.d_zminus);
  const ZTendency d =
      nl(ph.apply(state.z_plus, 2, false) + dt * ph.apply(c.d_zplus, 1, false),
         ph.apply(state.z_minus, 2, true) + dt * ph.apply(c.d_zminus, 1, true));

  out.z_plus = ph.apply(state.z_plus, 2, false) +
               (dt / 6.0) * (ph.apply(a.d_zplus, 2, false) +
                             2.0 * ph.apply(b.d_zplus + c.d_zplus, 1, false) +
                             d.d_zplus);
  out.z_minus = ph.apply(state.z_minus, 2, true) +
                (dt / 6.0) * (ph.apply(a.d_zminus, 2, true) +
                              2.0 * ph.apply(b.d_zminus + c.d_zminus, 1, true) +
                              d.d_zminus);
  check_finite(out.z_plus, "ifrk4 step");
  check_finite(out.z_minus, "ifrk4 step");
  return out;
}

SqgState step_ifrk4(const SqgState& state, double dt, bool nonlinearity) {
  const GridSpec& g = state.theta.grid();
  const PhaseTable ph(g, state.kappa, dt);

  SqgState out = state;
  out.time = state.time + dt;
  if (!nonlinearity) {
    out.theta = ph.apply(state.theta, 2, false);
    return out;
  }

  auto nl = [&](const SpectralField& th) {
    SqgState s;
    s.theta = th;
    s.kappa = state.kappa;
    return rhs_sqg_nonlinear(s);
  };

  const SpectralField a = nl(state.theta);
  const SpectralField b = nl(ph.apply(state.theta + (0.5 * dt) * a, 1, false));
  const SpectralField c = nl(ph.apply(state.theta, 1, false) + (0.5 * dt) * b);
  const SpectralField d =
      nl(ph.apply(state.theta, 2, false) + dt * ph.apply(c, 1, false));

  out.theta = ph.apply(state.theta, 2, false) +
              (dt / 6.0) * (ph.apply(a, 2, false) +
                            2.0 * ph.apply(b + c, 1, false) + d);
  check_finite(out.theta, "ifrk4 step");
  return out;
}

double cfl_dt(const VorticityState& state, double safety,
              StepperConfig::Scheme scheme) {
  auto u = velocity_from_omega(state.omega);
  return cfl_formula(max_speed(u[0], u[1]), state.omega.grid(), safety,
                     state.kappa, scheme);
}

double cfl_dt(const ZState& state, double safety, StepperConfig::Scheme scheme) {
  PrimitiveFields f = from_dispersive(state);
  return cfl_formula(max_speed(f.u1, f.u2), state.z_plus.grid(), safety,
                     state.kappa, scheme);
}

double cfl_dt(const SqgState& state, double safety, StepperConfig::Scheme scheme) {
  auto u = velocity_from_theta(state.theta);
  return cfl_formula(max_speed(u[0], u[1]), state.theta.grid(), safety,
                     state.kappa, scheme);
}

}  // namespace stratsim
