#include "stratsim/model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stratsim/littlewood_paley.hpp"

namespace stratsim {

namespace {

void require_mean_zero(const SpectralField& f, const char* what) {
  if (std::abs(f.mean()) > 1e-12 * std::max(1.0, max_abs_coeff(f))) {
    throw std::invalid_argument(std::string(what) + ": field must be mean-zero");
  }
}

// |nabla|^{-1} div of a spectral vector field, with the odd-symbol Nyquist
// convention matching apply_symbol.
SpectralField inv_mod_div(const SpectralField& p1, const SpectralField& p2) {
  const GridSpec& g = p1.grid();
  SpectralField out(g, true);
  const int n = g.n;
  const int nyq = n / 2;
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.freq(j);
      const double r2 = xi1 * xi1 + xi2 * xi2;
      if (r2 == 0.0) continue;
      const double inv_r = 1.0 / std::sqrt(r2);
      const complexd d1 = (i == nyq) ? complexd{} : complexd(0.0, xi1) * p1.at(i, j);
      const complexd d2 = (j == nyq) ? complexd{} : complexd(0.0, xi2) * p2.at(i, j);
      out.at(i, j) = inv_r * (d1 + d2);
    }
  }
  return out;
}

// forward transform + dealias + zero mean, the tail of every quadratic term.
SpectralField close_product(std::span<const complexd> phys, const GridSpec& g) {
  SpectralField out = dealias(forward_transform(phys, g));
  out.enforce_zero_mode();
  return out;
}

}  // namespace

ZState to_dispersive(const VorticityState& state) {
  require_mean_zero(state.omega, "to_dispersive(omega)");
  require_mean_zero(state.rho, "to_dispersive(rho)");
  SpectralField inv_mod_omega = apply_symbol(state.omega, SymbolId::mod_nabla(-1.0));
  ZState z;
  z.z_plus = inv_mod_omega + state.rho;
  z.z_minus = inv_mod_omega - state.rho;
  z.z_plus.enforce_zero_mode();
  z.z_minus.enforce_zero_mode();
  z.kappa = state.kappa;
  z.time = state.time;
  return z;
}

PrimitiveFields from_dispersive(const ZState& state) {
  SpectralField sum = state.z_plus + state.z_minus;
  PrimitiveFields out;
  auto perp = apply_perp_grad_inv_mod(sum);
  out.u1 = -0.5 * std::move(perp[0]);
  out.u2 = -0.5 * std::move(perp[1]);
  out.rho = 0.5 * (state.z_plus - state.z_minus);
  out.omega = 0.5 * apply_symbol(sum, SymbolId::mod_nabla(1.0));
  return out;
}

VorticityState to_vorticity(const ZState& state) {
  PrimitiveFields f = from_dispersive(state);
  VorticityState v;
  v.omega = std::move(f.omega);
  v.rho = std::move(f.rho);
  v.omega.enforce_zero_mode();
  v.rho.enforce_zero_mode();
  v.kappa = state.kappa;
  v.time = state.time;
  return v;
}

std::array<SpectralField, 2> velocity_from_omega(const SpectralField& omega) {
  // u = perp_grad laplace^{-1} omega = -perp_grad |nabla|^{-1} (|nabla|^{-1} omega)
  auto perp = apply_perp_grad_inv_mod(apply_symbol(omega, SymbolId::mod_nabla(-1.0)));
  return {-1.0 * std::move(perp[0]), -1.0 * std::move(perp[1])};
}

std::array<SpectralField, 2> velocity_from_theta(const SpectralField& theta) {
  return apply_perp_grad_inv_mod(theta);
}

double energy_balance_residual(const ZState& state, int k) {
  if (k < 0) throw std::invalid_argument("energy_balance_residual: k >= 0");
  PrimitiveFields f = from_dispersive(state);
  const double dk = static_cast<double>(k);
  const double lhs = std::pow(homogeneous_sobolev_norm(f.u1, dk), 2) +
                     std::pow(homogeneous_sobolev_norm(f.u2, dk), 2) +
                     std::pow(homogeneous_sobolev_norm(f.rho, dk), 2);
  const double rhs = 0.5 * std::pow(homogeneous_sobolev_norm(state.z_plus, dk), 2) +
                     0.5 * std::pow(homogeneous_sobolev_norm(state.z_minus, dk), 2);
  return std::abs(lhs - rhs) / std::max(rhs, 1e-30);
}

VorticityTendency rhs_vorticity(const VorticityState& state) {
  const GridSpec& g = state.omega.grid();
  auto u = velocity_from_omega(state.omega);
  std::vector<complexd> u1 = inverse_transform_complex(u[0]);
  std::vector<complexd> u2 = inverse_transform_complex(u[1]);
  std::vector<complexd> go1 =
      inverse_transform_complex(apply_symbol(state.omega, SymbolId::partial(1)));
  std::vector<complexd> go2 =
      inverse_transform_complex(apply_symbol(state.omega, SymbolId::partial(2)));
  std::vector<complexd> gr1 =
      inverse_transform_complex(apply_symbol(state.rho, SymbolId::partial(1)));
  std::vector<complexd> gr2 =
      inverse_transform_complex(apply_symbol(state.rho, SymbolId::partial(2)));

  std::vector<complexd> adv_o(u1.size()), adv_r(u1.size());
  for (size_t m = 0; m < u1.size(); ++m) {
    adv_o[m] = -(u1[m] * go1[m] + u2[m] * go2[m]);
    adv_r[m] = -(u1[m] * gr1[m] + u2[m] * gr2[m]);
  }

  VorticityTendency out;
  out.d_omega = close_product(adv_o, g);
  out.d_rho = close_product(adv_r, g);
  // buoyancy coupling: -kappa d1 rho and +kappa d1 laplace^{-1} omega
  out.d_omega -= state.kappa * apply_symbol(state.rho, SymbolId::partial(1));
  out.d_rho += state.kappa * apply_symbol(
                                 apply_symbol(state.omega, SymbolId::inv_laplace()),
                                 SymbolId::partial(1));
  out.d_omega.enforce_zero_mode();
  out.d_rho.enforce_zero_mode();
  return out;
}

ZTendency rhs_dispersive_nonlinear(const ZState& state) {
  const GridSpec& g = state.z_plus.grid();
  SpectralField sum = state.z_plus + state.z_minus;
  SpectralField diff = state.z_plus - state.z_minus;

  auto w = apply_perp_grad_inv_mod(sum);
  std::vector<complexd> w1 = inverse_transform_complex(w[0]);
  std::vector<complexd> w2 = inverse_transform_complex(w[1]);
  std::vector<complexd> a =
      inverse_transform_complex(apply_symbol(sum, SymbolId::mod_nabla(1.0)));
  std::vector<complexd> g1 =
      inverse_transform_complex(apply_symbol(diff, SymbolId::partial(1)));
  std::vector<complexd> g2 =
      inverse_transform_complex(apply_symbol(diff, SymbolId::partial(2)));

  std::vector<complexd> p1(w1.size()), p2(w1.size()), q(w1.size());
  for (size_t m = 0; m < w1.size(); ++m) {
    p1[m] = w1[m] * a[m];
    p2[m] = w2[m] * a[m];
    q[m] = w1[m] * g1[m] + w2[m] * g2[m];
  }

  SpectralField t = inv_mod_div(close_product(p1, g), close_product(p2, g));
  SpectralField qs = close_product(q, g);

  ZTendency out;
  out.d_zplus = 0.25 * (t + qs);
  out.d_zminus = 0.25 * (t - qs);
  return out;
}

ZTendency rhs_dispersive(const ZState& state) {
  ZTendency out = rhs_dispersive_nonlinear(state);
  const GridSpec& g = state.z_plus.grid();
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double lam = lambda_symbol(g, i, j, state.kappa);
      if (lam != 0.0) {
        out.d_zplus.at(i, j) += complexd(0.0, -lam) * state.z_plus.at(i, j);
        out.d_zminus.at(i, j) += complexd(0.0, lam) * state.z_minus.at(i, j);
      }
    }
  }
  return out;
}

SpectralField rhs_sqg_nonlinear(const SqgState& state) {
  const GridSpec& g = state.theta.grid();
  auto u = velocity_from_theta(state.theta);
  std::vector<complexd> u1 = inverse_transform_complex(u[0]);
  std::vector<complexd> u2 = inverse_transform_complex(u[1]);
  std::vector<complexd> g1 =
      inverse_transform_complex(apply_symbol(state.theta, SymbolId::partial(1)));
  std::vector<complexd> g2 =
      inverse_transform_complex(apply_symbol(state.theta, SymbolId::partial(2)));

  std::vector<complexd> adv(u1.size());
  for (size_t m = 0; m < u1.size(); ++m) {
    adv[m] = -(u1[m] * g1[m] + u2[m] * g2[m]);
  }
  return close_product(adv, g);
}

SpectralField rhs_sqg(const SqgState& state) {
  SpectralField out = rhs_sqg_nonlinear(state);
  out += state.kappa * apply_symbol(state.theta, SymbolId::riesz(1));
  out.enforce_zero_mode();
  return out;
}

}  // namespace stratsim
