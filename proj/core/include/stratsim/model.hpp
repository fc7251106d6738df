#pragma once

#include "stratsim/field.hpp"

namespace stratsim {

// The three equivalent formulations of the perturbed Boussinesq dynamics
// around the stratified rest state, plus dispersive SQG. All dynamical
// fields are mean-zero and real-valued.
//
//   vorticity form:  d_t omega + u.grad omega = -kappa d_1 rho
//                    d_t rho   + u.grad rho   =  kappa d_1 laplace^{-1} omega
//                    u = perp_grad laplace^{-1} omega
//
//   dispersive form: Z_pm = |nabla|^{-1} omega +- rho,
//                    d_t Z_pm = -+ i Lambda_kappa Z_pm + quadratic terms
//
//   SQG:             d_t theta + u.grad theta = kappa R_1 theta,
//                    u = perp_grad |nabla|^{-1} theta.

struct VorticityState {
  SpectralField omega;
  SpectralField rho;
  double kappa = 1.0;
  double time = 0.0;
};

struct ZState {
  SpectralField z_plus;
  SpectralField z_minus;
  double kappa = 1.0;
  double time = 0.0;
};

struct SqgState {
  SpectralField theta;
  double kappa = 1.0;
  double time = 0.0;
};

// Z_pm = |nabla|^{-1} omega +- rho. Throws on nonzero-mean input.
ZState to_dispersive(const VorticityState& state);

struct PrimitiveFields {
  SpectralField u1, u2;  // u = -1/2 perp_grad |nabla|^{-1} (Z+ + Z-)
  SpectralField rho;     // rho = 1/2 (Z+ - Z-)
  SpectralField omega;   // omega = 1/2 |nabla| (Z+ + Z-)
};
PrimitiveFields from_dispersive(const ZState& state);
VorticityState to_vorticity(const ZState& state);

// Velocity reconstruction u = perp_grad laplace^{-1} omega.
std::array<SpectralField, 2> velocity_from_omega(const SpectralField& omega);
// u = perp_grad |nabla|^{-1} theta.
std::array<SpectralField, 2> velocity_from_theta(const SpectralField& theta);

// |lhs - rhs| / max(rhs, floor) for the identity
// ||u||_{Hdot^k}^2 + ||rho||_{Hdot^k}^2 = 1/2 ||Z+||^2 + 1/2 ||Z-||^2.
double energy_balance_residual(const ZState& state, int k);

struct VorticityTendency {
  SpectralField d_omega;
  SpectralField d_rho;
};
VorticityTendency rhs_vorticity(const VorticityState& state);

struct ZTendency {
  SpectralField d_zplus;
  SpectralField d_zminus;
};
// Full tendency (linear -+ i Lambda Z_pm plus quadratic part). The quadratic
// part is fixed against the vorticity form, which pins the sign conventions:
//   d_t Z_pm = -+ i Lambda Z_pm
//              + 1/4 |nabla|^{-1} div( (|nabla|S) W ) +- 1/4 W.grad(D),
// with S = Z+ + Z-, D = Z+ - Z-, W = perp_grad |nabla|^{-1} S = -2u.
ZTendency rhs_dispersive(const ZState& state);
// Quadratic part only (what the integrating-factor stepper integrates).
ZTendency rhs_dispersive_nonlinear(const ZState& state);

SpectralField rhs_sqg(const SqgState& state);
SpectralField rhs_sqg_nonlinear(const SqgState& state);  // transport only

}  // namespace stratsim
