#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stratsim/littlewood_paley.hpp"
#include "stratsim/model.hpp"

namespace stratsim {

// Norms of one state at one time, plus the running time integrals that the
// bootstrap and blow-up functionals accumulate. The H^n and Besov entries
// follow the pair conventions of the estimates: sums over components.
struct NormReport {
  double time = 0.0;
  double sobolev_hn = 0.0;        // ||u||_{H^n} + ||rho||_{H^n}  (resp. ||theta||)
  double besov_b1_inf_1 = 0.0;    // ||Z+||_{B^1_{inf,1}} + ||Z-||  (resp. theta)
  double grad_linf = 0.0;         // max over components of ||d_i f_j||_inf
  double l2_energy = 0.0;         // ||u||^2 + ||rho||^2  (resp. ||theta||^2)
  double accumulated_bootstrap = 0.0;  // int_0^t besov_b1_inf_1
  double accumulated_blowup = 0.0;     // int_0^t grad_linf
};

// prev == nullptr starts the accumulators at zero.
NormReport measure(const ZState& state, double n_regularity,
                   const NormReport* prev);
NormReport measure(const SqgState& state, double n_regularity,
                   const NormReport* prev);

// ||grad(u,rho)||_inf resp. ||grad(u,theta)||_inf, spectral differentiation
// then a physical-space max.
double blowup_functional(const ZState& state);
double blowup_functional(const SqgState& state);

// Trapezoid integral of besov_b1_inf_1 over a time-sorted series.
double bootstrap_norm(std::span<const NormReport> series);

// Least-squares fit of log y against log x.
struct PowerFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
};
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Free linear evolution of one dyadic band sampled in sup (and L^p) norm.
struct DecayFit {
  int band = 0;
  double kappa = 1.0;
  std::vector<double> times;
  std::vector<double> sup_norms;
  std::vector<double> lp_norms;
  double lp = 4.0;
  double slope = 0.0;       // fitted log-log slope of the sup norm
  double r_squared = 0.0;
  double lp_slope = 0.0;
  double lp_r_squared = 0.0;
  double const_ratio_max = 0.0;  // max of sup * sqrt(kappa t) / (2^{2k}||P_k f||_1)
  double t_min = 0.0, t_max = 0.0;
};

// Projects f0 onto band k, evolves it under the propagator alone and fits the
// decay. Requires >= 8 samples per decade and times within the anti-wraparound
// window t <= L/(4 kappa).
DecayFit linear_decay_fit(const SpectralField& f0, double kappa, int band,
                          std::span<const double> times, double lp = 4.0);

// Homogeneous Strichartz measurement for a 1/2-admissible pair (q, r),
// 1/q + 1/(2r) = 1/4: lhs = ||e^{itL}P_k f||_{L^q_t L^r_x} on [0, horizon] by
// time quadrature, scale = kappa^{-1/q} 2^{4k/q} ||P_k f||_{L^2}.
struct StrichartzResult {
  double q = 0.0, r = 0.0;
  double lhs = 0.0;
  double scale = 0.0;
  double ratio = 0.0;  // lhs / scale
};
StrichartzResult strichartz_ratio(const SpectralField& f0, double kappa,
                                  double q, int band, double horizon,
                                  int quad_points = 96);

// Inhomogeneous (Duhamel) variant against the (q2,r2) = (inf,2) right-hand
// side: lhs = ||int_0^t e^{i(t-s)L} P_k F(s) ds||_{L^q1 L^r1},
// scale = kappa^{-1/q1} 2^{4k/q1} ||P_k F||_{L^1_t L^2_x}.
StrichartzResult duhamel_strichartz_ratio(
    const std::function<SpectralField(double)>& forcing, double kappa,
    double q1, int band, double horizon, int steps = 128);

// lhs/rhs of the product estimate
//   ||u.grad f||_{H^m} + ||u |nabla| f||_{H^m}
//     <~ ||g||_{H^m} ||f||_{Bdot^1_{inf,1}} + ||g||_{Bdot^0_{inf,1}} ||f||_{H^{m+1}}
// with u = perp_grad |nabla|^{-1} g. Returns 0 when the right side vanishes.
double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              double m);

// Ratio of sum_k 2^{lk} ||P_k f||_{L^2} against ||f||_{H^{l+delta}}.
double summation_ratio(const SpectralField& f, double l, double delta);

}  // namespace stratsim
