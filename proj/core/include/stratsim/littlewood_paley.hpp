#pragma once

#include "stratsim/field.hpp"

namespace stratsim {

// Smooth even bump: psi = 1 on [-1,1], supported in [-2,2], glued with the
// standard exp(-1/t) mollifier in between. phi(x) = psi(x) - psi(2x) tiles
// the dyadic annuli: sum_k phi(2^{-k} r) telescopes to 1 for r > 0.
double bump_psi(double x);
double bump_phi(double x);

// Dyadic indices resolvable on a grid: 2^{k_min} >= xi_min/2 and
// 2^{k_max} <= 2 * xi_max over the retained (dealiased) lattice.
struct BandRange {
  int k_min = 0;
  int k_max = -1;
  bool contains(int k) const { return k >= k_min && k <= k_max; }
};
BandRange band_range(const GridSpec& grid);

// P_k f: coefficients scaled by phi(2^{-k}|xi|). Out-of-range k gives the
// zero field (those bands carry no retained content).
SpectralField project_band(const SpectralField& field, int k);

// Low-frequency part of the inhomogeneous Besov norm: multiplier psi(|xi|).
SpectralField project_low(const SpectralField& field);

// L^p on the physical lattice by the rectangle rule; p = infinity gives the
// max. p == 2 is evaluated through Parseval.
double lp_norm(const SpectralField& field, double p);

// (sum_k (2^{sk} ||P_k f||_{L^p})^q)^{1/q} over the grid's BandRange, max
// over k when q = infinity; the inhomogeneous version adds ||psi(|xi|)f||_{L^p}.
double besov_norm(const SpectralField& field, double s, double p, double q,
                  bool homogeneous);

// H^n with the Parseval weight: sqrt(sum (1+|xi|^2)^n |c|^2 * L^2).
double sobolev_norm(const SpectralField& field, double n);
// Homogeneous version with weight |xi|^{2k}.
double homogeneous_sobolev_norm(const SpectralField& field, double k);

}  // namespace stratsim
