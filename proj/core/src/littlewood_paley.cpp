#include "stratsim/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace stratsim {

namespace {

double mollifier(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

bool is_inf(double x) { return std::isinf(x); }

}  // namespace

double bump_psi(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = mollifier(2.0 - a);
  const double down = mollifier(a - 1.0);
  return up / (up + down);
}

double bump_phi(double x) { return bump_psi(x) - bump_psi(2.0 * x); }

BandRange band_range(const GridSpec& grid) {
  const double xi_min = grid.min_nonzero_freq();
  const double xi_max = grid.max_retained_freq();
  BandRange r;
  r.k_min = static_cast<int>(std::ceil(std::log2(xi_min / 2.0) - 1e-9));
  r.k_max = static_cast<int>(std::floor(std::log2(2.0 * xi_max) + 1e-9));
  return r;
}

SpectralField project_band(const SpectralField& field, int k) {
  const GridSpec& g = field.grid();
  SpectralField out(g, true);
  if (!band_range(g).contains(k)) return out;
  const double scale = std::ldexp(1.0, -k);  // 2^{-k}
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.freq(j);
      const double r = std::sqrt(xi1 * xi1 + xi2 * xi2);
      const double w = bump_phi(scale * r);
      if (w != 0.0) out.at(i, j) = w * field.at(i, j);
    }
  }
  return out;
}

SpectralField project_low(const SpectralField& field) {
  const GridSpec& g = field.grid();
  SpectralField out(g);
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.freq(j);
      const double w = bump_psi(std::sqrt(xi1 * xi1 + xi2 * xi2));
      if (w != 0.0) out.at(i, j) = w * field.at(i, j);
    }
  }
  return out;
}

double lp_norm(const SpectralField& field, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("lp_norm: p must be >= 1");
  }
  if (p == 2.0) return l2_norm(field);

  std::vector<complexd> phys = inverse_transform_complex(field);
  if (is_inf(p)) {
    double m = 0.0;
    for (const auto& v : phys) m = std::max(m, std::abs(v));
    return m;
  }
  const double dx = field.grid().spacing();
  double sum = 0.0;
  for (const auto& v : phys) sum += std::pow(std::abs(v), p);
  return std::pow(dx * dx * sum, 1.0 / p);
}

double besov_norm(const SpectralField& field, double s, double p, double q,
                  bool homogeneous) {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("besov_norm: p and q must be >= 1");
  }
  const BandRange range = band_range(field.grid());
  double sum = 0.0;
  double max_term = 0.0;
  for (int k = range.k_min; k <= range.k_max; ++k) {
    const double band_lp = lp_norm(project_band(field, k), p);
    const double term = std::pow(2.0, s * k) * band_lp;
    if (is_inf(q)) {
      max_term = std::max(max_term, term);
    } else {
      sum += std::pow(term, q);
    }
  }
  double value = is_inf(q) ? max_term : std::pow(sum, 1.0 / q);
  if (!homogeneous) value += lp_norm(project_low(field), p);
  return value;
}

double sobolev_norm(const SpectralField& field, double n) {
  if (n < 0.0) throw std::invalid_argument("sobolev_norm: n must be >= 0");
  const GridSpec& g = field.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < g.n; ++j) {
      const double xi2 = g.freq(j);
      const double w = std::pow(1.0 + xi1 * xi1 + xi2 * xi2, n);
      sum += w * std::norm(field.at(i, j));
    }
  }
  return g.length * std::sqrt(sum);
}

double homogeneous_sobolev_norm(const SpectralField& field, double k) {
  const GridSpec& g = field.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < g.n; ++j) {
      const double xi2 = g.freq(j);
      const double r2 = xi1 * xi1 + xi2 * xi2;
      if (r2 > 0.0) sum += std::pow(r2, k) * std::norm(field.at(i, j));
    }
  }
  return g.length * std::sqrt(sum);
}

}  // namespace stratsim
