#pragma once

#include <cmath>
#include <cstdlib>

namespace stratsim {

inline constexpr double pi = 3.14159265358979323846;

// Periodic box [0,L)^2 sampled on an n-by-n lattice. Fourier modes sit on
// xi = (2*pi/L) * m with integer m in [-n/2, n/2) per axis. Lattice storage
// is row-major in the DFT index i in [0,n), where i <= n/2-1 holds m = i and
// i >= n/2 holds m = i - n.
struct GridSpec {
  int n = 0;
  double length = 0.0;
  double dealias_fraction = 2.0 / 3.0;

  int size() const { return n * n; }
  double spacing() const { return length / n; }
  double freq_spacing() const { return 2.0 * pi / length; }

  int mode(int i) const { return i < n / 2 ? i : i - n; }
  int index(int m) const { return m >= 0 ? m : m + n; }
  double freq(int i) const { return freq_spacing() * mode(i); }

  // Largest |m| kept by the dealias rule: modes with max(|m1|,|m2|) beyond
  // dealias_fraction * n/2 are zeroed by dealias().
  int dealias_cut() const {
    return static_cast<int>(std::floor(dealias_fraction * n / 2.0 + 1e-12));
  }
  bool retained(int i, int j) const {
    const int c = dealias_cut();
    return std::abs(mode(i)) <= c && std::abs(mode(j)) <= c;
  }
  double max_retained_freq() const {
    return freq_spacing() * dealias_cut() * std::sqrt(2.0);
  }
  double min_nonzero_freq() const { return freq_spacing(); }

  bool operator==(const GridSpec&) const = default;
};

// Validates n (power of two, >= 8), length > 0 and dealias_fraction in (0,1].
GridSpec make_grid(int n, double length, double dealias_fraction = 2.0 / 3.0);

}  // namespace stratsim
