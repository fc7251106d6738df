#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "stratsim/grid.hpp"

namespace stratsim {

using complexd = std::complex<double>;

// One scalar field stored as its n*n Fourier coefficients, row-major in the
// lattice index i1*n + i2. The forward transform carries 1/n^2 so the xi=0
// coefficient is the field mean and ||f||_{L^2}^2 = L^2 * sum |coeff|^2.
// Real fields keep the Hermitian symmetry coeff(-m) == conj(coeff(m)); the
// multiplier operations below preserve it (realness is a maintained property,
// not an enforced one, so the complex Z evolution can reuse the same type).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid, bool zero_mode_policy = false)
      : grid_(grid),
        coeffs_(static_cast<size_t>(grid.size())),
        zero_mode_policy_(zero_mode_policy) {}

  const GridSpec& grid() const { return grid_; }
  int n() const { return grid_.n; }

  complexd& at(int i, int j) { return coeffs_[static_cast<size_t>(i) * grid_.n + j]; }
  const complexd& at(int i, int j) const {
    return coeffs_[static_cast<size_t>(i) * grid_.n + j];
  }
  // Signed-mode access, m1 and m2 in [-n/2, n/2).
  complexd& at_mode(int m1, int m2) { return at(grid_.index(m1), grid_.index(m2)); }
  const complexd& at_mode(int m1, int m2) const {
    return at(grid_.index(m1), grid_.index(m2));
  }

  std::span<complexd> coeffs() { return coeffs_; }
  std::span<const complexd> coeffs() const { return coeffs_; }

  complexd mean() const { return coeffs_.empty() ? complexd{} : coeffs_[0]; }
  bool zero_mode_policy() const { return zero_mode_policy_; }
  // Zeroes the xi=0 coefficient and marks the field mean-free.
  void enforce_zero_mode() {
    if (!coeffs_.empty()) coeffs_[0] = complexd{};
    zero_mode_policy_ = true;
  }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);
  SpectralField& operator*=(complexd scale);

 private:
  GridSpec grid_{};
  std::vector<complexd> coeffs_;
  bool zero_mode_policy_ = false;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField f);
SpectralField operator*(complexd s, SpectralField f);

// Transforms. inverse_transform returns the real part of the synthesis; the
// _complex variants carry the full complex values (used inside the Z
// propagation and by diagnostics that check realness).
SpectralField forward_transform(std::span<const double> samples, const GridSpec& grid);
SpectralField forward_transform(std::span<const complexd> samples, const GridSpec& grid);
std::vector<double> inverse_transform(const SpectralField& field);
std::vector<complexd> inverse_transform_complex(const SpectralField& field);

// Fourier multipliers of the linearized dynamics. All symbols of nonpositive
// homogeneity evaluate to 0 at xi = 0; symbols odd in xi_j are zeroed on the
// unpaired Nyquist line m_j = -n/2 so real fields stay real.
struct SymbolId {
  enum class Kind {
    riesz1,       // -i xi1/|xi|
    riesz2,       // -i xi2/|xi|
    mod_nabla,    // |xi|^s        (param = s)
    partial1,     // i xi1
    partial2,     // i xi2
    inv_laplace,  // -|xi|^{-2}
    lambda,       // kappa xi1/|xi| (param = kappa); real symbol, breaks
                  // realness, meant for use inside complex propagators
  };
  Kind kind;
  double param = 0.0;

  static SymbolId riesz(int axis) {
    return {axis == 1 ? Kind::riesz1 : Kind::riesz2, 0.0};
  }
  static SymbolId mod_nabla(double s) { return {Kind::mod_nabla, s}; }
  static SymbolId partial(int axis) {
    return {axis == 1 ? Kind::partial1 : Kind::partial2, 0.0};
  }
  static SymbolId inv_laplace() { return {Kind::inv_laplace, 0.0}; }
  static SymbolId lambda(double kappa) { return {Kind::lambda, kappa}; }

  bool negative_power() const {
    return kind == Kind::inv_laplace ||
           (kind == Kind::mod_nabla && param < 0.0);
  }
};

// Throws std::invalid_argument when a negative-power symbol is applied to a
// field with nonzero mean.
SpectralField apply_symbol(const SpectralField& field, SymbolId symbol);

// The vector multiplier (-i xi2/|xi|, i xi1/|xi|), i.e. perp-gradient of
// |nabla|^{-1}. Requires a zero xi=0 coefficient like the other
// negative-power symbols do not -- the symbol is 0-homogeneous and defined
// as 0 at the origin, so any input is accepted.
std::array<SpectralField, 2> apply_perp_grad_inv_mod(const SpectralField& field);

// Zeroes every coefficient with max(|m1|,|m2|) beyond the grid's dealias cut.
SpectralField dealias(SpectralField field);

// Dispersion relation Lambda_kappa(xi) = kappa xi1/|xi| evaluated on the
// lattice, with the zero-mode/Nyquist convention above.
double lambda_symbol(const GridSpec& grid, int i, int j, double kappa);

// Diagnostics helpers.
double l2_norm(const SpectralField& field);           // L * sqrt(sum |c|^2)
double max_abs_coeff(const SpectralField& field);
double hermitian_asymmetry(const SpectralField& field);  // max |c(-m)-conj(c(m))|
bool all_finite(const SpectralField& field);

// Real field with coeff(m) = amplitude, coeff(-m) = conj(amplitude); the
// physical field is 2*Re(amplitude * exp(i xi.x)).
SpectralField pure_mode(const GridSpec& grid, int m1, int m2, complexd amplitude);

}  // namespace stratsim
