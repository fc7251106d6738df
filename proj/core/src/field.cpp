#include "stratsim/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace stratsim {

namespace {

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("field: grid mismatch");
  }
}

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_same_grid(*this, other);
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  zero_mode_policy_ = zero_mode_policy_ && other.zero_mode_policy_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_same_grid(*this, other);
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  zero_mode_policy_ = zero_mode_policy_ && other.zero_mode_policy_;
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::operator*=(complexd scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField f) { return f *= s; }
SpectralField operator*(complexd s, SpectralField f) { return f *= s; }

SpectralField forward_transform(std::span<const complexd> samples,
                                const GridSpec& grid) {
  if (samples.size() != static_cast<size_t>(grid.size())) {
    throw std::invalid_argument("forward_transform: sample count does not match grid");
  }
  SpectralField out(grid);
  detail::fft_forward(grid.n, samples.data(), out.coeffs().data());
  const double scale = 1.0 / grid.size();
  for (auto& c : out.coeffs()) c *= scale;
  return out;
}

SpectralField forward_transform(std::span<const double> samples,
                                const GridSpec& grid) {
  if (samples.size() != static_cast<size_t>(grid.size())) {
    throw std::invalid_argument("forward_transform: sample count does not match grid");
  }
  std::vector<complexd> tmp(samples.begin(), samples.end());
  return forward_transform(std::span<const complexd>(tmp), grid);
}

std::vector<complexd> inverse_transform_complex(const SpectralField& field) {
  std::vector<complexd> out(field.coeffs().size());
  detail::fft_backward(field.n(), field.coeffs().data(), out.data());
  return out;
}

std::vector<double> inverse_transform(const SpectralField& field) {
  std::vector<complexd> phys = inverse_transform_complex(field);
  std::vector<double> out(phys.size());
  for (size_t k = 0; k < phys.size(); ++k) out[k] = phys[k].real();
  return out;
}

SpectralField apply_symbol(const SpectralField& field, SymbolId symbol) {
  using Kind = SymbolId::Kind;
  const GridSpec& g = field.grid();
  if (symbol.negative_power() && field.mean() != complexd{}) {
    throw std::invalid_argument(
        "apply_symbol: negative-power symbol requires a mean-zero field");
  }

  SpectralField out(g, true);
  const int n = g.n;
  const int nyq = n / 2;
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.freq(j);
      const double r2 = xi1 * xi1 + xi2 * xi2;
      const complexd c = field.at(i, j);
      complexd m{};
      switch (symbol.kind) {
        case Kind::riesz1:
          if (r2 > 0.0 && i != nyq) m = complexd(0.0, -xi1 / std::sqrt(r2));
          break;
        case Kind::riesz2:
          if (r2 > 0.0 && j != nyq) m = complexd(0.0, -xi2 / std::sqrt(r2));
          break;
        case Kind::mod_nabla:
          if (r2 > 0.0) {
            m = std::pow(r2, 0.5 * symbol.param);
          } else if (symbol.param == 0.0) {
            m = 1.0;
          }
          break;
        case Kind::partial1:
          if (i != nyq) m = complexd(0.0, xi1);
          break;
        case Kind::partial2:
          if (j != nyq) m = complexd(0.0, xi2);
          break;
        case Kind::inv_laplace:
          if (r2 > 0.0) m = -1.0 / r2;
          break;
        case Kind::lambda:
          m = lambda_symbol(g, i, j, symbol.param);
          break;
      }
      out.at(i, j) = m * c;
    }
  }
  return out;
}

std::array<SpectralField, 2> apply_perp_grad_inv_mod(const SpectralField& field) {
  const GridSpec& g = field.grid();
  SpectralField out1(g, true), out2(g, true);
  const int n = g.n;
  const int nyq = n / 2;
  for (int i = 0; i < n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < n; ++j) {
      const double xi2 = g.freq(j);
      const double r2 = xi1 * xi1 + xi2 * xi2;
      const complexd c = field.at(i, j);
      if (r2 > 0.0) {
        const double inv_r = 1.0 / std::sqrt(r2);
        out1.at(i, j) = (j == nyq) ? complexd{} : complexd(0.0, -xi2 * inv_r) * c;
        out2.at(i, j) = (i == nyq) ? complexd{} : complexd(0.0, xi1 * inv_r) * c;
      }
    }
  }
  return {std::move(out1), std::move(out2)};
}

SpectralField dealias(SpectralField field) {
  const GridSpec& g = field.grid();
  const int cut = g.dealias_cut();
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    const bool kill_row = std::abs(g.mode(i)) > cut;
    for (int j = 0; j < n; ++j) {
      if (kill_row || std::abs(g.mode(j)) > cut) field.at(i, j) = complexd{};
    }
  }
  return field;
}

double lambda_symbol(const GridSpec& grid, int i, int j, double kappa) {
  const int nyq = grid.n / 2;
  if (i == nyq) return 0.0;  // unpaired Nyquist line, odd symbol convention
  const double xi1 = grid.freq(i);
  const double xi2 = grid.freq(j);
  const double r2 = xi1 * xi1 + xi2 * xi2;
  if (r2 == 0.0) return 0.0;
  return kappa * xi1 / std::sqrt(r2);
}

double l2_norm(const SpectralField& field) {
  double sum = 0.0;
  for (const auto& c : field.coeffs()) sum += std::norm(c);
  return field.grid().length * std::sqrt(sum);
}

double max_abs_coeff(const SpectralField& field) {
  double m = 0.0;
  for (const auto& c : field.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double hermitian_asymmetry(const SpectralField& field) {
  const int n = field.n();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ni = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int nj = (n - j) % n;
      worst = std::max(worst,
                       std::abs(field.at(ni, nj) - std::conj(field.at(i, j))));
    }
  }
  return worst;
}

bool all_finite(const SpectralField& field) {
  for (const auto& c : field.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

SpectralField pure_mode(const GridSpec& grid, int m1, int m2, complexd amplitude) {
  SpectralField f(grid, true);
  f.at_mode(m1, m2) = amplitude;
  if (m1 != 0 || m2 != 0) {
    f.at_mode(-m1, -m2) += std::conj(amplitude);
  } else {
    f = SpectralField(grid);
    f.at_mode(0, 0) = amplitude;
  }
  return f;
}

}  // namespace stratsim
