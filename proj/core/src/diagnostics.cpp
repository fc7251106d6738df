#include "stratsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stratsim/stepper.hpp"

namespace stratsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_of(const SpectralField& f) { return lp_norm(f, kInf); }

double grad_sup(std::span<const SpectralField> fields) {
  double worst = 0.0;
  for (const auto& f : fields) {
    worst = std::max(worst, sup_of(apply_symbol(f, SymbolId::partial(1))));
    worst = std::max(worst, sup_of(apply_symbol(f, SymbolId::partial(2))));
  }
  return worst;
}

void accumulate(NormReport& cur, const NormReport* prev) {
  if (prev == nullptr) return;
  const double dt = cur.time - prev->time;
  if (dt < 0.0) {
    throw std::invalid_argument("measure: reports must advance in time");
  }
  cur.accumulated_bootstrap =
      prev->accumulated_bootstrap +
      0.5 * dt * (prev->besov_b1_inf_1 + cur.besov_b1_inf_1);
  cur.accumulated_blowup =
      prev->accumulated_blowup + 0.5 * dt * (prev->grad_linf + cur.grad_linf);
}

double admissible_r(double q) {
  if (!(q >= 4.0)) {
    throw std::invalid_argument("strichartz: q must be >= 4");
  }
  if (q == 4.0) return kInf;
  if (std::isinf(q)) return 2.0;
  return 2.0 * q / (q - 4.0);
}

// || . ||_{L^q_t} of sampled space norms by the trapezoid rule on a
// (possibly nonuniform) time grid; max over samples when q = inf.
double time_lq(std::span<const double> t, std::span<const double> v, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double integral = 0.0;
  for (size_t i = 1; i < t.size(); ++i) {
    integral += 0.5 * (t[i] - t[i - 1]) *
                (std::pow(v[i - 1], q) + std::pow(v[i], q));
  }
  return std::pow(integral, 1.0 / q);
}

}  // namespace

NormReport measure(const ZState& state, double n_regularity,
                   const NormReport* prev) {
  PrimitiveFields f = from_dispersive(state);
  NormReport r;
  r.time = state.time;
  const double hu = std::sqrt(std::pow(sobolev_norm(f.u1, n_regularity), 2) +
                              std::pow(sobolev_norm(f.u2, n_regularity), 2));
  r.sobolev_hn = hu + sobolev_norm(f.rho, n_regularity);
  r.besov_b1_inf_1 = besov_norm(state.z_plus, 1.0, kInf, 1.0, false) +
                     besov_norm(state.z_minus, 1.0, kInf, 1.0, false);
  const SpectralField fields[] = {f.u1, f.u2, f.rho};
  r.grad_linf = grad_sup(fields);
  r.l2_energy = std::pow(l2_norm(f.u1), 2) + std::pow(l2_norm(f.u2), 2) +
                std::pow(l2_norm(f.rho), 2);
  accumulate(r, prev);
  return r;
}

NormReport measure(const SqgState& state, double n_regularity,
                   const NormReport* prev) {
  auto u = velocity_from_theta(state.theta);
  NormReport r;
  r.time = state.time;
  r.sobolev_hn = sobolev_norm(state.theta, n_regularity);
  r.besov_b1_inf_1 = besov_norm(state.theta, 1.0, kInf, 1.0, false);
  const SpectralField fields[] = {u[0], u[1], state.theta};
  r.grad_linf = grad_sup(fields);
  r.l2_energy = std::pow(l2_norm(state.theta), 2);
  accumulate(r, prev);
  return r;
}

double blowup_functional(const ZState& state) {
  PrimitiveFields f = from_dispersive(state);
  const SpectralField fields[] = {f.u1, f.u2, f.rho};
  return grad_sup(fields);
}

double blowup_functional(const SqgState& state) {
  auto u = velocity_from_theta(state.theta);
  const SpectralField fields[] = {u[0], u[1], state.theta};
  return grad_sup(fields);
}

double bootstrap_norm(std::span<const NormReport> series) {
  double acc = 0.0;
  for (size_t i = 1; i < series.size(); ++i) {
    const double dt = series[i].time - series[i - 1].time;
    if (dt < 0.0) {
      throw std::invalid_argument("bootstrap_norm: series must be time-sorted");
    }
    if (!std::isfinite(series[i].besov_b1_inf_1)) {
      throw std::invalid_argument("bootstrap_norm: non-finite entry");
    }
    acc += 0.5 * dt * (series[i - 1].besov_b1_inf_1 + series[i].besov_b1_inf_1);
  }
  return acc;
}

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_power_law: need >= 2 samples");
  }
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("fit_power_law: samples must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  PowerFit fit;
  fit.exponent = (dn * sxy - sx * sy) / denom;
  fit.log_prefactor = (sy - fit.exponent * sx) / dn;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / dn;
  for (size_t i = 0; i < n; ++i) {
    const double ly = std::log(y[i]);
    const double pred = fit.log_prefactor + fit.exponent * std::log(x[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_y) * (ly - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

DecayFit linear_decay_fit(const SpectralField& f0, double kappa, int band,
                          std::span<const double> times, double lp) {
  if (times.size() < 2) {
    throw std::invalid_argument("linear_decay_fit: need sample times");
  }
  const double window = f0.grid().length / (4.0 * kappa);
  const double t_lo = times.front();
  const double t_hi = times.back();
  if (!(t_lo > 0.0) || t_hi > window * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "linear_decay_fit: times must lie in (0, L/(4 kappa)]");
  }
  const double decades = std::log10(t_hi / t_lo);
  if (decades > 0.0 &&
      static_cast<double>(times.size() - 1) / decades < 8.0 - 1e-9) {
    throw std::invalid_argument("linear_decay_fit: need >= 8 samples per decade");
  }

  SpectralField pk = project_band(f0, band);
  const double l1 = lp_norm(pk, 1.0);
  const double band_scale = std::pow(4.0, band);  // 2^{2k}

  DecayFit fit;
  fit.band = band;
  fit.kappa = kappa;
  fit.lp = lp;
  fit.t_min = t_lo;
  fit.t_max = t_hi;
  for (double t : times) {
    SpectralField evolved = propagator(pk, kappa, t, +1);
    const double sup = sup_of(evolved);
    fit.times.push_back(t);
    fit.sup_norms.push_back(sup);
    fit.lp_norms.push_back(lp_norm(evolved, lp));
    fit.const_ratio_max =
        std::max(fit.const_ratio_max,
                 sup * std::sqrt(kappa * t) / (band_scale * l1));
  }
  PowerFit sup_fit = fit_power_law(fit.times, fit.sup_norms);
  fit.slope = sup_fit.exponent;
  fit.r_squared = sup_fit.r_squared;
  PowerFit lp_fit = fit_power_law(fit.times, fit.lp_norms);
  fit.lp_slope = lp_fit.exponent;
  fit.lp_r_squared = lp_fit.r_squared;
  return fit;
}

StrichartzResult strichartz_ratio(const SpectralField& f0, double kappa,
                                  double q, int band, double horizon,
                                  int quad_points) {
  const double r = admissible_r(q);
  if (horizon > f0.grid().length / (4.0 * kappa) * (1.0 + 1e-12)) {
    throw std::invalid_argument("strichartz_ratio: horizon beyond wrap window");
  }
  SpectralField pk = project_band(f0, band);

  // graded grid biased toward t = 0 where the integrand peaks
  std::vector<double> t(quad_points + 1), v(quad_points + 1);
  for (int i = 0; i <= quad_points; ++i) {
    const double s = static_cast<double>(i) / quad_points;
    t[i] = horizon * s * s * s;
  }
  for (int i = 0; i <= quad_points; ++i) {
    v[i] = lp_norm(propagator(pk, kappa, t[i], +1), r);
  }

  StrichartzResult out;
  out.q = q;
  out.r = r;
  out.lhs = time_lq(t, v, q);
  out.scale = std::pow(kappa, -1.0 / q) * std::pow(2.0, 4.0 * band / q) *
              l2_norm(pk);
  out.ratio = out.scale > 0.0 ? out.lhs / out.scale : 0.0;
  return out;
}

StrichartzResult duhamel_strichartz_ratio(
    const std::function<SpectralField(double)>& forcing, double kappa,
    double q1, int band, double horizon, int steps) {
  const double r1 = admissible_r(q1);
  const double dt = horizon / steps;

  // March D(t) = int_0^t e^{i(t-s)L} P_k F(s) ds with the propagator exact
  // and the s-integral by the trapezoid rule:
  //   D_{j+1} = e^{i dt L}(D_j + dt/2 F_j) + dt/2 F_{j+1}.
  SpectralField f_prev = project_band(forcing(0.0), band);
  SpectralField d(f_prev.grid(), true);
  std::vector<double> t(steps + 1), v(steps + 1);
  double l1l2 = 0.0;
  t[0] = 0.0;
  v[0] = lp_norm(d, r1);
  for (int j = 0; j < steps; ++j) {
    SpectralField f_next = project_band(forcing((j + 1) * dt), band);
    l1l2 += 0.5 * dt * (l2_norm(f_prev) + l2_norm(f_next));
    d = propagator(d + (0.5 * dt) * f_prev, kappa, dt, -1);
    d += (0.5 * dt) * f_next;
    t[j + 1] = (j + 1) * dt;
    v[j + 1] = lp_norm(d, r1);
    f_prev = std::move(f_next);
  }

  StrichartzResult out;
  out.q = q1;
  out.r = r1;
  out.lhs = time_lq(t, v, q1);
  out.scale =
      std::pow(kappa, -1.0 / q1) * std::pow(2.0, 4.0 * band / q1) * l1l2;
  out.ratio = out.scale > 0.0 ? out.lhs / out.scale : 0.0;
  return out;
}

double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              double m) {
  const GridSpec& grid = f.grid();
  auto u = apply_perp_grad_inv_mod(g);
  std::vector<complexd> u1 = inverse_transform_complex(u[0]);
  std::vector<complexd> u2 = inverse_transform_complex(u[1]);
  std::vector<complexd> f1 =
      inverse_transform_complex(apply_symbol(f, SymbolId::partial(1)));
  std::vector<complexd> f2 =
      inverse_transform_complex(apply_symbol(f, SymbolId::partial(2)));
  std::vector<complexd> fm =
      inverse_transform_complex(apply_symbol(f, SymbolId::mod_nabla(1.0)));

  // u.grad f is scalar; u |nabla|f is the vector (u1, u2) |nabla|f, whose H^m
  // norm combines the components.
  std::vector<complexd> grad_prod(u1.size()), mod_prod1(u1.size()),
      mod_prod2(u1.size());
  for (size_t k = 0; k < u1.size(); ++k) {
    grad_prod[k] = u1[k] * f1[k] + u2[k] * f2[k];
    mod_prod1[k] = u1[k] * fm[k];
    mod_prod2[k] = u2[k] * fm[k];
  }
  const double lhs =
      sobolev_norm(dealias(forward_transform(grad_prod, grid)), m) +
      std::sqrt(
          std::pow(sobolev_norm(dealias(forward_transform(mod_prod1, grid)), m), 2) +
          std::pow(sobolev_norm(dealias(forward_transform(mod_prod2, grid)), m), 2));

  constexpr double inf = std::numeric_limits<double>::infinity();
  const double rhs = sobolev_norm(g, m) * besov_norm(f, 1.0, inf, 1.0, true) +
                     besov_norm(g, 0.0, inf, 1.0, true) * sobolev_norm(f, m + 1.0);
  if (rhs == 0.0) return 0.0;
  return lhs / rhs;
}

double summation_ratio(const SpectralField& f, double l, double delta) {
  const BandRange range = band_range(f.grid());
  double sum = 0.0;
  for (int k = range.k_min; k <= range.k_max; ++k) {
    sum += std::pow(2.0, l * k) * l2_norm(project_band(f, k));
  }
  const double h = sobolev_norm(f, l + delta);
  return h > 0.0 ? sum / h : 0.0;
}

}  // namespace stratsim
