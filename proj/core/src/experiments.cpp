#include "stratsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace stratsim {

namespace {

// Smooth bandpass onto dyadic bands [-2, 3]: the telescoped sum of phi over
// those bands. Kills the mean (B(0) = 0) and caps content at |xi| = 16.
double band_limit_weight(double r) {
  return bump_psi(std::ldexp(r, -3)) - bump_psi(std::ldexp(r, 3));
}

SpectralField apply_band_limit(const SpectralField& f) {
  const GridSpec& g = f.grid();
  SpectralField out(g, true);
  for (int i = 0; i < g.n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < g.n; ++j) {
      const double xi2 = g.freq(j);
      const double w = band_limit_weight(std::sqrt(xi1 * xi1 + xi2 * xi2));
      if (w != 0.0) out.at(i, j) = w * f.at(i, j);
    }
  }
  return out;
}

// Gaussian envelope modulated by a plane wave; sigma = L/32 keeps the packet
// well inside the box, the modulation centers the spectrum near |xi| ~ 1.
SpectralField modulated_gaussian(const GridSpec& g, double cx, double cy,
                                 double sign) {
  const double sigma = g.length / 32.0;
  const double xi_bar1 = 1.0, xi_bar2 = 0.5;
  std::vector<double> samples(static_cast<size_t>(g.size()));
  for (int i = 0; i < g.n; ++i) {
    const double x = i * g.spacing();
    for (int j = 0; j < g.n; ++j) {
      const double y = j * g.spacing();
      // nearest periodic image
      double dx = x - cx, dy = y - cy;
      dx -= g.length * std::round(dx / g.length);
      dy -= g.length * std::round(dy / g.length);
      const double env = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      samples[static_cast<size_t>(i) * g.n + j] =
          sign * env * std::cos(xi_bar1 * dx + xi_bar2 * dy);
    }
  }
  return forward_transform(std::span<const double>(samples), g);
}

SpectralField random_band_field(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField draw(g);
  for (auto& c : draw.coeffs()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = complexd(re, im);
  }
  // hermitify so the field is real
  SpectralField f(g, true);
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    const int ni = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int nj = (n - j) % n;
      f.at(i, j) = 0.5 * (draw.at(i, j) + std::conj(draw.at(ni, nj)));
    }
  }
  return apply_band_limit(f);
}

double combined_hn(const SpectralField& omega, const SpectralField& rho,
                   double n_reg) {
  auto u = velocity_from_omega(omega);
  const double hu = std::sqrt(std::pow(sobolev_norm(u[0], n_reg), 2) +
                              std::pow(sobolev_norm(u[1], n_reg), 2));
  return hu + sobolev_norm(rho, n_reg);
}

double lifespan_horizon(const ExperimentConfig& exp_cfg, double epsilon,
                        double kappa) {
  return exp_cfg.horizon_factor * std::pow(epsilon, -4.0 / 3.0) *
         std::cbrt(kappa);
}

// Linear interpolation of the crossing time of a sampled monotone quantity.
double crossing_time(double t0, double v0, double t1, double v1, double thr) {
  if (v1 <= v0) return t1;
  const double s = (thr - v0) / (v1 - v0);
  return t0 + std::clamp(s, 0.0, 1.0) * (t1 - t0);
}

struct StopCheck {
  bool stopped = false;
  double t_star = 0.0;
  std::string reason;
};

StopCheck check_thresholds(const NormReport& prev, const NormReport& cur,
                           double hn_stop, double boot_stop) {
  StopCheck out;
  double t_hn = std::numeric_limits<double>::infinity();
  double t_boot = std::numeric_limits<double>::infinity();
  if (cur.sobolev_hn >= hn_stop) {
    t_hn = crossing_time(prev.time, prev.sobolev_hn, cur.time, cur.sobolev_hn,
                         hn_stop);
  }
  if (cur.accumulated_bootstrap >= boot_stop) {
    t_boot = crossing_time(prev.time, prev.accumulated_bootstrap, cur.time,
                           cur.accumulated_bootstrap, boot_stop);
  }
  if (std::isfinite(t_hn) || std::isfinite(t_boot)) {
    out.stopped = true;
    if (t_hn <= t_boot) {
      out.t_star = t_hn;
      out.reason = "h_n_doubling";
    } else {
      out.t_star = t_boot;
      out.reason = "bootstrap_threshold";
    }
  }
  return out;
}

template <class State>
RunResult run_loop(State state, const RunConfig& cfg) {
  const auto& exp_cfg = cfg.experiment;
  const double eps = cfg.initial_data.epsilon;
  const double horizon = lifespan_horizon(exp_cfg, eps, state.kappa);
  const double hn_stop = exp_cfg.hn_doubling_factor * eps;
  const double boot_stop = exp_cfg.bootstrap_threshold;
  const bool use_if = cfg.stepper.scheme == StepperConfig::Scheme::ifrk4 ||
                      !cfg.stepper.nonlinearity_enabled;

  RunResult out;
  out.record.model = to_string(cfg.model);
  out.record.epsilon = eps;
  out.record.kappa = state.kappa;
  out.record.n_regularity = cfg.initial_data.n_regularity;
  out.record.seed = cfg.initial_data.seed;
  out.record.grid_n = cfg.grid.n;
  out.record.length = cfg.grid.length;

  NormReport report = measure(state, cfg.initial_data.n_regularity, nullptr);
  out.reports.push_back(report);

  double dt = cfg.stepper.dt > 0.0
                  ? cfg.stepper.dt
                  : cfl_dt(state, cfg.stepper.cfl_safety, cfg.stepper.scheme);
  out.record.dt = dt;

  while (true) {
    try {
      for (int s = 0; s < cfg.stepper.diagnostic_stride &&
                      state.time < horizon * (1.0 - 1e-12);
           ++s) {
        const double step = std::min(dt, horizon - state.time);
        state = use_if ? step_ifrk4(state, step, cfg.stepper.nonlinearity_enabled)
                       : step_rk4(state, step);
      }
    } catch (const numerical_abort&) {
      out.record.t_star = state.time;
      out.record.stop_reason = "nan_abort";
      return out;
    }
    NormReport prev = out.reports.back();
    report = measure(state, cfg.initial_data.n_regularity, &prev);
    out.reports.push_back(report);

    StopCheck stop = check_thresholds(prev, report, hn_stop, boot_stop);
    if (stop.stopped) {
      out.record.t_star = stop.t_star;
      out.record.stop_reason = stop.reason;
      return out;
    }
    if (state.time >= horizon * (1.0 - 1e-12)) {
      out.record.t_star = horizon;
      out.record.stop_reason = "horizon_reached";
      return out;
    }
    if (cfg.stepper.dt <= 0.0) {
      dt = cfl_dt(state, cfg.stepper.cfl_safety, cfg.stepper.scheme);
    }
  }
}

}  // namespace

VorticityState make_initial_boussinesq(const InitialDataSpec& spec,
                                       const GridSpec& grid, double kappa) {
  if (!(spec.epsilon > 0.0)) {
    throw std::invalid_argument("initial data: epsilon must be positive");
  }
  SpectralField omega, rho;
  if (spec.profile == InitialDataSpec::Profile::gaussian_pair) {
    omega = apply_band_limit(
        modulated_gaussian(grid, 0.4 * grid.length, 0.5 * grid.length, 1.0));
    rho = apply_band_limit(
        modulated_gaussian(grid, 0.6 * grid.length, 0.5 * grid.length, 1.0));
  } else {
    std::mt19937_64 rng(spec.seed);
    omega = random_band_field(grid, rng);
    rho = random_band_field(grid, rng);
  }
  // dealias before normalizing so the measured H^n equals epsilon exactly
  omega = dealias(std::move(omega));
  rho = dealias(std::move(rho));
  omega.enforce_zero_mode();
  rho.enforce_zero_mode();
  const double norm = combined_hn(omega, rho, spec.n_regularity);
  const double scale = spec.epsilon / norm;
  omega *= scale;
  rho *= scale;
  VorticityState state;
  state.omega = std::move(omega);
  state.rho = std::move(rho);
  state.kappa = kappa;
  return state;
}

SqgState make_initial_sqg(const InitialDataSpec& spec, const GridSpec& grid,
                          double kappa) {
  if (!(spec.epsilon > 0.0)) {
    throw std::invalid_argument("initial data: epsilon must be positive");
  }
  SpectralField theta;
  if (spec.profile == InitialDataSpec::Profile::gaussian_pair) {
    theta = apply_band_limit(
        modulated_gaussian(grid, 0.4 * grid.length, 0.5 * grid.length, 1.0) +
        modulated_gaussian(grid, 0.6 * grid.length, 0.5 * grid.length, -1.0));
  } else {
    std::mt19937_64 rng(spec.seed);
    theta = random_band_field(grid, rng);
  }
  theta = dealias(std::move(theta));
  theta.enforce_zero_mode();
  const double norm = sobolev_norm(theta, spec.n_regularity);
  theta *= spec.epsilon / norm;
  SqgState state;
  state.theta = std::move(theta);
  state.kappa = kappa;
  return state;
}

RunResult run_until_threshold(const VorticityState& initial,
                              const RunConfig& config) {
  return run_loop(to_dispersive(initial), config);
}

RunResult run_until_threshold(const SqgState& initial, const RunConfig& config) {
  return run_loop(initial, config);
}

std::vector<SweepRecord> lifespan_sweep(const RunConfig& config, int threads) {
  struct Task {
    double epsilon;
    double kappa;
  };
  std::vector<Task> tasks;
  for (double eps : config.experiment.eps_axis) {
    tasks.push_back({eps, config.experiment.kappa_ref});
  }
  for (double kappa : config.experiment.kappa_axis) {
    tasks.push_back({config.experiment.eps_ref, kappa});
  }

  std::vector<SweepRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      RunConfig cfg = config;
      cfg.kappa = tasks[idx].kappa;
      cfg.initial_data.epsilon = tasks[idx].epsilon;
      if (cfg.model == Model::boussinesq) {
        auto init = make_initial_boussinesq(cfg.initial_data, cfg.grid, cfg.kappa);
        records[idx] = run_until_threshold(init, cfg).record;
      } else {
        auto init = make_initial_sqg(cfg.initial_data, cfg.grid, cfg.kappa);
        records[idx] = run_until_threshold(init, cfg).record;
      }
    }
  };

  const int nw = std::max(1, threads);
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(),
            [](const SweepRecord& a, const SweepRecord& b) {
              if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
              if (a.kappa != b.kappa) return a.kappa < b.kappa;
              return a.seed < b.seed;
            });
  return records;
}

ScalingFit fit_scaling(std::span<const SweepRecord> records, double kappa_ref,
                       double eps_ref) {
  ScalingFit fit;
  std::vector<double> eps, t_eps, kap, t_kap;
  for (const auto& r : records) {
    if (r.censored()) {
      fit.censored.push_back(r);
      continue;
    }
    if (r.kappa == kappa_ref) {
      eps.push_back(r.epsilon);
      t_eps.push_back(r.t_star);
    }
    if (r.epsilon == eps_ref) {
      kap.push_back(r.kappa);
      t_kap.push_back(r.t_star);
    }
  }
  fit.alpha_points = static_cast<int>(eps.size());
  fit.beta_points = static_cast<int>(kap.size());
  if (fit.alpha_points >= 4) {
    PowerFit p = fit_power_law(eps, t_eps);
    fit.alpha_eps = p.exponent;
    fit.alpha_r_squared = p.r_squared;
  }
  if (fit.beta_points >= 4) {
    PowerFit p = fit_power_law(kap, t_kap);
    fit.beta_kappa = p.exponent;
    fit.beta_r_squared = p.r_squared;
  }
  return fit;
}

double time_scaling_check(const VorticityState& initial, double t_horizon,
                          double cfl_safety, std::optional<double> dt_a,
                          std::optional<double> dt_b) {
  auto integrate = [&](ZState z, double t_end, double dt) {
    while (z.time < t_end * (1.0 - 1e-12)) {
      z = step_ifrk4(z, std::min(dt, t_end - z.time), true);
    }
    return z;
  };

  ZState za = to_dispersive(initial);
  const double step_a =
      dt_a.value_or(cfl_dt(za, cfl_safety, StepperConfig::Scheme::ifrk4));
  za = integrate(std::move(za), t_horizon, step_a);

  VorticityState scaled;
  scaled.omega = (1.0 / initial.kappa) * initial.omega;
  scaled.rho = (1.0 / initial.kappa) * initial.rho;
  scaled.kappa = 1.0;
  ZState zb = to_dispersive(scaled);
  const double step_b =
      dt_b.value_or(cfl_dt(zb, cfl_safety, StepperConfig::Scheme::ifrk4));
  zb = integrate(std::move(zb), initial.kappa * t_horizon, step_b);

  PrimitiveFields fa = from_dispersive(za);
  PrimitiveFields fb = from_dispersive(zb);
  const double inv_kappa = 1.0 / initial.kappa;
  const double err =
      std::sqrt(std::pow(l2_norm(inv_kappa * fa.u1 - fb.u1), 2) +
                std::pow(l2_norm(inv_kappa * fa.u2 - fb.u2), 2) +
                std::pow(l2_norm(inv_kappa * fa.rho - fb.rho), 2));
  const double ref = std::sqrt(std::pow(l2_norm(fb.u1), 2) +
                               std::pow(l2_norm(fb.u2), 2) +
                               std::pow(l2_norm(fb.rho), 2));
  return err / ref;
}

}  // namespace stratsim
