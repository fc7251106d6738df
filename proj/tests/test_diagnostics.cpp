#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "stratsim/diagnostics.hpp"
#include "stratsim/stepper.hpp"
#include "test_util.hpp"

using namespace stratsim;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Radial gaussian spectrum, mean-zero; a generic localized packet.
SpectralField gaussian_packet(const GridSpec& g, double width = 1.0) {
  SpectralField f(g, true);
  for (int i = 0; i < g.n; ++i) {
    const double xi1 = g.freq(i);
    for (int j = 0; j < g.n; ++j) {
      const double xi2 = g.freq(j);
      const double r2 = xi1 * xi1 + xi2 * xi2;
      if (r2 > 0.0) f.at(i, j) = std::exp(-width * r2);
    }
  }
  return f;
}

std::vector<double> geometric_times(double t0, double t1, int count) {
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) {
    t[i] = t0 * std::pow(t1 / t0, static_cast<double>(i) / (count - 1));
  }
  return t;
}

}  // namespace

TEST_CASE("fit_power_law recovers exact power laws") {
  std::vector<double> x = {0.1, 0.2, 0.4, 0.9, 2.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.7 * std::pow(v, -4.0 / 3.0));
  PowerFit fit = fit_power_law(x, y);
  CHECK(std::abs(fit.exponent + 4.0 / 3.0) < 1e-10);
  CHECK(fit.r_squared == doctest::Approx(1.0));

  CHECK_THROWS_AS(fit_power_law(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("linear_decay_fit validates its window and sampling density") {
  GridSpec g = make_grid(64, 20.0 * pi);  // window L/(4 kappa) = 5 pi
  SpectralField f = gaussian_packet(g);
  std::vector<double> bad_window = geometric_times(1.0, 100.0, 40);
  CHECK_THROWS_AS(linear_decay_fit(f, 1.0, 0, bad_window), std::invalid_argument);
  std::vector<double> sparse = geometric_times(1.0, 15.0, 5);
  CHECK_THROWS_AS(linear_decay_fit(f, 1.0, 0, sparse), std::invalid_argument);
}

TEST_CASE("free decay of a band-0 packet approaches the -1/2 law") {
  GridSpec g = make_grid(256, 100.0 * pi, 1.0);
  SpectralField f = gaussian_packet(g);
  std::vector<double> times = geometric_times(4.0, 60.0, 16);
  DecayFit fit = linear_decay_fit(f, 1.0, 0, times);
  CHECK(fit.slope > -0.65);
  CHECK(fit.slope < -0.35);
  CHECK(fit.const_ratio_max < 10.0);
  // accumulated sup-norm integral grows like t^{1/2}: sanity on the samples
  CHECK(fit.sup_norms.front() > fit.sup_norms.back());
}

TEST_CASE("strichartz ratio at (inf,2) is exactly one by unitarity") {
  GridSpec g = make_grid(64, 20.0 * pi);
  SpectralField f = gaussian_packet(g);
  StrichartzResult res = strichartz_ratio(f, 1.0, inf, 0, 10.0, 32);
  CHECK(res.r == doctest::Approx(2.0));
  CHECK(res.ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strichartz admissibility is enforced") {
  GridSpec g = make_grid(64, 20.0 * pi);
  SpectralField f = gaussian_packet(g);
  CHECK_THROWS_AS(strichartz_ratio(f, 1.0, 3.0, 0, 1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_ratio(f, 1.0, 4.0, 0, 1e9, 16), std::invalid_argument);
  // q = 6 -> r = 2q/(q-4) = 6
  StrichartzResult res = strichartz_ratio(f, 1.0, 6.0, 0, 5.0, 16);
  CHECK(res.r == doctest::Approx(6.0));
  CHECK(res.lhs > 0.0);
}

TEST_CASE("duhamel: resonant forcing grows linearly, zero forcing vanishes") {
  GridSpec g = make_grid(64, 20.0 * pi);
  SpectralField packet = gaussian_packet(g);
  const double kappa = 1.3;

  auto resonant = [&](double s) { return propagator(packet, kappa, s, -1); };
  StrichartzResult res = duhamel_strichartz_ratio(resonant, kappa, inf, 0, 4.0, 32);
  CHECK(res.ratio == doctest::Approx(1.0).epsilon(1e-10));

  auto zero = [&](double) { return SpectralField(g, true); };
  StrichartzResult zres = duhamel_strichartz_ratio(zero, kappa, inf, 0, 4.0, 8);
  CHECK(zres.lhs == 0.0);
  CHECK(zres.ratio == 0.0);
}

TEST_CASE("bootstrap norm is the trapezoid integral of the Besov entry") {
  std::vector<NormReport> series(5);
  for (int i = 0; i < 5; ++i) {
    series[i].time = 0.5 * i;
    series[i].besov_b1_inf_1 = 0.7;
  }
  CHECK(bootstrap_norm(series) == doctest::Approx(0.7 * 2.0));

  series[3].time = 0.2;  // unsorted
  CHECK_THROWS_AS(bootstrap_norm(series), std::invalid_argument);
}

TEST_CASE("blowup functional vanishes on the zero state") {
  GridSpec g = make_grid(32, 2.0 * pi);
  ZState zero;
  zero.z_plus = SpectralField(g, true);
  zero.z_minus = SpectralField(g, true);
  CHECK(blowup_functional(zero) == 0.0);
}

TEST_CASE("measure accumulates nondecreasing integrals") {
  GridSpec g = make_grid(32, 2.0 * pi);
  ZState z = test::random_zstate(g, 3, 1.0, 0.1);
  NormReport r0 = measure(z, 3.5, nullptr);
  CHECK(r0.accumulated_bootstrap == 0.0);
  z = step_ifrk4(z, 0.1, true);
  NormReport r1 = measure(z, 3.5, &r0);
  z = step_ifrk4(z, 0.1, true);
  NormReport r2 = measure(z, 3.5, &r1);
  CHECK(r1.accumulated_bootstrap > 0.0);
  CHECK(r2.accumulated_bootstrap > r1.accumulated_bootstrap);
  CHECK(r2.accumulated_blowup >= r1.accumulated_blowup);
  CHECK(r1.sobolev_hn > 0.0);
  CHECK(r1.l2_energy > 0.0);
}

TEST_CASE("product estimate ratio: degenerate and generic inputs") {
  GridSpec g = make_grid(32, 2.0 * pi);
  SpectralField zero(g, true);
  SpectralField f = test::random_real_field(g, 5);
  CHECK(product_estimate_ratio(zero, f, 1.0) == 0.0);
  CHECK(product_estimate_ratio(f, zero, 1.0) == doctest::Approx(0.0));

  // well-separated single modes: the high-low interaction case
  SpectralField low = pure_mode(g, 1, 0, complexd(0.5, 0.0));
  SpectralField high = pure_mode(g, 0, 8, complexd(0.0, 0.4));
  const double ratio = product_estimate_ratio(high, low, 1.0);
  CHECK(ratio > 0.0);
  CHECK(ratio < 50.0);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SpectralField a = test::random_real_field(g, 100 + seed);
    SpectralField b = test::random_real_field(g, 200 + seed);
    for (double m : {0.0, 1.0, 2.5}) {
      const double r = product_estimate_ratio(a, b, m);
      CHECK(r >= 0.0);
      CHECK(r < 50.0);
    }
  }
}

TEST_CASE("summation inequality ratio is bounded on random fields") {
  GridSpec g = make_grid(64, 2.0 * pi);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SpectralField f = test::random_real_field(g, 300 + seed);
    const double r = summation_ratio(f, 2.0, 0.5);
    CHECK(r > 0.0);
    CHECK(r < 50.0);
  }
}
