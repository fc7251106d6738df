#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stratsim/littlewood_paley.hpp"
#include "stratsim/model.hpp"
#include "test_util.hpp"

using namespace stratsim;

namespace {

VorticityState random_vorticity(const GridSpec& g, std::uint64_t seed,
                                double kappa = 1.0) {
  VorticityState s;
  s.omega = test::random_real_field(g, seed);
  s.rho = test::random_real_field(g, seed + 100);
  s.kappa = kappa;
  return s;
}

}  // namespace

TEST_CASE("to_dispersive on pure cases") {
  GridSpec g = make_grid(32, 2.0 * pi);

  // omega = 0, rho = f  ->  Z_pm = +-f
  VorticityState s;
  s.omega = SpectralField(g, true);
  s.rho = test::random_real_field(g, 3);
  s.kappa = 1.0;
  ZState z = to_dispersive(s);
  CHECK(test::rel_err(z.z_plus, s.rho) < 1e-14);
  SpectralField neg = -1.0 * s.rho;
  CHECK(test::rel_err(z.z_minus, neg) < 1e-14);

  // rho = 0, omega a pure mode of radius 2: |nabla|^{-1} halves the amplitude
  VorticityState s2;
  s2.omega = pure_mode(g, 2, 0, complexd(0.5, 0.25));
  s2.rho = SpectralField(g, true);
  s2.kappa = 1.0;
  ZState z2 = to_dispersive(s2);
  SpectralField half = 0.5 * s2.omega;
  CHECK(test::rel_err(z2.z_plus, half) < 1e-13);
  CHECK(test::rel_err(z2.z_minus, half) < 1e-13);
}

TEST_CASE("to_dispersive rejects nonzero mean") {
  GridSpec g = make_grid(16, 2.0 * pi);
  VorticityState s;
  s.omega = SpectralField(g);
  s.omega.at(0, 0) = 1.0;
  s.rho = SpectralField(g, true);
  CHECK_THROWS_AS(to_dispersive(s), std::invalid_argument);
}

TEST_CASE("dispersive roundtrip is the identity and u is divergence-free") {
  GridSpec g = make_grid(32, 2.0 * pi);
  VorticityState s = random_vorticity(g, 5);
  ZState z = to_dispersive(s);
  VorticityState back = to_vorticity(z);
  CHECK(test::rel_err(back.omega, s.omega) < 1e-12);
  CHECK(test::rel_err(back.rho, s.rho) < 1e-12);

  PrimitiveFields f = from_dispersive(z);
  SpectralField div = apply_symbol(f.u1, SymbolId::partial(1)) +
                      apply_symbol(f.u2, SymbolId::partial(2));
  CHECK(max_abs_coeff(div) < 1e-12 * max_abs_coeff(f.u1));
}

TEST_CASE("from_dispersive degenerate combinations") {
  GridSpec g = make_grid(32, 2.0 * pi);
  SpectralField gfield = test::random_real_field(g, 7);

  ZState same;
  same.z_plus = gfield;
  same.z_minus = gfield;
  same.kappa = 1.0;
  PrimitiveFields f = from_dispersive(same);
  CHECK(max_abs_coeff(f.rho) < 1e-14 * max_abs_coeff(gfield));
  SpectralField mod = apply_symbol(gfield, SymbolId::mod_nabla(1.0));
  CHECK(test::rel_err(f.omega, mod) < 1e-13);

  ZState opp;
  opp.z_plus = gfield;
  opp.z_minus = -1.0 * gfield;
  opp.kappa = 1.0;
  PrimitiveFields f2 = from_dispersive(opp);
  CHECK(max_abs_coeff(f2.u1) < 1e-14 * max_abs_coeff(gfield));
  CHECK(max_abs_coeff(f2.u2) < 1e-14 * max_abs_coeff(gfield));
  CHECK(max_abs_coeff(f2.omega) < 1e-14 * max_abs_coeff(gfield));
  CHECK(test::rel_err(f2.rho, gfield) < 1e-13);
}

TEST_CASE("omega equals the curl of the reconstructed velocity") {
  GridSpec g = make_grid(64, 2.0 * pi);
  ZState z = test::random_zstate(g, 11);
  PrimitiveFields f = from_dispersive(z);
  SpectralField curl = apply_symbol(f.u2, SymbolId::partial(1)) -
                       apply_symbol(f.u1, SymbolId::partial(2));
  CHECK(test::rel_err(curl, f.omega) < 1e-11);
}

TEST_CASE("energy balance residual") {
  GridSpec g = make_grid(32, 2.0 * pi);

  ZState zero;
  zero.z_plus = SpectralField(g, true);
  zero.z_minus = SpectralField(g, true);
  CHECK(energy_balance_residual(zero, 0) == 0.0);

  ZState single;
  single.z_plus = pure_mode(g, 1, 2, complexd(0.4, -0.3));
  single.z_minus = SpectralField(g, true);
  CHECK(energy_balance_residual(single, 0) < 1e-12);

  for (std::uint64_t seed : {13u, 17u, 19u}) {
    ZState z = test::random_zstate(g, seed);
    CHECK(energy_balance_residual(z, 0) < 1e-11);
    CHECK(energy_balance_residual(z, 3) < 1e-11);
  }
}

TEST_CASE("rhs_vorticity: linear-only and steady-Euler cases") {
  GridSpec g = make_grid(32, 2.0 * pi);

  // omega = 0: u = 0, so d_omega = -kappa d1 rho and d_rho = 0
  VorticityState s;
  s.omega = SpectralField(g, true);
  s.rho = pure_mode(g, 2, 1, complexd(0.3, 0.7));
  s.kappa = 2.5;
  VorticityTendency t = rhs_vorticity(s);
  SpectralField want = -s.kappa * apply_symbol(s.rho, SymbolId::partial(1));
  CHECK(test::rel_err(t.d_omega, want) < 1e-13);
  CHECK(max_abs_coeff(t.d_rho) < 1e-15);

  // kappa = 0, single plane wave: a steady Euler solution
  VorticityState e;
  e.omega = pure_mode(g, 3, 1, complexd(1.0, 0.5));
  e.rho = SpectralField(g, true);
  e.kappa = 0.0;
  VorticityTendency te = rhs_vorticity(e);
  CHECK(max_abs_coeff(te.d_omega) < 1e-13 * max_abs_coeff(e.omega));
  CHECK(max_abs_coeff(te.d_rho) < 1e-15);
}

TEST_CASE("tendencies are mean-zero and real") {
  GridSpec g = make_grid(32, 2.0 * pi);
  VorticityState s = random_vorticity(g, 23);
  VorticityTendency t = rhs_vorticity(s);
  CHECK(std::abs(t.d_omega.mean()) == 0.0);
  CHECK(std::abs(t.d_rho.mean()) == 0.0);
  CHECK(hermitian_asymmetry(t.d_omega) < 1e-12 * max_abs_coeff(t.d_omega));
  CHECK(hermitian_asymmetry(t.d_rho) < 1e-12 * max_abs_coeff(t.d_rho));

  ZState z = to_dispersive(s);
  ZTendency zt = rhs_dispersive(z);
  CHECK(std::abs(zt.d_zplus.mean()) == 0.0);
  CHECK(hermitian_asymmetry(zt.d_zplus) < 1e-12 * max_abs_coeff(zt.d_zplus));
}

TEST_CASE("Z-form tendencies commute with the change of variables") {
  GridSpec g = make_grid(64, 2.0 * pi);
  for (std::uint64_t seed : {29u, 31u, 37u}) {
    VorticityState s = random_vorticity(g, seed, 1.7);
    VorticityTendency tv = rhs_vorticity(s);

    // push the vorticity tendency through the linearization of Z = T(omega,rho)
    SpectralField d_inv_mod =
        apply_symbol(tv.d_omega, SymbolId::mod_nabla(-1.0));
    SpectralField want_plus = d_inv_mod + tv.d_rho;
    SpectralField want_minus = d_inv_mod - tv.d_rho;

    ZTendency tz = rhs_dispersive(to_dispersive(s));
    const double scale = std::max(max_abs_coeff(want_plus), 1e-30);
    CHECK(max_abs_coeff(tz.d_zplus - want_plus) / scale < 1e-10);
    CHECK(max_abs_coeff(tz.d_zminus - want_minus) / scale < 1e-10);
  }
}

TEST_CASE("NL symmetry when rho = 0 and kappa = 0") {
  GridSpec g = make_grid(32, 2.0 * pi);
  SpectralField f = test::random_real_field(g, 41);
  ZState z;
  z.z_plus = f;
  z.z_minus = f;  // Z+ - Z- = 0
  z.kappa = 0.0;
  ZTendency t = rhs_dispersive(z);
  CHECK(test::rel_err(t.d_zplus, t.d_zminus) < 1e-12);
}

TEST_CASE("rhs_sqg: plane waves and L2 conservation at the tendency level") {
  GridSpec g = make_grid(32, 2.0 * pi);

  SqgState s;
  s.theta = pure_mode(g, 2, 3, complexd(0.8, -0.1));
  s.kappa = 0.0;
  CHECK(max_abs_coeff(rhs_sqg(s)) < 1e-13 * max_abs_coeff(s.theta));

  SqgState s2;
  s2.theta = pure_mode(g, 0, 3, complexd(0.8, -0.1));
  s2.kappa = 3.0;
  CHECK(max_abs_coeff(rhs_sqg(s2)) < 1e-13 * max_abs_coeff(s2.theta));

  SqgState r;
  r.theta = test::random_real_field(g, 43);
  r.kappa = 1.5;
  SpectralField d = rhs_sqg(r);
  const double ip = test::inner(r.theta, d);
  CHECK(std::abs(ip) < 1e-11 * std::pow(l2_norm(r.theta), 2));
}

TEST_CASE("boussinesq energy is conserved at the tendency level") {
  GridSpec g = make_grid(64, 2.0 * pi);
  for (std::uint64_t seed : {47u, 53u}) {
    ZState z = test::random_zstate(g, seed, 2.0);
    ZTendency t = rhs_dispersive(z);
    // d/dt (||Z+||^2 + ||Z-||^2) = 2<z+, dz+> + 2<z-, dz->
    const double deriv =
        2.0 * (test::inner(z.z_plus, t.d_zplus) + test::inner(z.z_minus, t.d_zminus));
    const double energy = std::pow(l2_norm(z.z_plus), 2) +
                          std::pow(l2_norm(z.z_minus), 2);
    CHECK(std::abs(deriv) < 1e-11 * energy);
  }
}
