#include <cmath>
#include <random>

#include "doctest.h"
#include "vvmhd/dynamics.hpp"
#include "vvmhd/fft.hpp"

using namespace vvmhd;

namespace {

using cplx = std::complex<double>;

SpectralVectorField random_solenoidal(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpectralVectorField f(g);
  for (auto& z : f.raw()) z = cplx(dist(rng), dist(rng));
  enforce_hermitian(f);
  return leray_project(dealias(f));
}

VVVState random_vvv(const GridSpec& g, unsigned seed) {
  VVVState s(g);
  s.u = random_solenoidal(g, seed);
  s.w = random_solenoidal(g, seed + 1000);
  s.b = random_solenoidal(g, seed + 2000);
  return s;
}

MHDState random_mhd(const GridSpec& g, unsigned seed) {
  MHDState s(g);
  s.U = random_solenoidal(g, seed);
  s.B = random_solenoidal(g, seed + 2000);
  return s;
}

double max_abs(const SpectralVectorField& f) {
  double m = 0.0;
  for (const auto& z : f.raw()) m = std::max(m, std::abs(z));
  return m;
}

double max_diff(const SpectralVectorField& a, const SpectralVectorField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.raw().size(); ++i)
    m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

}  // namespace

TEST_CASE("dynamics: zero states have zero right-hand sides") {
  GridSpec g(16);
  PhysParams p(0.02, 0.03, 0.1);
  VVVRhs rv = rhs_vvv_mhd(VVVState(g), p);
  CHECK(max_abs(rv.du) == 0.0);
  CHECK(max_abs(rv.dw) == 0.0);
  CHECK(max_abs(rv.db) == 0.0);
  MHDRhs rm = rhs_mhd(MHDState(g), p);
  CHECK(max_abs(rm.dU) == 0.0);
  CHECK(max_abs(rm.dB) == 0.0);
}

TEST_CASE("dynamics: pure diffusion of a single mode carries the Voigt factor") {
  GridSpec g(16);
  PhysParams p(0.05, 0.02, 0.25);
  VVVState s(g);
  // solenoidal single mode: u_y along k = (1,0,0)
  s.u.component(1)[g.index(1, 0, 0)] = cplx(0.3, -0.1);
  s.u.component(1)[g.index(g.n - 1, 0, 0)] = cplx(0.3, 0.1);
  s.w = s.u;
  s.b = s.u;
  VVVRhs r = rhs_vvv_mhd(s, p);
  const double k2 = two_pi * two_pi;
  // du = -nu k^2/(1 + alpha^2 k^2) u; dw = -nu k^2 w; db = -eta k^2 b
  // (the quadratic terms of a single-mode state vanish identically: every
  //  product couples k with -k or itself, landing on k = 0 or 2k where one
  //  factor of the bilinear term is zero)
  const cplx u1 = s.u.component(1)[g.index(1, 0, 0)];
  const double fu = -p.nu * k2 / (1.0 + p.alpha * p.alpha * k2);
  CHECK(std::abs(r.du.component(1)[g.index(1, 0, 0)] - fu * u1) <=
        1e-12 * std::abs(fu * u1));
  CHECK(std::abs(r.dw.component(1)[g.index(1, 0, 0)] - (-p.nu * k2) * u1) <=
        1e-10 * k2);
  CHECK(std::abs(r.db.component(1)[g.index(1, 0, 0)] - (-p.eta * k2) * u1) <=
        1e-10 * k2);
}

TEST_CASE("dynamics: convective and rotational MHD forms agree after projection") {
  GridSpec g(16);
  PhysParams p(0.01, 0.02, 0.0);
  for (unsigned seed = 0; seed < 5; ++seed) {
    MHDState s = random_mhd(g, 300 + 10 * seed);
    MHDRhs a = rhs_mhd(s, p, MhdForm::convective);
    MHDRhs b = rhs_mhd(s, p, MhdForm::rotational);
    const double scale = std::max(max_abs(a.dU), max_abs(a.dB));
    CHECK(max_diff(a.dU, b.dU) <= 1e-11 * scale);
    CHECK(max_diff(a.dB, b.dB) == 0.0);  // shared induction path
  }
}

TEST_CASE("dynamics: curl of cross equals the expanded vector identity") {
  // curl(a x b) = (b . grad) a - (a . grad) b for solenoidal a, b; both sides
  // here are Galerkin truncations of the same quadratic, so they must agree
  // to roundoff.
  GridSpec g(16);
  for (unsigned seed = 0; seed < 5; ++seed) {
    SpectralVectorField a = random_solenoidal(g, 400 + 2 * seed);
    SpectralVectorField b = random_solenoidal(g, 401 + 2 * seed);
    SpectralVectorField lhs = curl(cross(a, b));
    SpectralVectorField rhs = advect(b, a) - advect(a, b);
    const double scale = std::max(max_abs(lhs), 1e-300);
    CHECK(max_diff(lhs, rhs) <= 1e-11 * scale);
  }
}

TEST_CASE("dynamics: right-hand side closes the energy balance") {
  // d/dt [ |u|^2 + alpha^2 |grad u|^2 + |b|^2 ] = -2 nu |grad u|^2
  //                                               -2 eta |grad b|^2
  // pointwise in time; w drops out and the quadratic terms cancel in pairs.
  GridSpec g(16);
  PhysParams p(0.017, 0.029, 0.2);
  for (unsigned seed = 0; seed < 3; ++seed) {
    VVVState s = random_vvv(g, 500 + 10 * seed);
    VVVRhs r = rhs_vvv_mhd(s, p);
    const double a2 = p.alpha * p.alpha;
    const double growth = 2.0 * (inner_product(r.du, s.u, 0) +
                                 a2 * inner_product(r.du, s.u, 1) +
                                 inner_product(r.db, s.b, 0));
    const double dissipation =
        -2.0 * (p.nu * norm(s.u, 1) * norm(s.u, 1) +
                p.eta * norm(s.b, 1) * norm(s.b, 1));
    const double scale = std::abs(dissipation) + 1.0;
    CHECK(std::abs(growth - dissipation) <= 1e-9 * scale);
  }
}

TEST_CASE("dynamics: outputs are solenoidal") {
  GridSpec g(16);
  PhysParams p(0.01, 0.01, 0.15);
  VVVState s = random_vvv(g, 600);
  VVVRhs r = rhs_vvv_mhd(s, p);
  CHECK(solenoidality_residual(r.du) <= 1e-10);
  CHECK(solenoidality_residual(r.dw) <= 1e-10);
  CHECK(solenoidality_residual(r.db) <= 1e-10);
  MHDState m = random_mhd(g, 601);
  MHDRhs rm = rhs_mhd(m, p, MhdForm::rotational);
  CHECK(solenoidality_residual(rm.dU) <= 1e-10);
  CHECK(solenoidality_residual(rm.dB) <= 1e-10);
}

TEST_CASE("dynamics: zero magnetic field decouples the induction equation") {
  GridSpec g(16);
  PhysParams p(0.02, 0.02, 0.1);
  VVVState s = random_vvv(g, 700);
  s.b = SpectralVectorField(g);
  VVVRhs r = rhs_vvv_mhd(s, p);
  CHECK(max_abs(r.db) == 0.0);
  // u equation reduces to Voigt-regularized hydrodynamics
  SpectralVectorField want = voigt_invert(
      leray_project(p.nu * laplacian(s.u) - cross(s.w, s.u)), p.alpha);
  CHECK(max_diff(r.du, want) <= 1e-11 * std::max(max_abs(want), 1e-300));
}

TEST_CASE("dynamics: alpha = 0 with slaved vorticity matches rotational MHD") {
  GridSpec g(16);
  PhysParams p(0.02, 0.03, 0.0);
  VVVState s(g);
  s.u = random_solenoidal(g, 800);
  s.b = random_solenoidal(g, 801);
  s.w = curl(s.u);
  MHDState m(g);
  m.U = s.u;
  m.B = s.b;
  VVVRhs rv = rhs_vvv_mhd(s, p);
  MHDRhs rm = rhs_mhd(m, p, MhdForm::rotational);
  const double scale = std::max(max_abs(rm.dU), max_abs(rm.dB));
  CHECK(max_diff(rv.du, rm.dU) <= 1e-11 * scale);
  CHECK(max_diff(rv.db, rm.dB) == 0.0);
}

TEST_CASE("dynamics: the w terms are load-bearing") {
  // Negative control: with w != curl(u) the u equation must differ from the
  // slaved case; a wiring mistake that ignored w would pass the previous test
  // vacuously.
  GridSpec g(16);
  PhysParams p(0.02, 0.03, 0.0);
  VVVState s(g);
  s.u = random_solenoidal(g, 900);
  s.b = random_solenoidal(g, 901);
  s.w = curl(s.u);
  VVVRhs slaved = rhs_vvv_mhd(s, p);
  s.w = 2.0 * s.w;
  VVVRhs scaled = rhs_vvv_mhd(s, p);
  CHECK(max_diff(slaved.du, scaled.du) > 1e-6 * max_abs(slaved.du));
  CHECK(max_diff(slaved.dw, scaled.dw) > 1e-6 * max_abs(slaved.dw));
}

TEST_CASE("dynamics: non-solenoidal inputs are rejected") {
  GridSpec g(16);
  PhysParams p(0.02, 0.02, 0.1);
  VVVState s = random_vvv(g, 1000);
  s.u.component(0)[g.index(1, 2, 0)] += 0.5 * norm(s.u, 0);
  CHECK_THROWS_WITH_AS(rhs_vvv_mhd(s, p), doctest::Contains("divergence"),
                       std::domain_error);
  MHDState m = random_mhd(g, 1001);
  m.B.component(1)[g.index(0, 1, 1)] += 0.5 * norm(m.B, 0);
  CHECK_THROWS_WITH_AS(rhs_mhd(m, p), doctest::Contains("divergence"),
                       std::domain_error);
}

TEST_CASE("dynamics: evaluation is deterministic") {
  GridSpec g(16);
  PhysParams p(0.013, 0.011, 0.07);
  VVVState s = random_vvv(g, 1100);
  VVVRhs r1 = rhs_vvv_mhd(s, p);
  VVVRhs r2 = rhs_vvv_mhd(s, p);
  CHECK(max_diff(r1.du, r2.du) == 0.0);
  CHECK(max_diff(r1.dw, r2.dw) == 0.0);
  CHECK(max_diff(r1.db, r2.db) == 0.0);
}

TEST_CASE("dynamics: nonlinear variant is the full RHS minus diffusion") {
  GridSpec g(16);
  PhysParams p(0.031, 0.017, 0.12);
  VVVState s = random_vvv(g, 1200);
  VVVRhs full = rhs_vvv_mhd(s, p);
  VVVRhs nl = rhs_vvv_mhd_nonlinear(s, p);
  VVVRhs want;
  want.du = nl.du + voigt_invert(leray_project(p.nu * laplacian(s.u)), p.alpha);
  want.dw = nl.dw + leray_project(p.nu * laplacian(s.w));
  want.db = nl.db + leray_project(p.eta * laplacian(s.b));
  const double scale = std::max({max_abs(full.du), max_abs(full.dw),
                                 max_abs(full.db)});
  CHECK(max_diff(full.du, want.du) <= 1e-12 * scale);
  CHECK(max_diff(full.dw, want.dw) <= 1e-12 * scale);
  CHECK(max_diff(full.db, want.db) <= 1e-12 * scale);

  MHDState m = random_mhd(g, 1201);
  MHDRhs mfull = rhs_mhd(m, p, MhdForm::rotational);
  MHDRhs mnl = rhs_mhd_nonlinear(m, p, MhdForm::rotational);
  CHECK(max_diff(mfull.dU, mnl.dU + leray_project(p.nu * laplacian(m.U))) <=
        1e-12 * max_abs(mfull.dU));
  CHECK(max_diff(mfull.dB, mnl.dB + leray_project(p.eta * laplacian(m.B))) <=
        1e-12 * max_abs(mfull.dB));
}

TEST_CASE("dynamics: state solenoidality reports the worst field") {
  GridSpec g(16);
  VVVState s = random_vvv(g, 1300);
  CHECK(state_solenoidality(s) <= 1e-13);
  s.w.component(2)[g.index(2, 0, 1)] += norm(s.w, 0);
  const double r = state_solenoidality(s);
  CHECK(r > 1e-3);
  CHECK(r == solenoidality_residual(s.w));
}
