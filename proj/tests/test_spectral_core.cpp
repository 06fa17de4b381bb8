#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "doctest.h"
#include "vvmhd/fft.hpp"
#include "vvmhd/operators.hpp"

using namespace vvmhd;

namespace {

using cplx = std::complex<double>;

PhysicalVectorField sample(const GridSpec& g,
                           std::function<double(int, double, double, double)> f) {
  PhysicalVectorField out(g);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
          out.at(c, i, j, k) = f(c, static_cast<double>(i) / g.n,
                                 static_cast<double>(j) / g.n,
                                 static_cast<double>(k) / g.n);
  return out;
}

int storage(const GridSpec& g, int m) { return m >= 0 ? m : m + g.n; }

cplx coeff(const SpectralVectorField& f, int c, int mi, int mj, int mk) {
  const GridSpec& g = f.grid();
  return f.component(c)[g.index(storage(g, mi), storage(g, mj), storage(g, mk))];
}

double max_abs(const SpectralVectorField& f) {
  double m = 0.0;
  for (const auto& z : f.raw()) m = std::max(m, std::abs(z));
  return m;
}

double max_diff(const SpectralVectorField& a, const SpectralVectorField& b) {
  double m = 0.0;
  for (long i = 0; i < 3 * a.size(); ++i)
    m = std::max(m, std::abs(a.raw()[static_cast<size_t>(i)] -
                             b.raw()[static_cast<size_t>(i)]));
  return m;
}

PhysicalVectorField random_physical(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  PhysicalVectorField out(g);
  for (double& x : out.data) x = dist(rng);
  return out;
}

// General random spectral field: Hermitian so it represents a real field, but
// not solenoidal and not band-limited.
SpectralVectorField random_spectral(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpectralVectorField out(g);
  for (auto& z : out.raw()) z = cplx(dist(rng), dist(rng));
  enforce_hermitian(out);
  return out;
}

SpectralVectorField random_solenoidal(const GridSpec& g, unsigned seed) {
  return leray_project(dealias(random_spectral(g, seed)));
}

}  // namespace

TEST_CASE("grid: signed indices, wavenumbers, dealias band") {
  GridSpec g(12);
  CHECK(g.signed_index(0) == 0);
  CHECK(g.signed_index(5) == 5);
  CHECK(g.signed_index(6) == 6);   // Nyquist kept positive
  CHECK(g.signed_index(7) == -5);
  CHECK(g.signed_index(11) == -1);
  CHECK(g.wavenumber(1) == doctest::Approx(two_pi).epsilon(1e-15));
  CHECK(g.wavenumber(11) == doctest::Approx(-two_pi).epsilon(1e-15));
  // cutoff = (2/3) * 6 = 4
  CHECK(g.axis_in_band(storage(g, 4)));
  CHECK(!g.axis_in_band(storage(g, 5)));
  CHECK(!g.axis_in_band(storage(g, -5)));
  CHECK(g.axis_in_band(storage(g, -4)));

  CHECK_THROWS_AS(GridSpec(7), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(6), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 1.5), std::invalid_argument);
}

TEST_CASE("fft: round trip reproduces samples") {
  GridSpec g(16);
  PhysicalVectorField f = random_physical(g, 101);
  PhysicalVectorField back = inverse_transform(transform(f));
  double scale = 0.0, diff = 0.0;
  for (size_t i = 0; i < f.data.size(); ++i) {
    scale = std::max(scale, std::abs(f.data[i]));
    diff = std::max(diff, std::abs(f.data[i] - back.data[i]));
  }
  CHECK(diff <= 1e-12 * scale);
}

TEST_CASE("fft: constant field lives at k = 0") {
  GridSpec g(8);
  SpectralVectorField f = transform(
      sample(g, [](int c, double, double, double) { return 1.5 + c; }));
  for (int c = 0; c < 3; ++c) {
    CHECK(coeff(f, c, 0, 0, 0).real() == doctest::Approx(1.5 + c).epsilon(1e-14));
    CHECK(coeff(f, c, 0, 0, 0).imag() == 0.0);
  }
  SpectralVectorField g0 = f;
  zero_mean(g0);
  CHECK(max_abs(g0) <= 1e-14);
}

TEST_CASE("fft: single sine and cosine modes") {
  GridSpec g(16);
  SpectralVectorField f = transform(sample(g, [](int c, double x, double y, double) {
    if (c == 0) return std::sin(two_pi * x);
    if (c == 1) return std::cos(two_pi * y);
    return 0.0;
  }));
  // sin(2 pi x) = -i/2 e^{i 2 pi x} + i/2 e^{-i 2 pi x}
  CHECK(std::abs(coeff(f, 0, 1, 0, 0) - cplx(0.0, -0.5)) <= 1e-14);
  CHECK(std::abs(coeff(f, 0, -1, 0, 0) - cplx(0.0, 0.5)) <= 1e-14);
  CHECK(std::abs(coeff(f, 1, 0, 1, 0) - cplx(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(coeff(f, 1, 0, -1, 0) - cplx(0.5, 0.0)) <= 1e-14);
  // nothing anywhere else
  double off = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
          if (c == 0 && j == 0 && k == 0 && (i == 1 || i == g.n - 1)) continue;
          if (c == 1 && i == 0 && k == 0 && (j == 1 || j == g.n - 1)) continue;
          off = std::max(off, std::abs(f.component(c)[g.index(i, j, k)]));
        }
  CHECK(off <= 1e-14);
}

TEST_CASE("fft: transform rejects non-finite samples") {
  GridSpec g(8);
  PhysicalVectorField f(g);
  f.at(1, 2, 3, 4) = std::nan("");
  CHECK_THROWS_WITH_AS(transform(f),
                       doctest::Contains("non-finite"), std::domain_error);
}

TEST_CASE("fft: enforce_hermitian averages conjugate pairs") {
  GridSpec g(8);
  SpectralVectorField f(g);
  f.component(0)[g.index(1, 2, 3)] = cplx(1.0, 2.0);
  f.component(0)[g.index(7, 6, 5)] = cplx(5.0, -4.0);
  f.component(1)[g.index(4, 0, 0)] = cplx(2.0, 3.0);  // self-conjugate Nyquist
  enforce_hermitian(f);
  CHECK(f.component(0)[g.index(1, 2, 3)] == cplx(3.0, 3.0));
  CHECK(f.component(0)[g.index(7, 6, 5)] == cplx(3.0, -3.0));
  CHECK(f.component(1)[g.index(4, 0, 0)] == cplx(2.0, 0.0));
}

TEST_CASE("fft: imag_residue flags broken symmetry") {
  GridSpec g(8);
  SpectralVectorField ok = random_spectral(g, 7);
  CHECK(imag_residue(ok) <= 1e-13);
  SpectralVectorField bad = ok;
  bad.component(2)[bad.grid().index(1, 0, 0)] += cplx(0.0, 1.0);
  CHECK(imag_residue(bad) > 1e-3);
}

TEST_CASE("operators: derivatives of single modes") {
  GridSpec g(16);
  // u = (0, 0, sin(2 pi x)) -> curl u = (0, -2 pi cos(2 pi x), 0)
  SpectralVectorField u = transform(sample(g, [](int c, double x, double, double) {
    return c == 2 ? std::sin(two_pi * x) : 0.0;
  }));
  SpectralVectorField want = transform(sample(g, [](int c, double x, double, double) {
    return c == 1 ? -two_pi * std::cos(two_pi * x) : 0.0;
  }));
  CHECK(max_diff(curl(u), want) <= 1e-12 * two_pi);

  // div (sin(2 pi x), 0, 0) = 2 pi cos(2 pi x): coefficient pi at m = +-1
  SpectralVectorField v = transform(sample(g, [](int c, double x, double, double) {
    return c == 0 ? std::sin(two_pi * x) : 0.0;
  }));
  SpectralScalarField dv = divergence(v);
  CHECK(std::abs(dv.at(1, 0, 0) - cplx(pi, 0.0)) <= 1e-12);
  CHECK(std::abs(dv.at(g.n - 1, 0, 0) - cplx(pi, 0.0)) <= 1e-12);

  // laplacian of a single mode multiplies by -|k|^2
  SpectralVectorField lap = laplacian(u);
  const double k2 = two_pi * two_pi;
  CHECK(std::abs(coeff(lap, 2, 1, 0, 0) - (-k2) * coeff(u, 2, 1, 0, 0)) <= 1e-12);
}

TEST_CASE("operators: leray projection") {
  GridSpec g(16);
  SpectralVectorField v = random_spectral(g, 21);

  SpectralVectorField pv = leray_project(v);
  SUBCASE("idempotent") {
    CHECK(max_diff(leray_project(pv), pv) <= 1e-15 * max_abs(pv));
  }
  SUBCASE("output is solenoidal, mean-free") {
    CHECK(solenoidality_residual(pv) <= 1e-14);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(pv.component(c)[0]) == 0.0);
  }
  SUBCASE("kills gradient fields") {
    // grad phi with random scalar phi: v_c(k) = i k_c phi(k)
    SpectralVectorField grad(g);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);
    const auto kax = [&](int i) { return g.wavenumber(i); };
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
          const cplx phi(dist(rng), dist(rng));
          const long idx = g.index(i, j, k);
          grad.component(0)[idx] = cplx(0, 1) * kax(i) * phi;
          grad.component(1)[idx] = cplx(0, 1) * kax(j) * phi;
          grad.component(2)[idx] = cplx(0, 1) * kax(k) * phi;
        }
    CHECK(max_abs(leray_project(grad)) <= 1e-13 * max_abs(grad));
  }
  SUBCASE("fixes curls") {
    SpectralVectorField w = curl(v);
    CHECK(max_diff(leray_project(w), w) <= 1e-14 * max_abs(w));
  }
}

TEST_CASE("operators: divergence of curl vanishes") {
  GridSpec g(16);
  SpectralVectorField w = curl(random_spectral(g, 33));
  CHECK(solenoidality_residual(w) <= 1e-14);
}

TEST_CASE("operators: voigt_invert") {
  GridSpec g(16);
  SpectralVectorField v = random_spectral(g, 40);

  SUBCASE("alpha = 0 is the identity") {
    CHECK(max_diff(voigt_invert(v, 0.0), v) == 0.0);
  }
  SUBCASE("single mode picks up 1 / (1 + alpha^2 |k|^2)") {
    SpectralVectorField s(g);
    s.component(0)[g.index(1, 0, 0)] = cplx(1.0, -2.0);
    const double alpha = 0.3;
    SpectralVectorField w = voigt_invert(s, alpha);
    const double factor = 1.0 / (1.0 + alpha * alpha * two_pi * two_pi);
    CHECK(std::abs(coeff(w, 0, 1, 0, 0) - factor * cplx(1.0, -2.0)) <= 1e-15);
  }
  SUBCASE("forward operator recovers the input") {
    const double alpha = 0.12;
    SpectralVectorField w = voigt_invert(v, alpha);
    SpectralVectorField recovered = w + (-alpha * alpha) * laplacian(w);
    CHECK(max_diff(recovered, v) <= 1e-12 * max_abs(v));
  }
  SUBCASE("negative alpha rejected") {
    CHECK_THROWS_AS(voigt_invert(v, -0.1), std::invalid_argument);
  }
}

TEST_CASE("operators: dealias masks the top third") {
  GridSpec g(12);  // cutoff index 4
  SpectralVectorField v(g);
  v.component(0)[g.index(storage(g, 4), 0, 0)] = 1.0;
  v.component(0)[g.index(storage(g, 5), 0, 0)] = 1.0;
  v.component(1)[g.index(0, storage(g, -5), 2)] = 1.0;
  v.component(2)[g.index(1, 2, storage(g, 6))] = 1.0;
  SpectralVectorField d = dealias(v);
  CHECK(coeff(d, 0, 4, 0, 0) == cplx(1.0, 0.0));
  CHECK(coeff(d, 0, 5, 0, 0) == cplx(0.0, 0.0));
  CHECK(coeff(d, 1, 0, -5, 2) == cplx(0.0, 0.0));
  CHECK(coeff(d, 2, 1, 2, 6) == cplx(0.0, 0.0));
  CHECK(max_diff(dealias(d), d) == 0.0);  // idempotent
}

TEST_CASE("operators: dealias commutes with diagonal operators") {
  GridSpec g(16);
  SpectralVectorField v = random_spectral(g, 55);
  CHECK(max_diff(curl(dealias(v)), dealias(curl(v))) == 0.0);
  CHECK(max_diff(laplacian(dealias(v)), dealias(laplacian(v))) == 0.0);
  CHECK(max_diff(leray_project(dealias(v)), dealias(leray_project(v))) <=
        1e-15 * max_abs(v));
}

TEST_CASE("operators: advection of analytic fields") {
  GridSpec g(16);
  SpectralVectorField u = transform(sample(g, [](int c, double, double y, double) {
    return c == 0 ? std::sin(two_pi * y) : 0.0;
  }));
  SpectralVectorField v = transform(sample(g, [](int c, double x, double, double) {
    return c == 1 ? std::cos(two_pi * x) : 0.0;
  }));
  // (u . grad) v = sin(2 pi y) d_x v = (0, -2 pi sin(2 pi x) sin(2 pi y), 0)
  SpectralVectorField want = transform(sample(g, [](int c, double x, double y, double) {
    return c == 1 ? -two_pi * std::sin(two_pi * x) * std::sin(two_pi * y) : 0.0;
  }));
  CHECK(max_diff(advect(u, v), want) <= 1e-12 * two_pi);
}

TEST_CASE("operators: advection equals the truncated convolution") {
  // At n = 8 the kept band is |m| <= 2; wrapped products land outside it, so
  // the pseudo-spectral path must agree with the exact Galerkin sum.
  GridSpec g(8);
  SpectralVectorField u = random_solenoidal(g, 71);
  SpectralVectorField v = random_solenoidal(g, 72);

  SpectralVectorField want(g);
  const int band = 2;
  for (int c = 0; c < 3; ++c)
    for (int ki = -band; ki <= band; ++ki)
      for (int kj = -band; kj <= band; ++kj)
        for (int kk = -band; kk <= band; ++kk) {
          cplx acc = 0.0;
          for (int pi_ = -band; pi_ <= band; ++pi_)
            for (int pj = -band; pj <= band; ++pj)
              for (int pk = -band; pk <= band; ++pk) {
                const int qi = ki - pi_, qj = kj - pj, qk = kk - pk;
                if (std::abs(qi) > band || std::abs(qj) > band ||
                    std::abs(qk) > band)
                  continue;
                const long p = g.index(storage(g, pi_), storage(g, pj),
                                       storage(g, pk));
                const long q = g.index(storage(g, qi), storage(g, qj),
                                       storage(g, qk));
                const cplx iq(0.0, 1.0);
                const cplx udotq = u.component(0)[p] * (two_pi * qi) +
                                   u.component(1)[p] * (two_pi * qj) +
                                   u.component(2)[p] * (two_pi * qk);
                acc += iq * udotq * v.component(c)[q];
              }
          want.component(c)[g.index(storage(g, ki), storage(g, kj),
                                    storage(g, kk))] = acc;
        }

  SpectralVectorField got = advect(u, v);
  double scale = std::max(max_abs(want), 1e-300);
  CHECK(max_diff(got, want) <= 1e-10 * scale);
}

TEST_CASE("operators: advect dealiases its inputs") {
  GridSpec g(12);
  SpectralVectorField u = random_solenoidal(g, 81);
  SpectralVectorField v = random_solenoidal(g, 82);
  SpectralVectorField u_dirty = u;
  u_dirty.component(0)[g.index(storage(g, 5), 0, 0)] = cplx(3.0, 1.0);
  CHECK(max_diff(advect(u_dirty, v), advect(u, v)) == 0.0);
}

TEST_CASE("operators: cross product") {
  GridSpec g(16);
  SUBCASE("a x a = 0") {
    SpectralVectorField a = random_solenoidal(g, 90);
    CHECK(max_abs(cross(a, a)) <= 1e-14 * max_abs(a));
  }
  SUBCASE("analytic example") {
    SpectralVectorField a = transform(sample(g, [](int c, double, double, double z) {
      return c == 0 ? std::sin(two_pi * z) : 0.0;
    }));
    SpectralVectorField b = transform(sample(g, [](int c, double, double, double z) {
      return c == 1 ? std::sin(two_pi * z) : 0.0;
    }));
    // a x b = (0, 0, sin^2(2 pi z)) = (0, 0, 1/2 - cos(4 pi z)/2)
    SpectralVectorField got = cross(a, b);
    CHECK(std::abs(coeff(got, 2, 0, 0, 0) - cplx(0.5, 0.0)) <= 1e-14);
    CHECK(std::abs(coeff(got, 2, 0, 0, 2) - cplx(-0.25, 0.0)) <= 1e-14);
    CHECK(std::abs(coeff(got, 2, 0, 0, -2) - cplx(-0.25, 0.0)) <= 1e-14);
    CHECK(max_abs(cross(b, a) + got) <= 1e-14);  // antisymmetry
  }
}

TEST_CASE("operators: bilinear form identities on seeded triples") {
  GridSpec g(16);
  for (unsigned seed = 0; seed < 8; ++seed) {
    SpectralVectorField u = random_solenoidal(g, 100 + 3 * seed);
    SpectralVectorField v = random_solenoidal(g, 101 + 3 * seed);
    SpectralVectorField w = random_solenoidal(g, 102 + 3 * seed);
    const double scale =
        norm(u, 0) * norm(v, 1) * std::max(norm(v, 0), norm(w, 0));
    CHECK(std::abs(inner_product(bilinear_b(u, v), v)) <= 1e-12 * scale);
    const double lhs = inner_product(bilinear_b(u, v), w);
    const double rhs = -inner_product(bilinear_b(u, w), v);
    CHECK(std::abs(lhs - rhs) <=
          1e-12 * std::max({std::abs(lhs), std::abs(rhs), scale * 1e-6}));
  }
}

TEST_CASE("operators: Parseval norms") {
  GridSpec g(16);
  SUBCASE("orders on a single mode") {
    SpectralVectorField s(g);
    s.component(0)[g.index(1, 0, 0)] = cplx(0.0, -0.5);
    s.component(0)[g.index(g.n - 1, 0, 0)] = cplx(0.0, 0.5);  // sin(2 pi x)
    const double l2 = std::sqrt(0.25 + 0.25);
    CHECK(norm(s, 0) == doctest::Approx(l2).epsilon(1e-14));
    CHECK(norm(s, 1) == doctest::Approx(two_pi * l2).epsilon(1e-14));
    CHECK(norm(s, 2) == doctest::Approx(two_pi * two_pi * l2).epsilon(1e-14));
  }
  SUBCASE("inner_product(v, v) matches norm^2") {
    SpectralVectorField v = random_spectral(g, 120);
    for (int order = 0; order <= 2; ++order) {
      const double n2 = norm(v, order) * norm(v, order);
      CHECK(inner_product(v, v, order) == doctest::Approx(n2).epsilon(1e-13));
    }
  }
  SUBCASE("curl norm equals H1 seminorm on solenoidal fields") {
    SpectralVectorField v = random_solenoidal(g, 121);
    CHECK(norm(curl(v), 0) == doctest::Approx(norm(v, 1)).epsilon(1e-13));
  }
  SUBCASE("invalid order rejected") {
    SpectralVectorField v(g);
    CHECK_THROWS_AS(norm(v, 3), std::invalid_argument);
    CHECK_THROWS_AS(norm(v, -1), std::invalid_argument);
  }
}

TEST_CASE("operators: solenoidality residual examples") {
  GridSpec g(16);
  SUBCASE("zero and curl fields report 0") {
    SpectralVectorField z(g);
    CHECK(solenoidality_residual(z) == 0.0);
    CHECK(solenoidality_residual(curl(random_spectral(g, 130))) <= 1e-14);
  }
  SUBCASE("pure gradient reports 1") {
    SpectralVectorField v(g);
    const long idx = g.index(2, 1, 0);
    v.component(0)[idx] = cplx(0, 1) * g.wavenumber(2);
    v.component(1)[idx] = cplx(0, 1) * g.wavenumber(1);
    CHECK(solenoidality_residual(v) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("corruption of a projected field is detected") {
    SpectralVectorField v = random_solenoidal(g, 131);
    v.component(0)[g.index(1, 1, 0)] += 0.1 * norm(v, 0);
    CHECK(solenoidality_residual(v) > 1e-3);
  }
}
