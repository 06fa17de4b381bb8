#include "vvmhd/operators.hpp"

#include <algorithm>
#include <cmath>

namespace vvmhd {
namespace {

constexpr std::complex<double> iu(0.0, 1.0);

std::vector<double> axis_wavenumbers(const GridSpec& g) {
  std::vector<double> k(g.n);
  for (int i = 0; i < g.n; ++i) k[i] = g.wavenumber(i);
  return k;
}

std::vector<char> axis_band(const GridSpec& g) {
  std::vector<char> keep(g.n);
  for (int i = 0; i < g.n; ++i) keep[i] = g.axis_in_band(i) ? 1 : 0;
  return keep;
}

}  // namespace

SpectralVectorField curl(const SpectralVectorField& v) {
  const GridSpec& g = v.grid();
  const auto kax = axis_wavenumbers(g);
  SpectralVectorField out(g);
  const std::complex<double>*v0 = v.component(0), *v1 = v.component(1),
                            *v2 = v.component(2);
  std::complex<double>*o0 = out.component(0), *o1 = out.component(1),
                      *o2 = out.component(2);
  long idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k, ++idx) {
        const double kx = kax[i], ky = kax[j], kz = kax[k];
        o0[idx] = iu * (ky * v2[idx] - kz * v1[idx]);
        o1[idx] = iu * (kz * v0[idx] - kx * v2[idx]);
        o2[idx] = iu * (kx * v1[idx] - ky * v0[idx]);
      }
  return out;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
  const GridSpec& g = v.grid();
  const auto kax = axis_wavenumbers(g);
  SpectralScalarField out(g);
  const std::complex<double>*v0 = v.component(0), *v1 = v.component(1),
                            *v2 = v.component(2);
  std::complex<double>* o = out.raw().data();
  long idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k, ++idx)
        o[idx] = iu * (kax[i] * v0[idx] + kax[j] * v1[idx] + kax[k] * v2[idx]);
  return out;
}

SpectralVectorField laplacian(const SpectralVectorField& v) {
  const GridSpec& g = v.grid();
  const auto kax = axis_wavenumbers(g);
  SpectralVectorField out = v;
  for (int c = 0; c < 3; ++c) {
    std::complex<double>* o = out.component(c);
    long idx = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k, ++idx) {
          const double k2 =
              kax[i] * kax[i] + kax[j] * kax[j] + kax[k] * kax[k];
          o[idx] *= -k2;
        }
  }
  return out;
}

SpectralVectorField leray_project(const SpectralVectorField& v) {
  const GridSpec& g = v.grid();
  const auto kax = axis_wavenumbers(g);
  SpectralVectorField out = v;
  std::complex<double>*o0 = out.component(0), *o1 = out.component(1),
                      *o2 = out.component(2);
  long idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k, ++idx) {
        const double kx = kax[i], ky = kax[j], kz = kax[k];
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) {
          o0[idx] = o1[idx] = o2[idx] = 0.0;
          continue;
        }
        const std::complex<double> kdotv =
            (kx * o0[idx] + ky * o1[idx] + kz * o2[idx]) / k2;
        o0[idx] -= kx * kdotv;
        o1[idx] -= ky * kdotv;
        o2[idx] -= kz * kdotv;
      }
  return out;
}

SpectralVectorField voigt_invert(const SpectralVectorField& v, double alpha) {
  if (alpha < 0.0 || !std::isfinite(alpha))
    throw std::invalid_argument("voigt_invert: alpha must be >= 0 and finite");
  const GridSpec& g = v.grid();
  const auto kax = axis_wavenumbers(g);
  const double a2 = alpha * alpha;
  SpectralVectorField out = v;
  for (int c = 0; c < 3; ++c) {
    std::complex<double>* o = out.component(c);
    long idx = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k, ++idx) {
          const double k2 =
              kax[i] * kax[i] + kax[j] * kax[j] + kax[k] * kax[k];
          o[idx] /= 1.0 + a2 * k2;
        }
  }
  return out;
}

SpectralVectorField dealias(const SpectralVectorField& v) {
  const GridSpec& g = v.grid();
  const auto keep = axis_band(g);
  SpectralVectorField out = v;
  for (int c = 0; c < 3; ++c) {
    std::complex<double>* o = out.component(c);
    long idx = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k, ++idx)
          if (!(keep[i] && keep[j] && keep[k])) o[idx] = 0.0;
  }
  return out;
}

SpectralVectorField advect(const SpectralVectorField& u,
                           const SpectralVectorField& v) {
  const GridSpec& g = u.grid();
  if (!(g == v.grid()))
    throw std::invalid_argument("advect: fields live on different grids");
  const auto kax = axis_wavenumbers(g);
  const long size = g.size();

  const SpectralVectorField ud = dealias(u);
  const SpectralVectorField vd = dealias(v);
  const PhysicalVectorField u_phys = inverse_transform(ud);

  // d_j v for the three derivative directions, in physical space
  PhysicalVectorField dv[3];
  {
    SpectralVectorField deriv(g);
    for (int j = 0; j < 3; ++j) {
      for (int c = 0; c < 3; ++c) {
        const std::complex<double>* src = vd.component(c);
        std::complex<double>* dst = deriv.component(c);
        long idx = 0;
        for (int a = 0; a < g.n; ++a)
          for (int b = 0; b < g.n; ++b)
            for (int d = 0; d < g.n; ++d, ++idx) {
              const double kj = j == 0 ? kax[a] : (j == 1 ? kax[b] : kax[d]);
              dst[idx] = iu * kj * src[idx];
            }
      }
      dv[j] = inverse_transform(deriv);
    }
  }

  PhysicalVectorField prod(g);
  for (int c = 0; c < 3; ++c) {
    double* out = prod.component(c);
    const double *u0 = u_phys.component(0), *u1 = u_phys.component(1),
                 *u2 = u_phys.component(2);
    const double *d0 = dv[0].component(c), *d1 = dv[1].component(c),
                 *d2 = dv[2].component(c);
    for (long i = 0; i < size; ++i)
      out[i] = u0[i] * d0[i] + u1[i] * d1[i] + u2[i] * d2[i];
  }
  return dealias(transform(prod));  // transform() enforces Hermitian symmetry
}

SpectralVectorField cross(const SpectralVectorField& a,
                          const SpectralVectorField& b) {
  const GridSpec& g = a.grid();
  if (!(g == b.grid()))
    throw std::invalid_argument("cross: fields live on different grids");
  const PhysicalVectorField ap = inverse_transform(dealias(a));
  const PhysicalVectorField bp = inverse_transform(dealias(b));
  PhysicalVectorField prod(g);
  const long size = g.size();
  const double *a0 = ap.component(0), *a1 = ap.component(1),
               *a2 = ap.component(2);
  const double *b0 = bp.component(0), *b1 = bp.component(1),
               *b2 = bp.component(2);
  double *p0 = prod.component(0), *p1 = prod.component(1),
         *p2 = prod.component(2);
  for (long i = 0; i < size; ++i) {
    p0[i] = a1[i] * b2[i] - a2[i] * b1[i];
    p1[i] = a2[i] * b0[i] - a0[i] * b2[i];
    p2[i] = a0[i] * b1[i] - a1[i] * b0[i];
  }
  return dealias(transform(prod));
}

SpectralVectorField bilinear_b(const SpectralVectorField& u,
                               const SpectralVectorField& v) {
  return leray_project(advect(u, v));
}

double norm(const SpectralVectorField& v, int order) {
  return std::sqrt(inner_product(v, v, order));
}

double inner_product(const SpectralVectorField& a, const SpectralVectorField& b,
                     int order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("inner_product: order must be 0, 1 or 2");
  const GridSpec& g = a.grid();
  if (!(g == b.grid()))
    throw std::invalid_argument("inner_product: grid mismatch");
  const auto kax = axis_wavenumbers(g);
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const std::complex<double>* pa = a.component(c);
    const std::complex<double>* pb = b.component(c);
    long idx = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k, ++idx) {
          const double k2 =
              kax[i] * kax[i] + kax[j] * kax[j] + kax[k] * kax[k];
          double w = 1.0;
          if (order == 1)
            w = k2;
          else if (order == 2)
            w = k2 * k2;
          sum += w * (pa[idx].real() * pb[idx].real() +
                      pa[idx].imag() * pb[idx].imag());
        }
  }
  return sum;
}

double solenoidality_residual(const SpectralVectorField& v) {
  const GridSpec& g = v.grid();
  const auto kax = axis_wavenumbers(g);
  const std::complex<double>*v0 = v.component(0), *v1 = v.component(1),
                            *v2 = v.component(2);
  // Track squared maxima and take one square root at the end; max commutes
  // with sqrt on nonnegative values.
  double max_div2 = 0.0, max_scale2 = 0.0;
  long idx = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k, ++idx) {
        const double kx = kax[i], ky = kax[j], kz = kax[k];
        const double k2 = kx * kx + ky * ky + kz * kz;
        const double v2m =
            std::norm(v0[idx]) + std::norm(v1[idx]) + std::norm(v2[idx]);
        const std::complex<double> div =
            kx * v0[idx] + ky * v1[idx] + kz * v2[idx];
        max_div2 = std::max(max_div2, std::norm(div));
        max_scale2 = std::max(max_scale2, k2 * v2m);
      }
  return max_scale2 == 0.0 ? 0.0 : std::sqrt(max_div2 / max_scale2);
}

}  // namespace vvmhd
