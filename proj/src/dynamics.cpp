#include "vvmhd/dynamics.hpp"

#include <sstream>

#include "vvmhd/fft.hpp"

namespace vvmhd {
namespace {

constexpr std::complex<double> iu(0.0, 1.0);

void require_solenoidal(double residual, const char* what) {
  if (residual > rhs_solenoidality_tolerance) {
    std::ostringstream msg;
    msg << what << ": input state divergence residual " << residual
        << " exceeds " << rhs_solenoidality_tolerance
        << " (upstream solenoidality drift)";
    throw std::domain_error(msg.str());
  }
}

SpectralVectorField scaled(SpectralVectorField f, double s) {
  f *= s;
  return f;
}

SpectralVectorField minus(SpectralVectorField a, const SpectralVectorField& b) {
  a -= b;
  return a;
}

// Adds coef * Laplacian(f) to an accumulator, skipping the work entirely for
// coef == 0 (the stepper evaluates its nonlinear stages with zero viscosity).
SpectralVectorField plus_diffusion(SpectralVectorField rest,
                                   const SpectralVectorField& f, double coef) {
  if (coef != 0.0) rest += scaled(laplacian(f), coef);
  return rest;
}

// The advective terms share their transforms: each dealiased input is moved
// to physical space once and each derivative set is built once, instead of
// per advect() call.  The arithmetic is identical to the public operators.

struct FieldDerivs {
  PhysicalVectorField d[3];  // d[j].component(c) collocates d_j v_c
};

FieldDerivs derivatives(const SpectralVectorField& vd) {
  const GridSpec& g = vd.grid();
  FieldDerivs out;
  SpectralVectorField deriv(g);
  for (int j = 0; j < 3; ++j) {
    for (int c = 0; c < 3; ++c) {
      const std::complex<double>* src = vd.component(c);
      std::complex<double>* dst = deriv.component(c);
      long idx = 0;
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          for (int d = 0; d < g.n; ++d, ++idx) {
            const double kj = g.wavenumber(j == 0 ? a : (j == 1 ? b : d));
            dst[idx] = iu * kj * src[idx];
          }
    }
    out.d[j] = inverse_transform(deriv);
  }
  return out;
}

/// (u . grad) v from prepared collocations: dealias(transform(product)).
SpectralVectorField advect_prepared(const PhysicalVectorField& u_phys,
                                    const FieldDerivs& dv) {
  const GridSpec& g = u_phys.grid;
  const long size = g.size();
  PhysicalVectorField prod(g);
  const double *u0 = u_phys.component(0), *u1 = u_phys.component(1),
               *u2 = u_phys.component(2);
  for (int c = 0; c < 3; ++c) {
    double* out = prod.component(c);
    const double *d0 = dv.d[0].component(c), *d1 = dv.d[1].component(c),
                 *d2 = dv.d[2].component(c);
    for (long i = 0; i < size; ++i)
      out[i] = u0[i] * d0[i] + u1[i] * d1[i] + u2[i] * d2[i];
  }
  return dealias(transform(prod));
}

SpectralVectorField cross_prepared(const PhysicalVectorField& ap,
                                   const PhysicalVectorField& bp) {
  const GridSpec& g = ap.grid;
  const long size = g.size();
  PhysicalVectorField prod(g);
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

MHDRhs rhs_mhd_impl(const MHDState& s, MhdForm form, double nu, double eta) {
  require_solenoidal(state_solenoidality(s), "rhs_mhd");

  const SpectralVectorField Ud = dealias(s.U);
  const SpectralVectorField Bd = dealias(s.B);
  const PhysicalVectorField pU = inverse_transform(Ud);
  const PhysicalVectorField pB = inverse_transform(Bd);
  const FieldDerivs dU = derivatives(Ud);
  const FieldDerivs dB = derivatives(Bd);

  MHDRhs out;
  if (form == MhdForm::convective) {
    out.dU = leray_project(minus(
        plus_diffusion(advect_prepared(pB, dB), s.U, nu),
        advect_prepared(pU, dU)));
  } else {
    const PhysicalVectorField pOmega = inverse_transform(curl(Ud));
    const PhysicalVectorField pJ = inverse_transform(curl(Bd));
    out.dU = leray_project(minus(
        plus_diffusion(cross_prepared(pJ, pB), s.U, nu),
        cross_prepared(pOmega, pU)));
  }
  out.dB = leray_project(minus(
      plus_diffusion(advect_prepared(pB, dU), s.B, eta),
      advect_prepared(pU, dB)));
  return out;
}

VVVRhs rhs_vvv_mhd_impl(const VVVState& s, double alpha, double nu,
                        double eta) {
  require_solenoidal(state_solenoidality(s), "rhs_vvv_mhd");

  const SpectralVectorField ud = dealias(s.u);
  const SpectralVectorField wd = dealias(s.w);
  const SpectralVectorField bd = dealias(s.b);
  const PhysicalVectorField pu = inverse_transform(ud);
  const PhysicalVectorField pw = inverse_transform(wd);
  const PhysicalVectorField pb = inverse_transform(bd);
  const PhysicalVectorField pj = inverse_transform(curl(bd));
  const FieldDerivs du = derivatives(ud);
  const FieldDerivs dw = derivatives(wd);
  const FieldDerivs db = derivatives(bd);

  VVVRhs out;
  out.du = voigt_invert(
      leray_project(minus(plus_diffusion(advect_prepared(pb, db), s.u, nu),
                          cross_prepared(pw, pu))),
      alpha);
  out.dw = leray_project(minus(
               plus_diffusion(advect_prepared(pw, du), s.w, nu),
               advect_prepared(pu, dw))) +
           curl(cross_prepared(pj, pb));
  out.db = leray_project(minus(
      plus_diffusion(advect_prepared(pb, du), s.b, eta),
      advect_prepared(pu, db)));
  return out;
}

}  // namespace

MHDRhs rhs_mhd(const MHDState& s, const PhysParams& p, MhdForm form) {
  return rhs_mhd_impl(s, form, p.nu, p.eta);
}

MHDRhs rhs_mhd_nonlinear(const MHDState& s, const PhysParams& p,
                         MhdForm form) {
  (void)p;
  return rhs_mhd_impl(s, form, 0.0, 0.0);
}

VVVRhs rhs_vvv_mhd(const VVVState& s, const PhysParams& p) {
  return rhs_vvv_mhd_impl(s, p.alpha, p.nu, p.eta);
}

VVVRhs rhs_vvv_mhd_nonlinear(const VVVState& s, const PhysParams& p) {
  return rhs_vvv_mhd_impl(s, p.alpha, 0.0, 0.0);
}

double state_solenoidality(const MHDState& s) {
  return std::max(solenoidality_residual(s.U), solenoidality_residual(s.B));
}

double state_solenoidality(const VVVState& s) {
  return std::max({solenoidality_residual(s.u), solenoidality_residual(s.w),
                   solenoidality_residual(s.b)});
}

}  // namespace vvmhd
