#include "vvmhd/timestepper.hpp"

#include <cmath>

namespace vvmhd {
namespace {

constexpr double dt_hard_cap = 1e-2;

/// Per-mode integrating factors exp(-coef |k|^2 h / (1 + a2 |k|^2)).
/// a2 = 0 gives the plain diffusive symbol.
std::vector<double> exp_table(const GridSpec& g, double coef, double a2,
                              double h) {
  std::vector<double> tab(g.size());
  long idx = 0;
  for (int i = 0; i < g.n; ++i) {
    const double ki = g.wavenumber(i);
    for (int j = 0; j < g.n; ++j) {
      const double kj = g.wavenumber(j);
      for (int k = 0; k < g.n; ++k, ++idx) {
        const double kk = g.wavenumber(k);
        const double k2 = ki * ki + kj * kj + kk * kk;
        tab[idx] = std::exp(-coef * k2 * h / (1.0 + a2 * k2));
      }
    }
  }
  return tab;
}

SpectralVectorField decay(const std::vector<double>& tab,
                          const SpectralVectorField& f) {
  SpectralVectorField out = f;
  for (int c = 0; c < 3; ++c) {
    std::complex<double>* p = out.component(c);
    for (long i = 0; i < out.size(); ++i) p[i] *= tab[i];
  }
  return out;
}

void finish_step(SpectralVectorField& f) {
  f = leray_project(f);
  enforce_hermitian(f);
}

bool field_finite(const SpectralVectorField& f) {
  for (const auto& c : f.raw())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double max_phys_magnitude(const SpectralVectorField& f) {
  const PhysicalVectorField p = inverse_transform(f);
  const long size = f.grid().size();
  double m = 0.0;
  const double *c0 = p.component(0), *c1 = p.component(1),
               *c2 = p.component(2);
  for (long i = 0; i < size; ++i) {
    const double mag =
        std::sqrt(c0[i] * c0[i] + c1[i] * c1[i] + c2[i] * c2[i]);
    m = std::max(m, mag);
  }
  return m;
}

}  // namespace

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("StepperConfig: dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("StepperConfig: t_end must be >= 0");
  if (record_every < 1)
    throw std::invalid_argument("StepperConfig: record_every must be >= 1");
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
    throw std::invalid_argument("StepperConfig: cfl_safety must lie in (0, 1]");
}

void step(MHDState& s, const PhysParams& p, double dt, MhdForm form) {
  const GridSpec& g = s.U.grid();
  const auto eu_h = exp_table(g, p.nu, 0.0, 0.5 * dt);
  const auto eu_f = exp_table(g, p.nu, 0.0, dt);
  const auto eb_h = exp_table(g, p.eta, 0.0, 0.5 * dt);
  const auto eb_f = exp_table(g, p.eta, 0.0, dt);

  // The integrating factor owns diffusion exactly; the explicit stages see
  // only the nonlinear part.
  auto nonlinear = [&](const MHDState& y) {
    return rhs_mhd_nonlinear(y, p, form);
  };

  const MHDRhs n1 = nonlinear(s);

  MHDState s2(g);
  s2.t = s.t + 0.5 * dt;
  s2.U = decay(eu_h, s.U + (0.5 * dt) * n1.dU);
  s2.B = decay(eb_h, s.B + (0.5 * dt) * n1.dB);
  const MHDRhs n2 = nonlinear(s2);

  MHDState s3(g);
  s3.t = s2.t;
  s3.U = decay(eu_h, s.U) + (0.5 * dt) * n2.dU;
  s3.B = decay(eb_h, s.B) + (0.5 * dt) * n2.dB;
  const MHDRhs n3 = nonlinear(s3);

  MHDState s4(g);
  s4.t = s.t + dt;
  s4.U = decay(eu_f, s.U) + dt * decay(eu_h, n3.dU);
  s4.B = decay(eb_f, s.B) + dt * decay(eb_h, n3.dB);
  const MHDRhs n4 = nonlinear(s4);

  const double w = dt / 6.0;
  s.U = decay(eu_f, s.U) +
        w * (decay(eu_f, n1.dU) + 2.0 * decay(eu_h, n2.dU + n3.dU) + n4.dU);
  s.B = decay(eb_f, s.B) +
        w * (decay(eb_f, n1.dB) + 2.0 * decay(eb_h, n2.dB + n3.dB) + n4.dB);
  finish_step(s.U);
  finish_step(s.B);
  s.t += dt;
}

void step(VVVState& s, const PhysParams& p, double dt) {
  const GridSpec& g = s.u.grid();
  const double a2 = p.alpha * p.alpha;
  const auto eu_h = exp_table(g, p.nu, a2, 0.5 * dt);
  const auto eu_f = exp_table(g, p.nu, a2, dt);
  const auto ew_h = exp_table(g, p.nu, 0.0, 0.5 * dt);
  const auto ew_f = exp_table(g, p.nu, 0.0, dt);
  const auto eb_h = exp_table(g, p.eta, 0.0, 0.5 * dt);
  const auto eb_f = exp_table(g, p.eta, 0.0, dt);

  auto nonlinear = [&](const VVVState& y) { return rhs_vvv_mhd_nonlinear(y, p); };

  const VVVRhs n1 = nonlinear(s);

  VVVState s2(g);
  s2.t = s.t + 0.5 * dt;
  s2.u = decay(eu_h, s.u + (0.5 * dt) * n1.du);
  s2.w = decay(ew_h, s.w + (0.5 * dt) * n1.dw);
  s2.b = decay(eb_h, s.b + (0.5 * dt) * n1.db);
  const VVVRhs n2 = nonlinear(s2);

  VVVState s3(g);
  s3.t = s2.t;
  s3.u = decay(eu_h, s.u) + (0.5 * dt) * n2.du;
  s3.w = decay(ew_h, s.w) + (0.5 * dt) * n2.dw;
  s3.b = decay(eb_h, s.b) + (0.5 * dt) * n2.db;
  const VVVRhs n3 = nonlinear(s3);

  VVVState s4(g);
  s4.t = s.t + dt;
  s4.u = decay(eu_f, s.u) + dt * decay(eu_h, n3.du);
  s4.w = decay(ew_f, s.w) + dt * decay(ew_h, n3.dw);
  s4.b = decay(eb_f, s.b) + dt * decay(eb_h, n3.db);
  const VVVRhs n4 = nonlinear(s4);

  const double w6 = dt / 6.0;
  s.u = decay(eu_f, s.u) +
        w6 * (decay(eu_f, n1.du) + 2.0 * decay(eu_h, n2.du + n3.du) + n4.du);
  s.w = decay(ew_f, s.w) +
        w6 * (decay(ew_f, n1.dw) + 2.0 * decay(ew_h, n2.dw + n3.dw) + n4.dw);
  s.b = decay(eb_f, s.b) +
        w6 * (decay(eb_f, n1.db) + 2.0 * decay(eb_h, n2.db + n3.db) + n4.db);
  finish_step(s.u);
  finish_step(s.w);
  finish_step(s.b);
  s.t += dt;
}

namespace stepper_detail {

bool state_finite(const MHDState& s) {
  return field_finite(s.U) && field_finite(s.B);
}

bool state_finite(const VVVState& s) {
  return field_finite(s.u) && field_finite(s.w) && field_finite(s.b);
}

}  // namespace stepper_detail

double suggest_dt(const VVVState& s, const PhysParams& p, const GridSpec& g,
                  double cfl_safety) {
  (void)p;
  const double dx = 1.0 / g.n;
  double bound = dt_hard_cap / cfl_safety;  // zero fields impose no limit
  const double umax = max_phys_magnitude(s.u);
  const double bmax = max_phys_magnitude(s.b);
  const double wmax = max_phys_magnitude(s.w);
  if (umax > 0.0) bound = std::min(bound, dx / umax);
  if (bmax > 0.0) bound = std::min(bound, dx / bmax);
  if (wmax > 0.0) bound = std::min(bound, 1.0 / wmax);
  return std::min(cfl_safety * bound, dt_hard_cap);
}

double suggest_dt(const MHDState& s, const PhysParams& p, const GridSpec& g,
                  double cfl_safety) {
  (void)p;
  const double dx = 1.0 / g.n;
  double bound = dt_hard_cap / cfl_safety;
  const double umax = max_phys_magnitude(s.U);
  const double bmax = max_phys_magnitude(s.B);
  if (umax > 0.0) bound = std::min(bound, dx / umax);
  if (bmax > 0.0) bound = std::min(bound, dx / bmax);
  return std::min(cfl_safety * bound, dt_hard_cap);
}

}  // namespace vvmhd
