#pragma once

#include "vvmhd/operators.hpp"
#include "vvmhd/params.hpp"

namespace vvmhd {

enum class SystemKind { mhd, vvv_mhd };

/// Incompressible resistive MHD state (velocity U, magnetic field B).
struct MHDState {
  SpectralVectorField U, B;
  double t = 0.0;

  MHDState() = default;
  explicit MHDState(const GridSpec& g) : U(g), B(g) {}
};

/// Velocity-vorticity-Voigt MHD state.  w is an independent dynamical field;
/// it coincides with curl(u) only when initialized that way and alpha = 0.
struct VVVState {
  SpectralVectorField u, w, b;
  double t = 0.0;

  VVVState() = default;
  explicit VVVState(const GridSpec& g) : u(g), w(g), b(g) {}
};

struct MHDRhs {
  SpectralVectorField dU, dB;
};

struct VVVRhs {
  SpectralVectorField du, dw, db;
};

enum class MhdForm { convective, rotational };

/// Inputs whose divergence residual exceeds this are rejected by the RHS
/// evaluators; trajectories hold two orders of magnitude below it.
inline constexpr double rhs_solenoidality_tolerance = 1e-8;

/// Right-hand side of incompressible MHD.
///   convective: dU/dt = P[nu lap U - (U.grad)U + (B.grad)B]
///   rotational: dU/dt = P[nu lap U - Omega x U + J x B]
/// with dB/dt = P[eta lap B - (U.grad)B + (B.grad)U] in both forms.
MHDRhs rhs_mhd(const MHDState& s, const PhysParams& p,
               MhdForm form = MhdForm::convective);

/// Right-hand side of the VVV-MHD system:
///   du/dt = (I - alpha^2 lap)^-1 P[nu lap u - w x u + (b.grad)b]
///   dw/dt = P[nu lap w - (u.grad)w + (w.grad)u] + curl(j x b),  j = curl(b)
///   db/dt = P[eta lap b - (u.grad)b + (b.grad)u]
/// curl(j x b) is solenoidal by construction, so it carries no projection.
VVVRhs rhs_vvv_mhd(const VVVState& s, const PhysParams& p);

/// The same right-hand sides with the diffusion terms omitted.  On solenoidal
/// states this equals the full RHS minus its diagonal linear part, which is
/// what the integrating-factor stages of the stepper advance explicitly; the
/// direct evaluation avoids forming and then cancelling the stiff terms.
MHDRhs rhs_mhd_nonlinear(const MHDState& s, const PhysParams& p,
                         MhdForm form = MhdForm::convective);
VVVRhs rhs_vvv_mhd_nonlinear(const VVVState& s, const PhysParams& p);

/// Max divergence residual over the state's fields.
double state_solenoidality(const MHDState& s);
double state_solenoidality(const VVVState& s);

// small helpers used by the stepper and I/O layers
template <class F>
void for_each_field(MHDState& s, F&& f) {
  f(s.U);
  f(s.B);
}
template <class F>
void for_each_field(const MHDState& s, F&& f) {
  f(s.U);
  f(s.B);
}
template <class F>
void for_each_field(VVVState& s, F&& f) {
  f(s.u);
  f(s.w);
  f(s.b);
}
template <class F>
void for_each_field(const VVVState& s, F&& f) {
  f(s.u);
  f(s.w);
  f(s.b);
}

inline const SpectralVectorField& velocity(const MHDState& s) { return s.U; }
inline const SpectralVectorField& velocity(const VVVState& s) { return s.u; }

}  // namespace vvmhd
