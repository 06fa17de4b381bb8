#pragma once

#include <functional>
#include <vector>

#include "vvmhd/diagnostics.hpp"
#include "vvmhd/dynamics.hpp"

namespace vvmhd {

struct StepperConfig {
  double dt = 0.0;
  double t_end = 0.0;
  int record_every = 1;
  double cfl_safety = 0.5;
  bool retain_snapshots = false;

  void validate() const;
};

/// Time series of diagnostics plus the final state.  If the run hit a
/// non-finite coefficient, `aborted` is set and the records up to the last
/// healthy sample are retained; abort_indicator is the blow-up indicator
/// alpha |grad u| of the last finite state.
template <class State>
struct Trajectory {
  std::vector<DiagnosticRecord> records;
  std::vector<State> snapshots;  // only when retain_snapshots is set
  State final_state;
  bool aborted = false;
  double abort_time = 0.0;
  double abort_indicator = 0.0;
};

template <class State>
using Observer = std::function<void(const State&, DiagnosticRecord&)>;

/// One integrating-factor RK4 step: the diffusive symbol is propagated by its
/// exact per-mode exponential (including the Voigt-softened symbol on the
/// u-equation), nonlinear terms advance explicitly.  The result is
/// re-projected and Hermitian-enforced; state.t advances by dt.
void step(MHDState& s, const PhysParams& p, double dt,
          MhdForm form = MhdForm::convective);
void step(VVVState& s, const PhysParams& p, double dt);

namespace stepper_detail {
bool state_finite(const MHDState& s);
bool state_finite(const VVVState& s);
}  // namespace stepper_detail

/// Repeated stepping from initial.t to config.t_end with records every
/// record_every steps and always at the first and final time.  Deterministic
/// for identical inputs.  Non-solenoidal initial data is rejected up front;
/// once running, a blow-up (non-finite coefficients, or stage values so large
/// the RHS rejects them) aborts without throwing and keeps the records up to
/// the last healthy sample.
template <class State>
Trajectory<State> integrate(const State& initial, const PhysParams& params,
                            const StepperConfig& config,
                            const std::vector<Observer<State>>& observers = {}) {
  config.validate();
  if (config.t_end < initial.t)
    throw std::invalid_argument("integrate: t_end precedes the initial time");
  if (state_solenoidality(initial) > rhs_solenoidality_tolerance)
    throw std::invalid_argument("integrate: initial state is not solenoidal");

  Trajectory<State> traj;
  State s = initial;
  const double span = config.t_end - s.t;
  const long n_steps =
      span == 0.0 ? 0 : static_cast<long>(std::ceil(span / config.dt - 1e-9));

  auto record = [&](const State& st) {
    DiagnosticRecord r = base_record(st);
    for (const auto& obs : observers) obs(st, r);
    traj.records.push_back(r);
    if (config.retain_snapshots) traj.snapshots.push_back(st);
  };

  record(s);
  double last_indicator = params.alpha * norm(velocity(s), 1);
  for (long i = 0; i < n_steps; ++i) {
    const double remaining = config.t_end - s.t;
    // Accumulated t can sit a few ulps past the nominal grid, leaving the
    // last step fractionally short of dt.  Snap such steps to a full dt so a
    // run restarted from a checkpoint takes bitwise-identical steps to an
    // unbroken one; genuinely partial final steps stay clipped.
    const double h = remaining > config.dt * (1.0 - 1e-9)
                         ? config.dt
                         : remaining;
    bool stage_blowup = false;
    try {
      step(s, params, h);
    } catch (const std::domain_error&) {
      // a diverging stage trips the RHS input validation (or the transform's
      // finiteness check) before the post-step test can see it
      stage_blowup = true;
    }
    if (stage_blowup || !stepper_detail::state_finite(s)) {
      traj.aborted = true;
      traj.abort_time = s.t;
      traj.abort_indicator = last_indicator;
      traj.final_state = s;
      return traj;
    }
    last_indicator = params.alpha * norm(velocity(s), 1);
    const bool last = (i + 1 == n_steps);
    if ((i + 1) % config.record_every == 0 || last) record(s);
  }
  traj.final_state = s;
  return traj;
}

/// Advective CFL suggestion: cfl_safety * min over fields of dx / max |field|
/// (1 / max |w| for the vorticity, whose u-equation term is zeroth order),
/// hard-capped at 1e-2.  Zero states get the cap.
double suggest_dt(const VVVState& s, const PhysParams& p, const GridSpec& g,
                  double cfl_safety = 0.5);
double suggest_dt(const MHDState& s, const PhysParams& p, const GridSpec& g,
                  double cfl_safety = 0.5);

}  // namespace vvmhd
