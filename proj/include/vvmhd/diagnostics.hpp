#pragma once

#include <optional>
#include <vector>

#include "vvmhd/dynamics.hpp"

namespace vvmhd {

/// One CSV row worth of diagnostics.  Fields a given run cannot produce stay
/// empty (MHD runs have no w, standalone runs have no reference gaps).
struct DiagnosticRecord {
  double t = 0.0;
  std::optional<double> u_l2, u_h1, w_l2, w_h1, b_l2, b_h1;
  std::optional<double> energy_lhs, dissipation_integral, energy_residual;
  std::optional<double> xi_l2, zeta_l2, q_l2, beta_l2, mu_l2;
  std::optional<double> alpha_grad_u, alpha_grad_u_running_sup;
};

/// Terms of the energy identity
///   alpha^2 |grad u|^2 + |u|^2 + |b|^2 + 2 int_0^t (nu |grad u|^2 + eta |grad b|^2)
/// evaluated per record; residual measures how far the discrete run is from
/// closing it.  w contributes nothing by design.
struct EnergyBudget {
  double t = 0.0;
  double kinetic = 0.0;   // |u|^2
  double voigt = 0.0;     // alpha^2 |grad u|^2
  double magnetic = 0.0;  // |b|^2
  double dissipation_integral = 0.0;
  double lhs_total = 0.0;
  double initial_total = 0.0;
  double residual = 0.0;
};

/// Difference norms between a VVV-MHD state and the MHD reference:
/// xi = curl(u) - w, zeta = u - U, q = w - Omega, beta = b - B, mu = j - J,
/// plus the dissipation-gap integrals accumulated along the comparison.
struct GapRecord {
  double t = 0.0;
  double xi_l2 = 0.0;
  double xi_h1_weighted = 0.0;  // alpha |grad xi|
  double zeta_l2 = 0.0;
  double zeta_h1_weighted = 0.0;  // alpha |grad zeta|
  double q_l2 = 0.0;
  double beta_l2 = 0.0;
  double mu_l2 = 0.0;
  double diss_u_gap = 0.0;  // nu  int |grad zeta|^2
  double diss_w_gap = 0.0;  // nu  int |grad q|^2
  double diss_b_gap = 0.0;  // eta int |grad beta|^2
  double diss_j_gap = 0.0;  // eta int |grad mu|^2
};

/// Trapezoid state for the dissipation-gap integrals (stream one instance
/// through successive mhd_gap calls along a lockstep comparison).
struct GapAccumulators {
  bool primed = false;
  double prev_t = 0.0;
  double prev_zeta = 0.0, prev_q = 0.0, prev_beta = 0.0, prev_mu = 0.0;
  double int_zeta = 0.0, int_q = 0.0, int_beta = 0.0, int_mu = 0.0;
};

struct BlowupRecord {
  double t = 0.0;
  double indicator = 0.0;  // alpha |grad u(t)|
  double running_sup = 0.0;
};

/// Max relative divergence over the state's fields (0 for zero fields).
double solenoidality(const MHDState& s);
double solenoidality(const VVVState& s);

struct VorticityGap {
  double xi_l2 = 0.0;
  double xi_h1_weighted = 0.0;
};

/// |curl(u) - w| and alpha |grad(curl(u) - w)|.
VorticityGap vorticity_gap(const VVVState& s, double alpha);

/// All instantaneous gap norms plus the trapezoid-updated dissipation-gap
/// integrals.  States must sit at the same time within time_tol (dt/2 in the
/// sweeps); a larger mismatch throws.
GapRecord mhd_gap(const VVVState& vvv, const MHDState& mhd, double alpha,
                  const PhysParams& params, GapAccumulators& acc,
                  double time_tol);

BlowupRecord blowup_indicator(const VVVState& s, double alpha,
                              double prior_sup);

/// Energy-identity bookkeeping over recorded norms.  Requires at least two
/// records and record spacing no coarser than span/50 (quadrature density).
std::vector<EnergyBudget> energy_budget(
    const std::vector<DiagnosticRecord>& records, const PhysParams& params);

/// Fill the energy columns of `records` in place (from energy_budget).
void annotate_energy(std::vector<DiagnosticRecord>& records,
                     const PhysParams& params);

/// Fill alpha_grad_u and its running sup from the recorded u_h1 column.
void annotate_blowup(std::vector<DiagnosticRecord>& records, double alpha);

/// The squared aggregate of the alpha-convergence bound: all five squared gap
/// norms plus the four weighted dissipation-gap integrals.
double aggregate_gap_squared(const GapRecord& g);

/// Norm columns for one state (t, u/w/b L2 and H1 norms; xi for VVV states).
DiagnosticRecord base_record(const MHDState& s);
DiagnosticRecord base_record(const VVVState& s);

}  // namespace vvmhd
