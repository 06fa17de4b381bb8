#include "vvmhd/diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vvmhd {
namespace {

SpectralVectorField diff(const SpectralVectorField& a,
                         const SpectralVectorField& b) {
  SpectralVectorField d = a;
  d += -1.0 * b;
  return d;
}

double require_column(const std::optional<double>& v, const char* name) {
  if (!v) {
    std::ostringstream msg;
    msg << "energy_budget: record is missing the " << name << " column";
    throw std::invalid_argument(msg.str());
  }
  return *v;
}

}  // namespace

double solenoidality(const MHDState& s) { return state_solenoidality(s); }
double solenoidality(const VVVState& s) { return state_solenoidality(s); }

VorticityGap vorticity_gap(const VVVState& s, double alpha) {
  const SpectralVectorField xi = diff(curl(s.u), s.w);
  return {norm(xi, 0), alpha * norm(xi, 1)};
}

GapRecord mhd_gap(const VVVState& vvv, const MHDState& mhd, double alpha,
                  const PhysParams& params, GapAccumulators& acc,
                  double time_tol) {
  if (!(vvv.u.grid() == mhd.U.grid()))
    throw std::invalid_argument("mhd_gap: states live on different grids");
  if (std::abs(vvv.t - mhd.t) > time_tol) {
    std::ostringstream msg;
    msg << "mhd_gap: time mismatch |" << vvv.t << " - " << mhd.t
        << "| exceeds tolerance " << time_tol;
    throw std::invalid_argument(msg.str());
  }

  GapRecord g;
  g.t = vvv.t;

  const SpectralVectorField xi = diff(curl(vvv.u), vvv.w);
  g.xi_l2 = norm(xi, 0);
  g.xi_h1_weighted = alpha * norm(xi, 1);

  const SpectralVectorField zeta = diff(vvv.u, mhd.U);
  const SpectralVectorField q = diff(vvv.w, curl(mhd.U));
  const SpectralVectorField beta = diff(vvv.b, mhd.B);
  const SpectralVectorField mu = diff(curl(vvv.b), curl(mhd.B));
  g.zeta_l2 = norm(zeta, 0);
  g.zeta_h1_weighted = alpha * norm(zeta, 1);
  g.q_l2 = norm(q, 0);
  g.beta_l2 = norm(beta, 0);
  g.mu_l2 = norm(mu, 0);

  // trapezoid update of the dissipation-gap integrals
  const double f_zeta = inner_product(zeta, zeta, 1);
  const double f_q = inner_product(q, q, 1);
  const double f_beta = inner_product(beta, beta, 1);
  const double f_mu = inner_product(mu, mu, 1);
  if (acc.primed) {
    const double h = 0.5 * (g.t - acc.prev_t);
    acc.int_zeta += h * (acc.prev_zeta + f_zeta);
    acc.int_q += h * (acc.prev_q + f_q);
    acc.int_beta += h * (acc.prev_beta + f_beta);
    acc.int_mu += h * (acc.prev_mu + f_mu);
  }
  acc.primed = true;
  acc.prev_t = g.t;
  acc.prev_zeta = f_zeta;
  acc.prev_q = f_q;
  acc.prev_beta = f_beta;
  acc.prev_mu = f_mu;

  g.diss_u_gap = params.nu * acc.int_zeta;
  g.diss_w_gap = params.nu * acc.int_q;
  g.diss_b_gap = params.eta * acc.int_beta;
  g.diss_j_gap = params.eta * acc.int_mu;
  return g;
}

BlowupRecord blowup_indicator(const VVVState& s, double alpha,
                              double prior_sup) {
  BlowupRecord r;
  r.t = s.t;
  r.indicator = alpha * norm(s.u, 1);
  r.running_sup = std::max(prior_sup, r.indicator);
  return r;
}

std::vector<EnergyBudget> energy_budget(
    const std::vector<DiagnosticRecord>& records, const PhysParams& params) {
  if (records.size() < 2)
    throw std::invalid_argument("energy_budget: need at least 2 records");
  const double span = records.back().t - records.front().t;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].t - records[i - 1].t > span / 50.0 + 1e-12)
      throw std::invalid_argument(
          "energy_budget: record spacing too coarse for quadrature "
          "(needs record_every * dt <= span/50)");
  }

  const double a2 = params.alpha * params.alpha;
  std::vector<EnergyBudget> out;
  out.reserve(records.size());
  double integral = 0.0;
  double prev_t = 0.0, prev_g = 0.0;
  double initial_total = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DiagnosticRecord& r = records[i];
    const double u2 = std::pow(require_column(r.u_l2, "u_l2"), 2);
    const double gu2 = std::pow(require_column(r.u_h1, "u_h1"), 2);
    const double b2 = std::pow(require_column(r.b_l2, "b_l2"), 2);
    const double gb2 = std::pow(require_column(r.b_h1, "b_h1"), 2);

    EnergyBudget e;
    e.t = r.t;
    e.kinetic = u2;
    e.voigt = a2 * gu2;
    e.magnetic = b2;
    e.lhs_total = e.kinetic + e.voigt + e.magnetic;

    const double g = 2.0 * (params.nu * gu2 + params.eta * gb2);
    if (i > 0) integral += 0.5 * (e.t - prev_t) * (prev_g + g);
    prev_t = e.t;
    prev_g = g;
    e.dissipation_integral = integral;

    if (i == 0) initial_total = e.lhs_total;
    e.initial_total = initial_total;
    e.residual = e.lhs_total + e.dissipation_integral - initial_total;
    out.push_back(e);
  }
  return out;
}

void annotate_energy(std::vector<DiagnosticRecord>& records,
                     const PhysParams& params) {
  const std::vector<EnergyBudget> budgets = energy_budget(records, params);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].energy_lhs = budgets[i].lhs_total;
    records[i].dissipation_integral = budgets[i].dissipation_integral;
    records[i].energy_residual = budgets[i].residual;
  }
}

void annotate_blowup(std::vector<DiagnosticRecord>& records, double alpha) {
  double sup = 0.0;
  for (auto& r : records) {
    if (!r.u_h1) continue;
    const double ind = alpha * *r.u_h1;
    sup = std::max(sup, ind);
    r.alpha_grad_u = ind;
    r.alpha_grad_u_running_sup = sup;
  }
}

double aggregate_gap_squared(const GapRecord& g) {
  return g.zeta_l2 * g.zeta_l2 + g.zeta_h1_weighted * g.zeta_h1_weighted +
         g.q_l2 * g.q_l2 + g.beta_l2 * g.beta_l2 + g.mu_l2 * g.mu_l2 +
         g.diss_u_gap + g.diss_w_gap + g.diss_b_gap + g.diss_j_gap;
}

DiagnosticRecord base_record(const MHDState& s) {
  DiagnosticRecord r;
  r.t = s.t;
  r.u_l2 = norm(s.U, 0);
  r.u_h1 = norm(s.U, 1);
  r.b_l2 = norm(s.B, 0);
  r.b_h1 = norm(s.B, 1);
  return r;
}

DiagnosticRecord base_record(const VVVState& s) {
  DiagnosticRecord r;
  r.t = s.t;
  r.u_l2 = norm(s.u, 0);
  r.u_h1 = norm(s.u, 1);
  r.w_l2 = norm(s.w, 0);
  r.w_h1 = norm(s.w, 1);
  r.b_l2 = norm(s.b, 0);
  r.b_h1 = norm(s.b, 1);
  r.xi_l2 = vorticity_gap(s, 1.0).xi_l2;  // alpha-independent L2 part
  return r;
}

}  // namespace vvmhd
