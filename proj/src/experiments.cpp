#include "vvmhd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace vvmhd {
namespace {

PhysicalVectorField sample_taylor_green(const GridSpec& g, double a) {
  PhysicalVectorField f(g);
  for (int i = 0; i < g.n; ++i) {
    const double x = two_pi * i / g.n;
    for (int j = 0; j < g.n; ++j) {
      const double y = two_pi * j / g.n;
      for (int k = 0; k < g.n; ++k) {
        const double z = two_pi * k / g.n;
        f.at(0, i, j, k) = a * std::sin(x) * std::cos(y) * std::cos(z);
        f.at(1, i, j, k) = -a * std::cos(x) * std::sin(y) * std::cos(z);
      }
    }
  }
  return f;
}

PhysicalVectorField sample_abc(const GridSpec& g, double a) {
  PhysicalVectorField f(g);
  for (int i = 0; i < g.n; ++i) {
    const double x = two_pi * i / g.n;
    for (int j = 0; j < g.n; ++j) {
      const double y = two_pi * j / g.n;
      for (int k = 0; k < g.n; ++k) {
        const double z = two_pi * k / g.n;
        f.at(0, i, j, k) = a * (std::sin(z) + std::cos(y));
        f.at(1, i, j, k) = a * (std::sin(x) + std::cos(z));
        f.at(2, i, j, k) = a * (std::sin(y) + std::cos(x));
      }
    }
  }
  return f;
}

/// Seeded solenoidal random field: complex Gaussian modes inside
/// |m|_inf <= band with a Gaussian spectral envelope exp(-|m|^2/m0^2),
/// Hermitian-symmetrized, Leray-projected and normalized to |f| = amplitude.
SpectralVectorField random_solenoidal(const GridSpec& g, std::uint64_t seed,
                                      int band, double m0, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralVectorField f(g);
  for (int i = 0; i < g.n; ++i) {
    const int mi = g.signed_index(i);
    for (int j = 0; j < g.n; ++j) {
      const int mj = g.signed_index(j);
      for (int k = 0; k < g.n; ++k) {
        const int mk = g.signed_index(k);
        const int minf = std::max({std::abs(mi), std::abs(mj), std::abs(mk)});
        if (minf == 0 || minf > band) continue;
        const double m2 = double(mi) * mi + double(mj) * mj + double(mk) * mk;
        const double env = std::exp(-m2 / (m0 * m0));
        for (int c = 0; c < 3; ++c)
          f.at(c, i, j, k) =
              env * std::complex<double>(gauss(rng), gauss(rng));
      }
    }
  }
  enforce_hermitian(f);
  f = leray_project(f);
  const double n0 = norm(f, 0);
  if (n0 == 0.0)
    throw std::runtime_error("random_solenoidal: degenerate draw");
  f *= amplitude / n0;
  return f;
}

double spectral_tail_fraction(const VVVState& s) {
  const GridSpec& g = s.u.grid();
  const double cutoff = g.dealias_fraction * (0.5 * g.n);
  const double tail_start = (2.0 / 3.0) * cutoff;
  double tail = 0.0, total = 0.0;
  auto accumulate = [&](const SpectralVectorField& f) {
    for (int c = 0; c < 3; ++c) {
      const std::complex<double>* p = f.component(c);
      long idx = 0;
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
          for (int k = 0; k < g.n; ++k, ++idx) {
            const int minf = std::max({std::abs(g.signed_index(i)),
                                       std::abs(g.signed_index(j)),
                                       std::abs(g.signed_index(k))});
            const double e = std::norm(p[idx]);
            total += e;
            if (minf > tail_start) tail += e;
          }
    }
  };
  accumulate(s.u);
  accumulate(s.w);
  accumulate(s.b);
  return total == 0.0 ? 0.0 : tail / total;
}

}  // namespace

InitialData initial_data(const GridSpec& grid, InitialKind kind,
                         double amplitude, std::uint64_t seed) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("initial_data: amplitude must be > 0");
  const int band = grid.n / 4;

  InitialData d;
  switch (kind) {
    case InitialKind::taylor_green:
      d.u0 = transform(sample_taylor_green(grid, amplitude));
      break;
    case InitialKind::abc:
      d.u0 = transform(sample_abc(grid, amplitude));
      break;
    case InitialKind::random_band:
      d.u0 = random_solenoidal(grid, seed, band, 0.5 * band, amplitude);
      break;
  }
  d.u0 = leray_project(d.u0);  // pin mean and roundoff divergence
  d.w0 = curl(d.u0);
  // independent seed stream for the magnetic field; the tight envelope keeps
  // high-|k| dissipation quadrature error small at the default record spacing
  d.b0 = random_solenoidal(grid, seed ^ 0x9e3779b97f4a7c15ull, band, 1.5,
                           0.5 * amplitude);
  return d;
}

void SweepPlan::validate() const {
  if (alphas.empty())
    throw std::invalid_argument("SweepPlan: alphas must be nonempty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < 0.0 || !std::isfinite(alphas[i]))
      throw std::invalid_argument("SweepPlan: alphas must be >= 0 and finite");
    if (i > 0 && !(alphas[i] < alphas[i - 1]))
      throw std::invalid_argument("SweepPlan: alphas must be strictly decreasing");
  }
  GridSpec probe(n);  // validates n
  PhysParams check(nu, eta, 0.0);
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("SweepPlan: dt must be > 0");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("SweepPlan: t_end must be > 0");
  if (record_every < 1)
    throw std::invalid_argument("SweepPlan: record_every must be >= 1");
  if (!(amplitude > 0.0))
    throw std::invalid_argument("SweepPlan: amplitude must be > 0");
}

RateFit rate_fit(const std::vector<double>& alphas,
                 const std::vector<double>& values) {
  if (alphas.size() != values.size())
    throw std::invalid_argument("rate_fit: size mismatch");
  std::vector<double> xs, ys;
  int excluded = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] > 0.0 && values[i] > 0.0) {
      xs.push_back(std::log(alphas[i]));
      ys.push_back(std::log(values[i]));
    } else {
      ++excluded;  // below noise floor (or the alpha = 0 member)
    }
  }
  if (xs.size() < 3)
    throw std::invalid_argument("rate_fit: fewer than 3 usable points");

  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0)
    throw std::invalid_argument("rate_fit: alphas are all identical");

  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.n_points = static_cast<int>(xs.size());
  fit.excluded = excluded;
  return fit;
}

SweepReport alpha_sweep(const SweepPlan& plan) {
  plan.validate();
  const GridSpec grid(plan.n);
  const InitialData data = initial_data(grid, plan.kind, plan.amplitude,
                                        plan.seed);
  const PhysParams ref_params(plan.nu, plan.eta, 0.0);
  const double time_tol = 0.5 * plan.dt;

  SweepReport report;
  report.plan = plan;

  MHDState ref0(grid);
  ref0.U = data.u0;
  ref0.B = data.b0;

  StepperConfig cfg;
  cfg.dt = plan.dt;
  cfg.t_end = plan.t_end;
  cfg.record_every = plan.record_every;

  const bool energy_density_ok =
      plan.record_every * plan.dt <= plan.t_end / 50.0 + 1e-12;

  {
    Trajectory<MHDState> ref_traj = integrate(ref0, ref_params, cfg);
    report.mhd_records = ref_traj.records;
    if (ref_traj.aborted) {
      report.failed = true;
      return report;
    }
    if (energy_density_ok) annotate_energy(report.mhd_records, ref_params);
  }

  const long n_steps = static_cast<long>(
      std::ceil(plan.t_end / plan.dt - 1e-9));

  for (double alpha : plan.alphas) {
    SweepMember member;
    member.alpha = alpha;
    const PhysParams params(plan.nu, plan.eta, alpha);

    VVVState vvv(grid);
    vvv.u = data.u0;
    vvv.w = data.w0;
    vvv.b = data.b0;
    MHDState mhd = ref0;
    GapAccumulators acc;

    auto take_record = [&]() {
      DiagnosticRecord rec = base_record(vvv);
      const GapRecord gap = mhd_gap(vvv, mhd, alpha, params, acc, time_tol);
      rec.xi_l2 = gap.xi_l2;
      rec.zeta_l2 = gap.zeta_l2;
      rec.q_l2 = gap.q_l2;
      rec.beta_l2 = gap.beta_l2;
      rec.mu_l2 = gap.mu_l2;
      member.records.push_back(rec);
      member.final_gap = gap;
    };

    take_record();
    bool ok = true;
    for (long i = 0; i < n_steps; ++i) {
      const double h = std::min(plan.dt, plan.t_end - vvv.t);
      step(vvv, params, h);
      step(mhd, ref_params, h);
      if (!stepper_detail::state_finite(vvv) ||
          !stepper_detail::state_finite(mhd)) {
        member.aborted = true;
        member.abort_time = vvv.t;
        report.failed = true;
        ok = false;
        break;
      }
      if ((i + 1) % plan.record_every == 0 || i + 1 == n_steps) take_record();
    }

    if (ok) {
      if (energy_density_ok) annotate_energy(member.records, params);
      member.spectral_tail_fraction = spectral_tail_fraction(vvv);
    }
    annotate_blowup(member.records, alpha);
    for (const auto& r : member.records)
      if (r.alpha_grad_u_running_sup)
        member.blowup_sup = *r.alpha_grad_u_running_sup;
    report.members.push_back(std::move(member));
  }

  // rate fits over the positive-alpha members that completed
  std::vector<double> xs;
  std::vector<double> v_zeta, v_q, v_beta, v_mu, v_xi, v_agg, v_sup;
  for (const auto& m : report.members) {
    if (m.aborted || m.alpha <= 0.0) continue;
    xs.push_back(m.alpha);
    v_zeta.push_back(m.final_gap.zeta_l2);
    v_q.push_back(m.final_gap.q_l2);
    v_beta.push_back(m.final_gap.beta_l2);
    v_mu.push_back(m.final_gap.mu_l2);
    v_xi.push_back(m.final_gap.xi_l2);
    v_agg.push_back(aggregate_gap_squared(m.final_gap));
    v_sup.push_back(m.blowup_sup);
  }
  if (xs.size() >= 3) {
    report.fits.fitted = true;
    report.fits.zeta = rate_fit(xs, v_zeta);
    report.fits.q = rate_fit(xs, v_q);
    report.fits.beta = rate_fit(xs, v_beta);
    report.fits.mu = rate_fit(xs, v_mu);
    report.fits.xi = rate_fit(xs, v_xi);
    report.fits.aggregate = rate_fit(xs, v_agg);
    report.fits.blowup_sup = rate_fit(xs, v_sup);
  }

  // soft monotonicity check: gaps should not grow as alpha shrinks
  for (std::size_t i = 1; i < report.members.size(); ++i) {
    const SweepMember& hi = report.members[i - 1];
    const SweepMember& lo = report.members[i];
    if (hi.aborted || lo.aborted) continue;
    auto complain = [&](const char* what, double a, double b) {
      std::ostringstream msg;
      msg << what << " grew from " << a << " to " << b
          << " between alpha = " << hi.alpha << " and " << lo.alpha;
      report.monotonicity_violations.push_back(msg.str());
    };
    if (lo.final_gap.zeta_l2 > hi.final_gap.zeta_l2)
      complain("zeta_l2", hi.final_gap.zeta_l2, lo.final_gap.zeta_l2);
    if (lo.final_gap.xi_l2 > hi.final_gap.xi_l2)
      complain("xi_l2", hi.final_gap.xi_l2, lo.final_gap.xi_l2);
  }

  for (auto it = report.members.rbegin(); it != report.members.rend(); ++it) {
    if (!it->aborted) {
      report.sup_then_smallest_alpha = it->blowup_sup;
      break;
    }
  }
  return report;
}

EnvelopeFit vorticity_envelope_fit(const SweepReport& report) {
  struct Point {
    double alpha, t, gap;
  };
  std::vector<Point> pts;
  double t0 = 0.0;
  for (const auto& m : report.members) {
    if (m.aborted || m.alpha <= 0.0 || m.records.empty()) continue;
    t0 = m.records.front().t;
    for (const auto& r : m.records) {
      if (r.t <= t0 || !r.xi_l2 || *r.xi_l2 <= 0.0) continue;
      pts.push_back({m.alpha, r.t - t0, *r.xi_l2});
    }
  }
  if (pts.size() < 3)
    throw std::invalid_argument("vorticity_envelope_fit: not enough points");

  // profile least squares: given C, ln K is the mean residual
  auto sse = [&](double c) {
    double mean = 0.0;
    for (const auto& p : pts)
      mean += std::log(p.gap / p.alpha) -
              0.5 * std::log(std::expm1(c * p.t));
    mean /= static_cast<double>(pts.size());
    double s = 0.0;
    for (const auto& p : pts) {
      const double r = std::log(p.gap / p.alpha) -
                       0.5 * std::log(std::expm1(c * p.t)) - mean;
      s += r * r;
    }
    return s;
  };

  // golden-section on ln C
  double lo = std::log(1e-2), hi = std::log(2e2);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = sse(std::exp(x1)), f2 = sse(std::exp(x2));
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = sse(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = sse(std::exp(x2));
    }
  }
  EnvelopeFit fit;
  fit.C = std::exp(0.5 * (a + b));

  double k_all = 0.0;
  double spread_lo = 0.0, spread_hi = 0.0;
  for (const auto& m : report.members) {
    if (m.aborted || m.alpha <= 0.0) continue;
    double k_member = 0.0;
    for (const auto& p : pts) {
      if (p.alpha != m.alpha) continue;
      k_member = std::max(
          k_member, p.gap / (p.alpha * std::sqrt(std::expm1(fit.C * p.t))));
    }
    if (k_member == 0.0) continue;
    k_all = std::max(k_all, k_member);
    spread_lo = spread_lo == 0.0 ? k_member : std::min(spread_lo, k_member);
    spread_hi = std::max(spread_hi, k_member);
  }
  fit.K = k_all;
  fit.member_spread = spread_lo == 0.0 ? 0.0 : spread_hi / spread_lo;
  return fit;
}

}  // namespace vvmhd
