#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "vvmhd/config.hpp"
#include "vvmhd/diagnostics.hpp"
#include "vvmhd/dynamics.hpp"
#include "vvmhd/experiments.hpp"
#include "vvmhd/fft.hpp"
#include "vvmhd/io.hpp"
#include "vvmhd/operators.hpp"
#include "vvmhd/timestepper.hpp"

namespace {

using namespace vvmhd;

constexpr int exit_ok = 0;
constexpr int exit_config_error = 1;
constexpr int exit_numerical_abort = 2;
constexpr int exit_failed_check = 3;

void usage(std::ostream& out) {
  out <<
      "usage: vvmhd <subcommand> [args]\n"
      "\n"
      "subcommands:\n"
      "  run <config>     integrate one system and write a diagnostics CSV\n"
      "  sweep <config>   run an alpha sweep against the MHD reference\n"
      "  check            run the built-in invariant suite\n"
      "  info <file>      describe a checkpoint file\n"
      "  --help           show this text\n"
      "\n"
      "config files are flat key=value lines; '#' starts a comment.\n"
      "\n"
      "run keys (required): system (mhd|vvv_mhd), n, nu, eta, alpha, dt, t_end\n"
      "run keys (optional): record_every=1, initial_kind=taylor_green\n"
      "                     (taylor_green|abc|random_band), amplitude=1.0,\n"
      "                     seed=1, output=diagnostics.csv, checkpoint_out=,\n"
      "                     restart_from=\n"
      "  alpha is the velocity regularization length; it is ignored when\n"
      "  system=mhd.  restart_from resumes from a checkpoint whose header\n"
      "  must match the config.\n"
      "\n"
      "sweep keys (required): alphas (comma list, strictly decreasing), n,\n"
      "                       nu, eta, dt, t_end\n"
      "sweep keys (optional): record_every, initial_kind, amplitude, seed,\n"
      "                       output_prefix=sweep_\n"
      "\n"
      "exit codes: 0 success, 1 config error, 2 numerical abort,\n"
      "            3 failed check\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool energy_density_ok(double dt, int record_every, double span) {
  return span > 0.0 && record_every * dt <= span / 50.0 + 1e-12;
}

template <class State>
int finish_run(const RunConfig& cfg, const PhysParams& params,
               Trajectory<State>& traj, bool is_vvv) {
  // an aborted run's truncated record set cannot satisfy the quadrature
  // density precondition, so the energy columns stay empty in that case
  if (!traj.aborted &&
      energy_density_ok(cfg.dt, cfg.record_every,
                        cfg.t_end - traj.records.front().t))
    annotate_energy(traj.records, params);
  if (is_vvv) annotate_blowup(traj.records, params.alpha);
  write_diagnostics_csv(cfg.output, traj.records);

  if (traj.aborted) {
    std::cerr << "numerical abort at t = " << traj.abort_time
              << " (last indicator " << traj.abort_indicator
              << "); partial diagnostics in " << cfg.output << "\n";
    return exit_numerical_abort;
  }
  if (!cfg.checkpoint_out.empty())
    save_checkpoint(cfg.checkpoint_out, traj.final_state, params);

  const DiagnosticRecord& last = traj.records.back();
  std::cout << "finished t = " << last.t << ", wrote " << traj.records.size()
            << " records to " << cfg.output;
  if (!cfg.checkpoint_out.empty())
    std::cout << ", checkpoint " << cfg.checkpoint_out;
  std::cout << "\n";
  return exit_ok;
}

int cmd_run(const std::string& path) {
  const ParsedConfig parsed = parse_config(slurp(path));
  if (std::holds_alternative<SweepPlan>(parsed)) {
    std::cerr << "config '" << path
              << "' describes a sweep; use the sweep subcommand\n";
    return exit_config_error;
  }
  const RunConfig cfg = std::get<RunConfig>(parsed);
  const bool is_vvv = cfg.system == SystemKind::vvv_mhd;
  const PhysParams params(cfg.nu, cfg.eta, is_vvv ? cfg.alpha : 0.0);
  const GridSpec grid(cfg.n);

  StepperConfig scfg;
  scfg.dt = cfg.dt;
  scfg.t_end = cfg.t_end;
  scfg.record_every = cfg.record_every;

  if (!cfg.restart_from.empty()) {
    Checkpoint chk = load_checkpoint(cfg.restart_from);
    const bool chk_is_vvv = std::holds_alternative<VVVState>(chk.state);
    if (chk_is_vvv != is_vvv) {
      std::cerr << "restart_from: checkpoint system does not match config\n";
      return exit_config_error;
    }
    if (chk.params.nu != cfg.nu || chk.params.eta != cfg.eta ||
        (is_vvv && chk.params.alpha != cfg.alpha)) {
      std::cerr << "restart_from: checkpoint parameters do not match config\n";
      return exit_config_error;
    }
    if (is_vvv) {
      VVVState& s = std::get<VVVState>(chk.state);
      if (s.u.grid().n != cfg.n) {
        std::cerr << "restart_from: checkpoint n does not match config\n";
        return exit_config_error;
      }
      auto traj = integrate(s, params, scfg);
      return finish_run(cfg, params, traj, true);
    }
    MHDState& s = std::get<MHDState>(chk.state);
    if (s.U.grid().n != cfg.n) {
      std::cerr << "restart_from: checkpoint n does not match config\n";
      return exit_config_error;
    }
    auto traj = integrate(s, params, scfg);
    return finish_run(cfg, params, traj, false);
  }

  const InitialData data =
      initial_data(grid, cfg.initial_kind, cfg.amplitude, cfg.seed);
  if (is_vvv) {
    VVVState s(grid);
    s.u = data.u0;
    s.w = data.w0;
    s.b = data.b0;
    auto traj = integrate(s, params, scfg);
    return finish_run(cfg, params, traj, true);
  }
  MHDState s(grid);
  s.U = data.u0;
  s.B = data.b0;
  auto traj = integrate(s, params, scfg);
  return finish_run(cfg, params, traj, false);
}

std::string member_csv_path(const SweepPlan& plan, double alpha) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "alpha_%g.csv", alpha);
  return plan.output_prefix + buf;
}

int cmd_sweep(const std::string& path) {
  const ParsedConfig parsed = parse_config(slurp(path));
  if (!std::holds_alternative<SweepPlan>(parsed)) {
    std::cerr << "config '" << path
              << "' describes a single run; use the run subcommand\n";
    return exit_config_error;
  }
  const SweepPlan plan = std::get<SweepPlan>(parsed);
  const SweepReport report = alpha_sweep(plan);

  if (!report.mhd_records.empty())
    write_diagnostics_csv(plan.output_prefix + "mhd_reference.csv",
                          report.mhd_records);
  for (const SweepMember& m : report.members)
    if (!m.records.empty())
      write_diagnostics_csv(member_csv_path(plan, m.alpha), m.records);

  for (const SweepMember& m : report.members) {
    std::cout << "alpha = " << m.alpha;
    if (m.aborted) {
      std::cout << ": aborted at t = " << m.abort_time << "\n";
      continue;
    }
    std::cout << ": zeta = " << m.final_gap.zeta_l2
              << ", xi = " << m.final_gap.xi_l2
              << ", beta = " << m.final_gap.beta_l2
              << ", sup alpha|grad u| = " << m.blowup_sup
              << ", tail fraction = " << m.spectral_tail_fraction << "\n";
  }
  if (report.fits.fitted) {
    auto show = [](const char* name, const RateFit& f) {
      std::cout << "  " << name << ": slope " << f.slope << " (r^2 "
                << f.r_squared << ", " << f.n_points << " points)\n";
    };
    std::cout << "log-log rate fits vs alpha:\n";
    show("zeta_l2", report.fits.zeta);
    show("q_l2", report.fits.q);
    show("beta_l2", report.fits.beta);
    show("mu_l2", report.fits.mu);
    show("xi_l2", report.fits.xi);
    show("aggregate^2", report.fits.aggregate);
    show("sup alpha|grad u|", report.fits.blowup_sup);
  }
  for (const std::string& v : report.monotonicity_violations)
    std::cout << "monotonicity: " << v << "\n";
  try {
    const EnvelopeFit env = vorticity_envelope_fit(report);
    std::cout << "vorticity envelope: K = " << env.K << ", C = " << env.C
              << ", member spread " << env.member_spread << "\n";
  } catch (const std::exception&) {
    // too few usable points (tiny sweeps); the fits above still stand
  }

  if (report.failed) {
    std::cerr << "sweep aborted; partial diagnostics were written\n";
    return exit_numerical_abort;
  }
  std::cout << "sup of blow-up indicator at smallest alpha: "
            << report.sup_then_smallest_alpha << "\n";
  return exit_ok;
}

struct CheckRunner {
  bool all_ok = true;
  void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    all_ok = all_ok && ok;
  }
  void check(const std::string& name, double value, double bound) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e <= %.0e", value, bound);
    report(name, value <= bound, buf);
  }
};

int cmd_check() {
  CheckRunner c;
  const GridSpec grid(16);
  const InitialData data =
      initial_data(grid, InitialKind::random_band, 1.0, 7);

  {
    const PhysicalVectorField phys = inverse_transform(data.u0);
    const SpectralVectorField back = transform(phys);
    c.check("fft round trip", norm(back - data.u0, 0) / norm(data.u0, 0),
            1e-12);
    c.check("reality of synthesized field", imag_residue(data.u0), 1e-12);
  }
  {
    const SpectralVectorField p = leray_project(data.u0);
    c.check("leray idempotency", norm(leray_project(p) - p, 0) / norm(p, 0),
            1e-12);
    c.check("solenoidality after projection", solenoidality_residual(p),
            1e-12);
  }
  c.check("divergence of curl", solenoidality_residual(curl(data.b0)), 1e-12);
  {
    const SpectralVectorField adv = advect(data.u0, data.b0);
    const double skew = std::abs(inner_product(adv, data.b0, 0));
    const double scale =
        norm(data.u0, 1) * norm(data.b0, 0) * norm(data.b0, 0);
    c.check("advection skew symmetry", scale == 0.0 ? 0.0 : skew / scale,
            1e-10);
  }
  {
    const InitialData tg =
        initial_data(grid, InitialKind::taylor_green, 1.0, 1);
    VVVState s(grid);
    s.u = tg.u0;
    s.w = tg.w0;
    s.b = tg.b0;
    const PhysParams params(0.005, 0.005, 0.1);
    StepperConfig scfg;
    scfg.dt = 1e-3;
    scfg.t_end = 0.25;
    auto traj = integrate(s, params, scfg);
    if (traj.aborted) {
      c.report("energy identity smoke run", false, "numerical abort");
    } else {
      annotate_energy(traj.records, params);
      double worst = 0.0;
      const double initial = *traj.records.front().energy_lhs;
      for (const auto& r : traj.records)
        worst = std::max(worst, std::abs(*r.energy_residual) / initial);
      c.check("energy identity residual", worst, 1e-6);
      c.check("solenoidality along run", solenoidality(traj.final_state),
              1e-10);
      c.check("reality along run", imag_residue(traj.final_state.u), 1e-12);
    }
  }
  return c.all_ok ? exit_ok : exit_failed_check;
}

int cmd_info(const std::string& path) {
  const Checkpoint chk = load_checkpoint(path);
  if (std::holds_alternative<VVVState>(chk.state)) {
    const VVVState& s = std::get<VVVState>(chk.state);
    std::cout << "system: vvv_mhd\n"
              << "n: " << s.u.grid().n << "\n"
              << "nu: " << chk.params.nu << "\n"
              << "eta: " << chk.params.eta << "\n"
              << "alpha: " << chk.params.alpha << "\n"
              << "t: " << s.t << "\n"
              << "|u|: " << norm(s.u, 0) << "\n"
              << "|w|: " << norm(s.w, 0) << "\n"
              << "|b|: " << norm(s.b, 0) << "\n";
  } else {
    const MHDState& s = std::get<MHDState>(chk.state);
    std::cout << "system: mhd\n"
              << "n: " << s.U.grid().n << "\n"
              << "nu: " << chk.params.nu << "\n"
              << "eta: " << chk.params.eta << "\n"
              << "alpha: " << chk.params.alpha << "\n"
              << "t: " << s.t << "\n"
              << "|U|: " << norm(s.U, 0) << "\n"
              << "|B|: " << norm(s.B, 0) << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    usage(args.empty() ? std::cerr : std::cout);
    return args.empty() ? exit_config_error : exit_ok;
  }
  try {
    const std::string& cmd = args[0];
    if (cmd == "run" || cmd == "sweep" || cmd == "info") {
      if (args.size() != 2) {
        std::cerr << "vvmhd " << cmd << " expects exactly one argument\n";
        return exit_config_error;
      }
      if (cmd == "run") return cmd_run(args[1]);
      if (cmd == "sweep") return cmd_sweep(args[1]);
      return cmd_info(args[1]);
    }
    if (cmd == "check") {
      if (args.size() != 1) {
        std::cerr << "vvmhd check takes no arguments\n";
        return exit_config_error;
      }
      return cmd_check();
    }
    std::cerr << "unknown subcommand '" << cmd << "'\n";
    usage(std::cerr);
    return exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config_error;
  }
}
