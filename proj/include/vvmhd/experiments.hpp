#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vvmhd/timestepper.hpp"

namespace vvmhd {

enum class InitialKind { taylor_green, abc, random_band };

/// Matched initial data for both systems: u0 solenoidal, mean-zero and
/// band-limited (modes <= n/4, standing in for H3 regularity at desk scale),
/// w0 = curl(u0) exactly, b0 an independently seeded solenoidal random field.
/// The MHD reference starts from the same fields (U0 = u0, B0 = b0).
struct InitialData {
  SpectralVectorField u0, w0, b0;
};

InitialData initial_data(const GridSpec& grid, InitialKind kind,
                         double amplitude, std::uint64_t seed);

/// An alpha-sweep at fixed grid, dt, viscosities and initial data.  alphas are
/// strictly decreasing; an alpha = 0 member is allowed as the degeneration
/// check (it reproduces the MHD reference) but rate fits use only alpha > 0.
struct SweepPlan {
  std::vector<double> alphas;
  int n = 32;
  double nu = 0.0, eta = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  int record_every = 1;
  InitialKind kind = InitialKind::taylor_green;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  std::string output_prefix = "sweep_";  // consumed by the CLI layer

  void validate() const;
};

/// Least-squares line on (log alpha, log value).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  int excluded = 0;  // nonpositive values dropped as below the noise floor
};

RateFit rate_fit(const std::vector<double>& alphas,
                 const std::vector<double>& values);

struct SweepMember {
  double alpha = 0.0;
  std::vector<DiagnosticRecord> records;
  GapRecord final_gap;
  double blowup_sup = 0.0;
  bool aborted = false;
  double abort_time = 0.0;
  double spectral_tail_fraction = 0.0;  // resolution guard, reported only
};

struct SweepFits {
  bool fitted = false;  // needs >= 3 members with alpha > 0
  RateFit zeta;         // |u - U|(T)
  RateFit q;            // |w - Omega|(T)
  RateFit beta;         // |b - B|(T)
  RateFit mu;           // |j - J|(T)
  RateFit xi;           // |omega - w|(T)
  RateFit aggregate;    // squared-sum aggregate of the convergence bound
  RateFit blowup_sup;   // sup_t alpha |grad u|
};

struct SweepReport {
  SweepPlan plan;
  std::vector<DiagnosticRecord> mhd_records;
  std::vector<SweepMember> members;
  SweepFits fits;
  bool failed = false;  // some member aborted
  // Blow-up criterion orderings on the finite alpha grid (trend data only;
  // finite-alpha runs cannot certify a limit).
  double sup_then_smallest_alpha = 0.0;  // sup_t of the smallest-alpha member
  std::vector<std::string> monotonicity_violations;
};

/// One MHD reference trajectory plus one lockstep VVV-MHD run per alpha;
/// gap records, rate fits and blow-up sups per the convergence theorems.
SweepReport alpha_sweep(const SweepPlan& plan);

/// Envelope fit for the vorticity-gap bound K alpha sqrt(exp(C t) - 1):
/// C fitted by profile least squares over all members and record times,
/// K taken as the tightest constant covering every point.  `member_spread`
/// is the ratio of per-member tight constants (1 = perfectly uniform in
/// alpha, the regime the bound describes).
struct EnvelopeFit {
  double K = 0.0;
  double C = 0.0;
  double member_spread = 0.0;
};

EnvelopeFit vorticity_envelope_fit(const SweepReport& report);

}  // namespace vvmhd
