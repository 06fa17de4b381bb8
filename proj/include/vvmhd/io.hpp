#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vvmhd/diagnostics.hpp"
#include "vvmhd/dynamics.hpp"
#include "vvmhd/params.hpp"

namespace vvmhd {

inline constexpr const char* diagnostics_csv_header =
    "t,u_l2,u_h1,w_l2,w_h1,b_l2,b_h1,"
    "energy_lhs,dissipation_integral,energy_residual,"
    "xi_l2,zeta_l2,q_l2,beta_l2,mu_l2,"
    "alpha_grad_u,alpha_grad_u_running_sup";

/// Writes records as CSV: the fixed header above, then one row per record
/// with %.17e values, absent diagnostics as empty cells, LF line endings.
/// Throws on an empty record list or an unwritable path.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticRecord>& records);

/// Reads a file written by write_diagnostics_csv. Values survive a
/// write/read cycle bitwise. Throws on a missing file, wrong header or a
/// malformed row.
std::vector<DiagnosticRecord> read_diagnostics_csv(const std::string& path);

struct Checkpoint {
  PhysParams params;
  std::variant<MHDState, VVVState> state;
};

/// Binary snapshot: magic "VVV1", then little-endian u32 n, f64 nu, eta,
/// alpha, t, u8 system tag (0 = mhd, 1 = vvv_mhd), then each field's modes in
/// fixed lattice order (component-major, k fastest) as f64 re, f64 im pairs.
/// Fields are u, w, b for vvv_mhd and U, B for mhd.
void save_checkpoint(const std::string& path, const MHDState& s,
                     const PhysParams& params);
void save_checkpoint(const std::string& path, const VVVState& s,
                     const PhysParams& params);

/// Restores a checkpoint, validating the magic, completeness and physical
/// invariants (parameter ranges, Hermitian symmetry, solenoidality). Each
/// failure mode throws its own distinguishable error message.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace vvmhd
