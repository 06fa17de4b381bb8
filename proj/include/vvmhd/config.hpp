#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "vvmhd/dynamics.hpp"
#include "vvmhd/experiments.hpp"

namespace vvmhd {

/// A single integration job parsed from a key=value config file.
struct RunConfig {
  SystemKind system = SystemKind::vvv_mhd;
  int n = 0;
  double nu = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  int record_every = 1;
  InitialKind initial_kind = InitialKind::taylor_green;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  std::string output = "diagnostics.csv";
  std::string checkpoint_out;
  std::string restart_from;

  void validate() const;
};

using ParsedConfig = std::variant<RunConfig, SweepPlan>;

/// Parses a flat key=value config. Lines starting with '#' (or the tail of a
/// line after '#') are comments. The presence of `alphas` selects a sweep;
/// otherwise the text must describe a run. Unknown keys, duplicate keys,
/// malformed values and out-of-range values all throw std::runtime_error
/// with the offending line number where one exists.
ParsedConfig parse_config(const std::string& text);

std::string print_config(const RunConfig& cfg);
std::string print_config(const SweepPlan& plan);

std::string to_string(SystemKind kind);
std::string to_string(InitialKind kind);

}  // namespace vvmhd
