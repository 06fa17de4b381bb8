#pragma once

#include <cmath>
#include <stdexcept>

namespace vvmhd {

/// Physical parameters: kinematic viscosity nu, magnetic diffusivity eta, and
/// the Voigt regularization length alpha.  Both diffusivities must be strictly
/// positive (the evolution systems here are the diffusive ones); alpha = 0 is
/// the unregularized limit.
struct PhysParams {
  double nu = 0.0;
  double eta = 0.0;
  double alpha = 0.0;

  PhysParams() = default;
  PhysParams(double nu_, double eta_, double alpha_)
      : nu(nu_), eta(eta_), alpha(alpha_) {
    if (!(nu > 0.0) || !std::isfinite(nu))
      throw std::invalid_argument("PhysParams: nu must be > 0");
    if (!(eta > 0.0) || !std::isfinite(eta))
      throw std::invalid_argument("PhysParams: eta must be > 0");
    if (alpha < 0.0 || !std::isfinite(alpha))
      throw std::invalid_argument("PhysParams: alpha must be >= 0");
  }
};

}  // namespace vvmhd
