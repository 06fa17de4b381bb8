#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace vvmhd {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Uniform periodic grid on the unit torus [0,1]^3, n points per direction.
///
/// Storage index i in [0, n) maps to the signed mode index in
/// {-n/2+1, ..., n/2}; the wavenumber along one axis is 2*pi times the signed
/// index.  dealias_fraction expresses the two-thirds-rule cutoff as a fraction
/// of the Nyquist index n/2: modes with any |index| > dealias_fraction * n/2
/// are zeroed by the dealias mask.
struct GridSpec {
  int n = 0;
  double dealias_fraction = 2.0 / 3.0;

  GridSpec() = default;

  explicit GridSpec(int n_, double dealias_fraction_ = 2.0 / 3.0)
      : n(n_), dealias_fraction(dealias_fraction_) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("GridSpec: n must be even and >= 8");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
      throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0, 1]");
  }

  long size() const { return static_cast<long>(n) * n * n; }

  long index(int i, int j, int k) const {
    return (static_cast<long>(i) * n + j) * n + k;
  }

  int signed_index(int i) const { return i <= n / 2 ? i : i - n; }

  double wavenumber(int i) const { return two_pi * signed_index(i); }

  /// True if storage index i survives the dealias mask along one axis.
  bool axis_in_band(int i) const {
    return std::abs(signed_index(i)) <= dealias_fraction * (0.5 * n);
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n == b.n && a.dealias_fraction == b.dealias_fraction;
  }
};

}  // namespace vvmhd
