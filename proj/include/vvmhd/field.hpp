#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "vvmhd/grid.hpp"

namespace vvmhd {

/// Three-component vector field stored as Fourier coefficients, component-major.
/// Coefficients are mode amplitudes: f(x) = sum_k c(k) exp(i k.x) with the
/// lattice convention of GridSpec.
class SpectralVectorField {
 public:
  SpectralVectorField() = default;
  explicit SpectralVectorField(const GridSpec& grid)
      : grid_(grid), coeffs_(3 * grid.size()) {}

  const GridSpec& grid() const { return grid_; }
  long size() const { return grid_.size(); }

  std::complex<double>* component(int c) { return coeffs_.data() + c * size(); }
  const std::complex<double>* component(int c) const {
    return coeffs_.data() + c * size();
  }

  std::complex<double>& at(int c, int i, int j, int k) {
    return coeffs_[c * size() + grid_.index(i, j, k)];
  }
  const std::complex<double>& at(int c, int i, int j, int k) const {
    return coeffs_[c * size() + grid_.index(i, j, k)];
  }

  std::vector<std::complex<double>>& raw() { return coeffs_; }
  const std::vector<std::complex<double>>& raw() const { return coeffs_; }

  // stage arithmetic for the time stepper
  SpectralVectorField& operator+=(const SpectralVectorField& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  SpectralVectorField& operator-=(const SpectralVectorField& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  SpectralVectorField& operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend SpectralVectorField operator+(SpectralVectorField a,
                                       const SpectralVectorField& b) {
    a += b;
    return a;
  }
  friend SpectralVectorField operator-(SpectralVectorField a,
                                       const SpectralVectorField& b) {
    a -= b;
    return a;
  }
  friend SpectralVectorField operator*(double s, SpectralVectorField f) {
    f *= s;
    return f;
  }

 private:
  void check_same(const SpectralVectorField& o) const {
    if (!(grid_ == o.grid_))
      throw std::invalid_argument("SpectralVectorField: grid mismatch");
  }

  GridSpec grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Scalar companion (divergence output and similar).
class SpectralScalarField {
 public:
  SpectralScalarField() = default;
  explicit SpectralScalarField(const GridSpec& grid)
      : grid_(grid), coeffs_(grid.size()) {}

  const GridSpec& grid() const { return grid_; }
  std::complex<double>& at(int i, int j, int k) {
    return coeffs_[grid_.index(i, j, k)];
  }
  const std::complex<double>& at(int i, int j, int k) const {
    return coeffs_[grid_.index(i, j, k)];
  }
  std::vector<std::complex<double>>& raw() { return coeffs_; }
  const std::vector<std::complex<double>>& raw() const { return coeffs_; }

 private:
  GridSpec grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Collocation samples of a real vector field, component-major, x-major within
/// each component (sample (i,j,k) sits at ((i+...)/n) with k fastest).
struct PhysicalVectorField {
  GridSpec grid;
  std::vector<double> data;  // 3 * n^3

  PhysicalVectorField() = default;
  explicit PhysicalVectorField(const GridSpec& g)
      : grid(g), data(3 * g.size(), 0.0) {}

  double* component(int c) { return data.data() + c * grid.size(); }
  const double* component(int c) const { return data.data() + c * grid.size(); }

  double& at(int c, int i, int j, int k) {
    return data[c * grid.size() + grid.index(i, j, k)];
  }
};

}  // namespace vvmhd
