#pragma once

#include "vvmhd/field.hpp"

namespace vvmhd {

/// Collocation samples -> Fourier coefficients (normalized by 1/n^3), with
/// Hermitian symmetry enforced on the output so real input is represented
/// exactly.  Throws on non-finite samples.
SpectralVectorField transform(const PhysicalVectorField& f);

/// Fourier coefficients -> collocation samples (real parts; imaginary residue
/// of a Hermitian field is roundoff-level).
PhysicalVectorField inverse_transform(const SpectralVectorField& f);

/// max |imag| / max |re| over the unnormalized backward transform of f.
/// Diagnostic for the reality invariant; 0 for zero fields.
double imag_residue(const SpectralVectorField& f);

/// Average conjugate mode pairs in place so that c(-k) == conj(c(k)) exactly
/// (self-conjugate lattice points become real).
void enforce_hermitian(SpectralVectorField& f);

/// Pin the k = 0 coefficient of every component to exactly zero.
void zero_mean(SpectralVectorField& f);

namespace fft_detail {
// Raw unnormalized c2c DFTs on one n^3 component, used by the wrappers above
// and by the pseudo-spectral products.  Plans are cached per n.
void forward_c2c(const GridSpec& g, const std::complex<double>* in,
                 std::complex<double>* out);
void backward_c2c(const GridSpec& g, const std::complex<double>* in,
                  std::complex<double>* out);
}  // namespace fft_detail

}  // namespace vvmhd
