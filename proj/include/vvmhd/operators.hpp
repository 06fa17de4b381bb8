#pragma once

#include "vvmhd/fft.hpp"
#include "vvmhd/field.hpp"

namespace vvmhd {

// Spectral operators on the periodic unit torus.  All functions are pure and
// act coefficient-wise (or pseudo-spectrally for products); none of them touch
// global state, so results are deterministic for identical inputs.

/// ik x v, computed mode by mode.  Output is solenoidal by construction.
SpectralVectorField curl(const SpectralVectorField& v);

/// ik . v, mode by mode.
SpectralScalarField divergence(const SpectralVectorField& v);

/// -|k|^2 v.
SpectralVectorField laplacian(const SpectralVectorField& v);

/// Leray projection onto divergence-free fields:
/// v(k) -> v(k) - k (k.v(k)) / |k|^2, with the k = 0 mode pinned to zero.
SpectralVectorField leray_project(const SpectralVectorField& v);

/// Invert the Voigt operator: v(k) -> v(k) / (1 + alpha^2 |k|^2).
/// alpha = 0 is the identity.  Throws for alpha < 0.
SpectralVectorField voigt_invert(const SpectralVectorField& v, double alpha);

/// Two-thirds-rule mask: zero every mode with any |signed index| exceeding
/// dealias_fraction * n/2.  Idempotent.
SpectralVectorField dealias(const SpectralVectorField& v);

/// Pseudo-spectral advection (u . grad) v: spectral derivatives, pointwise
/// products on the collocation grid, transform back, dealias, Hermitian
/// enforcement.  Inputs are dealiased on entry.
SpectralVectorField advect(const SpectralVectorField& u,
                           const SpectralVectorField& v);

/// Pointwise cross product a x b on the collocation grid, transformed back and
/// dealiased (inputs dealiased on entry).
SpectralVectorField cross(const SpectralVectorField& a,
                          const SpectralVectorField& b);

/// Projected advective bilinear form B(u, v) = P dealias((u . grad) v).
SpectralVectorField bilinear_b(const SpectralVectorField& u,
                               const SpectralVectorField& v);

/// Parseval norm of order 0, 1 or 2: sqrt(sum over modes and components of
/// |k|^(2 order) |v(k)|^2).  Summation runs in fixed lattice order.
double norm(const SpectralVectorField& v, int order);

/// Parseval inner product sum_k |k|^(2 order) Re(a(k) . conj(b(k))),
/// same fixed traversal as norm().
double inner_product(const SpectralVectorField& a, const SpectralVectorField& b,
                     int order = 0);

/// max_k |k . v(k)| / max_k |k| |v(k)|; 0 for fields with no gradient energy.
double solenoidality_residual(const SpectralVectorField& v);

}  // namespace vvmhd
