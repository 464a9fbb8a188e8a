#ifndef LPLAB_SPECTRAL_CORE_HPP
#define LPLAB_SPECTRAL_CORE_HPP

#include <vector>

#include "lplab/cutoff.hpp"
#include "lplab/field.hpp"

namespace lplab {

// ---- dyadic band operators ------------------------------------------------

// Delta_j f: multiply coef(xi) by psi0(4^-j |xi|^2). Support lands in the
// annulus 2^(j-1) <= |xi| <= 2^(j+1).
SpectralField delta_j(const SpectralField& f, int j);
// S_j f: multiply by phi0(4^-j |xi|^2) (low-pass below 2^j).
SpectralField s_j(const SpectralField& f, int j);
// tilde Delta_j = Delta_{j-2} + ... + Delta_{j+2}; satisfies
// tilde_delta_j(delta_j(f)) == delta_j(f) exactly in spectral space.
SpectralField tilde_delta_j(const SpectralField& f, int j);

// sum of delta_j over the grid's full valid window (bands outside are empty)
SpectralField reconstruct_from_bands(const SpectralField& f);

// Window-unchecked variants for composite sums, where out-of-window bands
// act through their multipliers as written (Delta_j trivial, S_j the
// zero-mode projector below the window). Direct callers use the checked ops.
SpectralField delta_j_nocheck(const SpectralField& f, int j);
SpectralField s_j_nocheck(const SpectralField& f, int j);
SpectralField tilde_delta_j_nocheck(const SpectralField& f, int j);

// ---- semigroup, symbols, rescaling ----------------------------------------

// e^{t Laplace} f: coef(xi) *= exp(-t |xi|^2); t >= 0.
SpectralField heat(const SpectralField& f, double t);

enum class SymbolKind { Scalar1, ScalarCone };

// Homogeneous degree-1 Fourier symbol P(xi), smooth away from 0, P(0) = 0:
//   Scalar1:    P(xi) = i xi_1
//   ScalarCone: P(xi) = i |xi| exp(xi_d / |xi|)  (nonvanishing, cone-adapted)
struct SymbolSpec {
    SymbolKind kind = SymbolKind::Scalar1;
    cplx eval(const Grid& g, std::size_t flat) const;
};

SpectralField apply_symbol(const SpectralField& f, const SymbolSpec& sym);

// Leray-projected divergence symbol acting on a symmetric tensor product;
// vector mode, provided alongside the scalar model.
// Input: components of u and v (dim fields each). Output: dim fields of
//   -(1/2) P nabla . (u (x) v + v (x) u)
std::vector<SpectralField> leray_bilinear_symbol(const std::vector<SpectralField>& uv_sym);

// 2^m f(2^m x) realized exactly as the spectral index shift xi -> 2^m xi
// with amplitude factor 2^m. Requires headroom: shifted modes must stay on
// the lattice (m > 0), or all occupied modes divisible by 2^|m| (m < 0).
SpectralField dyadic_rescale(const SpectralField& f, int m);

// f(x - a) via phase multiplication (exact permutation for lattice a).
SpectralField translate(const SpectralField& f, const std::vector<double>& a);

// ---- pointwise products ----------------------------------------------------

// Largest per-axis integer frequency such that products of two fields
// bounded by it are exactly representable on the same grid.
inline int product_axis_ceiling(const Grid& g) { return g.n / 4; }

// Pointwise product computed on a 2x zero-padded grid (exact for inputs
// within the axis ceiling), truncated back to the original lattice.
SpectralField product_dealiased(const SpectralField& f, const SpectralField& g);

// Galerkin projection onto per-axis frequencies |k_a| <= ceiling.
SpectralField truncate_axis(const SpectralField& f, int ceiling);

// |f|^2 as a field on the 2x padded grid; exact for any representable f
// since the squared modulus has at most twice the per-axis extent.
SpectralField modulus_squared(const SpectralField& f);

// complex conjugate field: coef'(xi) = conj(coef(-xi))
SpectralField conjugate(const SpectralField& f);

// ---- basic functionals ------------------------------------------------------

double l2_norm(const SpectralField& f);       // via Parseval, box measure dx
double sup_norm(const SpectralField& f);      // max |f| over grid points
double lp_norm(const SpectralField& f, double p); // quadrature with measure dx

} // namespace lplab

#endif
