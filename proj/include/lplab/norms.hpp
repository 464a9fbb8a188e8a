#ifndef LPLAB_NORMS_HPP
#define LPLAB_NORMS_HPP

#include "lplab/spaces.hpp"
#include "lplab/spectral_core.hpp"

namespace lplab {

// Evaluate the discrete norm of f in the given space.
// Homogeneous specs expect mean-zero input; M(eta) returns +inf when the
// sequence vanishes against a nonzero average ("not in M(eta)").
double norm(const SpectralField& f, const SpaceSpec& spec);

// ||f||_{t,F} = sup_j (1 + 2^j sqrt(t))^N ||Delta_j f||_base for DerivedCN;
// DerivedBN uses the split index j(t) with 2^-j(t) <= sqrt(t) < 2^-j(t)+1.
double time_weighted_norm(const SpectralField& f, double t, const SpaceSpec& spec);

// Smallest C with  avg_{B(x0, 2^-j')} |Delta_j f|^2 <= C^2 eta_{j-j'}^2 4^j
// over the sampled dyadic family of centers and radii.
double m_eta_norm(const SpectralField& f, const EtaSequence& eta);

// Decreasing rearrangement of |f| over grid cells.
struct Rearrangement {
    std::vector<double> values; // sorted descending
    double cell_measure = 0.0;
};
Rearrangement rearrangement(const SpectralField& f);

// Field of averages over balls B(x, R) of the lattice field with the given
// coefficients (exact for band-limited data): one Fourier multiplier pass.
std::vector<cplx> ball_average_field(const Grid& g, const std::vector<cplx>& coef,
                                     double radius);

// Morrey building block sup_{x0, R} R^(3/p) (avg_{B(x0,R)} |f|^q)^(1/q)
// over dyadic radii and strided centers; shared by Morrey and BesovOverMorrey.
double morrey_norm(const SpectralField& f, double p, double q);

// Brute-force Morrey oracle: cell-count ball averages over every grid
// center and a fine radius sweep (test use; O(N^2d)).
double morrey_norm_exhaustive(const SpectralField& f, double p, double q);

} // namespace lplab

#endif
