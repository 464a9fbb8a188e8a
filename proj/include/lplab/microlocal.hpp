#ifndef LPLAB_MICROLOCAL_HPP
#define LPLAB_MICROLOCAL_HPP

#include <vector>

#include "lplab/duhamel.hpp"
#include "lplab/spaces.hpp"
#include "lplab/spectral_core.hpp"

namespace lplab {

// Exact periodic Euclidean distance to the grid trace of S (squared-distance
// transform, separable parabola envelopes per axis).
std::vector<double> distance_field(const Grid& g, const PointSet& S);

// Sampled density function eps_S(delta) on a dyadic delta grid.
struct DensityProfile {
    std::vector<double> delta; // descending powers of two in (0, 1]
    std::vector<double> eps;   // matching values, in [0, 1]
    bool analytic = false;

    double at(double d) const; // nearest sampled value at or above d
};

DensityProfile density_function(const Grid& g, const PointSet& S, int delta_levels,
                                int center_stride);

// Analytic oracles for validation.
DensityProfile analytic_density_point(int dim, int delta_levels);
DensityProfile analytic_density_plane(int delta_levels); // 3-d slab/ball ratio
DensityProfile analytic_density_constant(double value, int delta_levels);
DensityProfile analytic_density_log(int delta_levels); // eps = 1/ln(e/delta)

// Dini condition int_0^1 eps(delta) ddelta/delta, dyadic-sum estimate with a
// verdict from the tail trend.
struct DiniReport {
    double dyadic_sum = 0.0;
    double tail_ratio = 0.0; // geometric mean of eps(2^-m-1)/eps(2^-m) on the tail
    bool converges = false;
};
DiniReport dini_check(const DensityProfile& profile);

// eta_n = sum_{m=0..n} 2^(-2 s' (n-m)) eps_S(2^-m)
EtaSequence eta_from_density(double sprime, const DensityProfile& profile, int n_hi);

// sup_x (k_j * (1 + 2^j d_S)^-s')(x) (1 + 2^j d_S(x))^s' with
// k_j(x) = 2^(dj) (1 + 2^j |x|)^-N; the Lemma-35 stability constant.
double convolution_stability_constant(const Grid& g, const PointSet& S, double sprime,
                                      int n_exp, int j);

// Pointwise decay verification of a solved trajectory against the
// (sqrt(t) + d_S(x))^-1 envelope (case-adjusted in s'), plus the bilinear
// improvement of the Duhamel part.
struct DecayReport {
    std::vector<double> times;
    std::vector<double> envelope_constant;  // per time, case-adjusted
    double constant_spread = 0.0;           // max/min over times
    double slope_u = 0.0;                   // spatial decay exponent fit, full u
    double slope_w = 0.0;                   // same for w = u - S u0
    bool fit_ok = false;
};

DecayReport decay_check(const Trajectory& u, const SpectralField& u0, const PointSet& S,
                        double sprime, const std::vector<double>& times, int fit_band);

} // namespace lplab

#endif
