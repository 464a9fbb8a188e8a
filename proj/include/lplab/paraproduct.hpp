#ifndef LPLAB_PARAPRODUCT_HPP
#define LPLAB_PARAPRODUCT_HPP

#include <cstdint>
#include <optional>

#include "lplab/rng.hpp"
#include "lplab/spaces.hpp"
#include "lplab/spectral_core.hpp"

namespace lplab {

// Bony-style splitting of Delta_j(fg) into low-high, high-low and
// spectral-overlap (diagonal) interactions. The three parts sum to
// Delta_j(fg) exactly: each part collects its full visible k-range, with
// Delta_j f S_{j-2} g the representative low-high term.
struct ProductSplit {
    int j = 0;
    SpectralField lowhigh;
    SpectralField highlow;
    SpectralField diagonal;

    SpectralField sum() const { return lowhigh + highlow + diagonal; }
};

ProductSplit bony_split(const SpectralField& f, const SpectralField& g, int j);

// Random field spectrally supported in the annulus 2^(k-1) <= |xi| <= 2^(k+1),
// constant modulus across the shell, independent uniform phases.
SpectralField random_band_field(const Grid& g, int k, Rng& rng);
// ... normalized to unit norm in the given space
SpectralField random_band_field_normalized(const Grid& g, int k, const SpaceSpec& spec,
                                           Rng& rng);

// largest band k whose annulus respects the product axis ceiling
int top_product_band(const Grid& g);

// Empirical compatibility profile: per offset n = k - j, statistics of
//   ||Delta_j (fg)||_E / (4^k 2^-j ||f||_E ||g||_E)
// over random f in Gamma_k, g in Gamma_l, |k - l| <= 2.
struct EtaMeasurement {
    struct Row {
        int n = 0;
        int trials = 0;
        double ratio_max = 0.0;
        double ratio_median = 0.0;
        std::optional<double> theory_rate_log2;
    };
    std::vector<Row> rows;
    std::uint64_t seed = 0;

    // least-squares slope of log2(ratio_max) against n
    double fitted_slope_log2() const;
};

EtaMeasurement eta_estimate(const Grid& g, const SpaceSpec& spec, int n_lo, int n_hi,
                            int trials, std::uint64_t seed);

// Spectral-separation constant of ||fg||_E <= C 2^min(k,l) ||f|| ||g||:
// max ratio over trials with l <= k - 3 (gap 0 draws gaps in [3, 6]).
double separation_constant(const Grid& g, const SpaceSpec& spec, int trials,
                           std::uint64_t seed, int gap = 0);

} // namespace lplab

#endif
