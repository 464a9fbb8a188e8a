#ifndef LPLAB_COUNTEREXAMPLE_HPP
#define LPLAB_COUNTEREXAMPLE_HPP

#include <cstdint>
#include <vector>

#include "lplab/spaces.hpp"
#include "lplab/spectral_core.hpp"

namespace lplab {

// ---- sharpness pair: f = 2^k e^{-i 2^k x_1} phi, g its conjugate twin --------

// phi = 1 + (1/2) cos(x_2) (+ (1/2) cos(x_3) in 3-d): spectrum in the unit
// ball, orthogonal to the modulation axis so the pair's Besov norm is
// k-independent to rounding.
struct Prop19Pair {
    int k = 0;
    SpectralField phi;
    SpectralField f;
    SpectralField g;
};

Prop19Pair make_prop19_pair(const Grid& grid, int k);

// || Delta_0 (f g) ||_inf; the phases cancel so fg = 4^k phi^2 exactly.
double prop19_ratio(const Grid& grid, int k);

// ---- the delta_j sequence of the lacunary construction -----------------------

struct DeltaSequence {
    EtaSequence eta;              // input, window starting at n = 4
    std::vector<double> sigma;    // sigma_n = inf_{k >= n} 2^{3k} eta_k^2 (windowed)
    std::vector<double> delta_sq; // delta_4^2 = 2^-12 sigma_4; 2^-3j (sigma_j - sigma_{j-1})
    int j_lo = 4;

    double delta2(int j) const { return delta_sq[static_cast<std::size_t>(j - j_lo)]; }
    int j_hi() const { return j_lo + static_cast<int>(delta_sq.size()) - 1; }
    // running sums of delta_j^2 (the divergent series of the construction)
    std::vector<double> partial_sums() const;
    // slack of sum_{4<=j<=n} 2^{3(j-n)} delta_j^2 <= eta_n^2 (telescopes to
    // eta_n^2 - 2^-3n sigma_n, nonnegative by construction)
    double slack(int n) const;
    // sum_{n} 2^{-3n} sigma_n diverges <=> the construction witnesses failure
    bool divergence_hypothesis_holds() const;
};

DeltaSequence delta_sequence(const EtaSequence& eta);

// ---- orthonormalized bump on a coarse site lattice ----------------------------

// m0 with annular spectrum whose integer translates on the M-site lattice
// are orthonormal after heat smoothing: the discrete periodization
// sum_{n == zeta (mod M)} |m_hat(n)|^2 is constant in zeta. The smoothing
// time is tied to the annulus scale so the weights e^{-2 s0 |xi|^2} stay
// of order one on the shell.
struct OrthonormalBump {
    Grid grid;
    int sites_per_axis = 0; // M
    double smoothing_time = 1.0;
    SpectralField m0;
    SpectralField m; // e^{s0 Delta} m0

    double site_spacing() const { return grid.box_edge() / sites_per_axis; }
    // max deviation of V M^d sum_{n==zeta} |m_hat|^2 from 1
    double periodization_error() const;
    // <m(.-l), m(.-l')> for site offsets (integer site coordinates)
    cplx site_inner_product(const std::vector<int>& l, const std::vector<int>& lp) const;
};

OrthonormalBump make_orthonormal_bump(const Grid& grid, int sites_per_axis);

// ---- lacunary field a(y) = sum_l eps_l c_l m0(y - l) --------------------------

struct LacunaryShell {
    int j = 0;                              // shell index (see delta sequence)
    std::vector<std::vector<int>> sites;    // site-lattice coordinates
    double coefficient = 0.0;               // c_l = delta_j on the shell
};

// shells along axis 0 at site distance 2^j * apex from the origin with
// half-width alpha 2^j / sqrt(2) in every coordinate
std::vector<LacunaryShell> lacunary_shells(const OrthonormalBump& bump, int apex_sites,
                                           double alpha_sites, const DeltaSequence& dseq,
                                           int shell_count);

SpectralField lacunary_field(const OrthonormalBump& bump,
                             const std::vector<LacunaryShell>& shells,
                             const std::vector<int>& signs);

// max over sampled (y0, k) of avg_{B(y0, 2^k a)} |a|^2 / eta^2_{k+4}
// (radii in site-lattice units, centers on the site lattice)
double lacunary_ball_criterion(const OrthonormalBump& bump, const SpectralField& a,
                               const EtaSequence& eta, int k_lo, int k_hi);

// ---- Duhamel kernel lower bound ------------------------------------------------

// theta(x) = phi(x_1) psi'(x') with phi the unit-mass Gaussian and psi' a
// Gaussian profile; I(x1, l) = | int_0^1 theta(x - tau l) tau^2 dtau |.
struct KernelProbe {
    double x1 = 0.0;
    std::vector<double> l; // lattice point (l1, l')
    double integral = 0.0;
    double ratio = 0.0;     // integral * l1^3 / x1^2
    int sign = 0;           // sgn of the integral before taking | . |
    bool in_cone = false;   // l1 >= 4 x1 and d(x, [0, l]) <= alpha
};

KernelProbe kernel_lower_bound(double x1, const std::vector<double>& l,
                               double alpha = 1.0);

} // namespace lplab

#endif
