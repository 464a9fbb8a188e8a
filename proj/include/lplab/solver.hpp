#ifndef LPLAB_SOLVER_HPP
#define LPLAB_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "lplab/duhamel.hpp"
#include "lplab/norms.hpp"

namespace lplab {

// ---- Catalan certificates ---------------------------------------------------

using uint128 = unsigned __int128;

// c_k = (2k-2)! / (k! (k-1)!) via an exact multiplicative binomial; k in [1, 64]
uint128 catalan_closed(int k);
// c_1 = 1, c_k = sum_{l=1}^{k-1} c_l c_{k-l}
uint128 catalan_recursive(int k);
std::string uint128_to_string(uint128 v);

// partial sum S_K = sum_{k=2}^{K} c_k 4^-k (converges to 1/4)
double catalan_quarter_partial(int K);

// (1 - sqrt(1 - 4 b a)) / (2 b); requires 4 b a <= 1
double series_bound(double norm_b, double norm_a);

// ---- solver configuration and reports ----------------------------------------

struct SolverConfig {
    SpaceSpec base = SpaceSpec::lebesgue(3.0);
    int n_weight = 4;
    SymbolSpec symbol{};
    int quad_nodes = 24;
    double t_max = 1.0;
    int octaves = 8;
    int per_octave = 2;
    double tol = 1e-8;
    int max_iter = 40;
    bool force = false;      // proceed even when the smallness margin exceeds 1
    int probe_pairs = 32;
    std::uint64_t seed = 1;
    double measured_b = 0.0; // reuse a known ||B|| instead of probing
    // Galerkin cutoff of the iterated bilinear map (per-axis frequency);
    // 0 selects the grid's product ceiling N/4
    int cutoff_axis = 0;

    SpaceSpec f_space() const { return SpaceSpec::derived_cn(base, n_weight); }
    std::vector<double> time_grid() const {
        return trajectory_time_grid(t_max, octaves, per_octave);
    }
    int cutoff(const Grid& g) const {
        return cutoff_axis > 0 ? cutoff_axis : product_axis_ceiling(g);
    }
};

// sup over the sample times of || u(t) ||_{t,F}
double f_norm(const Trajectory& u, const SpaceSpec& cn_spec,
              const std::vector<double>& times);

// max over a seeded probe ensemble of ||B(u,v)||_F / (||u||_F ||v||_F)
double measure_bilinear_norm(const Grid& g, const SolverConfig& cfg);

struct SeriesTerm {
    int k = 0;
    Trajectory trajectory;
    double f_norm = 0.0;
    double catalan_bound = 0.0; // (1/||B||) k^-3/2 (4 ||B|| ||a||)^k
};

struct SolverReport {
    double norm_b = 0.0;
    double norm_su0 = 0.0;
    double margin = 0.0; // 4 ||B|| ||S u0||
    bool refused = false;
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;
    double final_residual = 0.0;
    double solution_norm = 0.0;
    double uniqueness_radius = 0.0;
    std::vector<double> term_norms;
    std::vector<double> catalan_bounds;
    double fitted_certificate_c = 0.0;
    std::vector<double> l_norms; // local theory: ||L|| at T, T/4, T/16
    double t_horizon = 0.0;
    double tail_fraction = 0.0;  // sup of high-band data norms over low bands
};

// ---- the fixed-point engine ---------------------------------------------------

// Explicit multilinear terms T_1 = S u0, T_k = sum_l B(T_l, T_{k-l}).
std::pair<std::vector<SeriesTerm>, SolverReport>
tk_series(const SpectralField& u0, int max_order, const SolverConfig& cfg);

enum class PicardInit { HeatFlow, Zero };

// u_{m+1} = S u0 + B(u_m, u_m) until the F-distance drops below tol.
std::pair<Trajectory, SolverReport> picard_solve(const SpectralField& u0,
                                                 const SolverConfig& cfg,
                                                 PicardInit init = PicardInit::HeatFlow);

// Local-in-time scheme on (0, T): solve v = B(Su0,Su0) + 2B(Su0,v) + B(v,v),
// return u = S u0 + v; the report carries measured ||L|| at T, T/4, T/16.
std::pair<Trajectory, SolverReport> local_solve(const SpectralField& u0, double T,
                                                const SolverConfig& cfg);

// Smoothing-rate verification: per multi-index, fit of
// log sup_x |D^alpha u(t, x)| against log t over dyadic times.
struct SmoothingRow {
    std::vector<int> order;
    double slope = 0.0;
    double expected = 0.0; // -(|alpha| + 1)/2
    double sup_ratio = 0.0; // max/min of sup over the fitted window
};
std::vector<SmoothingRow> smoothing_check(const Trajectory& u,
                                          const std::vector<std::vector<int>>& orders,
                                          const std::vector<double>& times);

} // namespace lplab

#endif
