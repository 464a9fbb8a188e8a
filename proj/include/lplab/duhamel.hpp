#ifndef LPLAB_DUHAMEL_HPP
#define LPLAB_DUHAMEL_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "lplab/spaces.hpp"
#include "lplab/spectral_core.hpp"

namespace lplab {

// Time-indexed family t -> SpectralField on (0, t_max]. Either an analytic
// rule (heat flows, single modes) or samples on a graded time grid with
// linear interpolation in sqrt(t); sampled trajectories vanish at t = 0+.
class Trajectory {
  public:
    Trajectory() = default;

    static Trajectory analytic(Grid g, double t_max,
                               std::function<SpectralField(double)> rule);
    static Trajectory heat_flow(SpectralField u0, double t_max);
    static Trajectory zero(Grid g, double t_max);
    static Trajectory sampled(std::vector<double> times, std::vector<SpectralField> fields);
    // pointwise sum of two trajectories (e.g. an analytic heat flow plus a
    // sampled Duhamel correction, which is the shape of every solver iterate)
    static Trajectory superpose(Trajectory base, Trajectory correction);

    SpectralField at(double t) const; // cached evaluation
    double t_max() const { return impl_->t_max; }
    const Grid& grid() const { return impl_->grid; }
    bool is_sampled() const { return impl_->rule == nullptr; }
    const std::vector<double>& sample_times() const { return impl_->times; }

  private:
    struct Impl {
        Grid grid;
        double t_max = 0.0;
        std::function<SpectralField(double)> rule; // null for sampled
        std::vector<double> times;                 // increasing, sampled only
        std::vector<SpectralField> fields;
        mutable std::map<double, SpectralField> cache;
        mutable std::mutex mu;
    };
    std::shared_ptr<Impl> impl_;
};

// Geometric sample grid for trajectories: `octaves` dyadic levels below
// t_max with `per_octave` points each, uniform in sqrt(t).
std::vector<double> trajectory_time_grid(double t_max, int octaves, int per_octave);

// Quadrature for int_0^t f(tau) dtau with square-root grading at both
// endpoints: tau = t s^2 on (0, t/2] and tau = t (1 - r^2) on [t/2, t),
// Gauss-Legendre with half the nodes on each cluster.
struct TimeQuadrature {
    double t = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static TimeQuadrature graded(double t, int node_count);
};

// Gauss-Legendre rule on [0, 1] (nodes ascending).
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

// epsilon(s) = sum_{n >= -4} eta_n min(1, 4^n s)
struct EpsilonFunction {
    EtaSequence eta;
    double eval(double s) const;
};

// B(u,v)(t) = int_0^t e^{(t-tau) Laplace} P(D) { u(tau) v(tau) } dtau
SpectralField bilinear_B(const Trajectory& u, const Trajectory& v, double t,
                         const TimeQuadrature& quad, const SymbolSpec& sym);

// convenience: graded quadrature with the given node count
SpectralField bilinear_B(const Trajectory& u, const Trajectory& v, double t,
                         int quad_nodes, const SymbolSpec& sym);

// Per-band diagnostics of the bilinear estimate: the rectangle term R_j,
// the square term C_j, and the comparison of ||Delta_j B(u,v)(t)||_E with
// the envelopes min(1, 4^j t) (1 + 2^j sqrt(t))^-N and
// epsilon(4^j t) (1 + 2^j sqrt(t))^-N.
struct BandDiagnostics {
    int j = 0;
    double t = 0.0;
    double r_term = 0.0;
    double c_term = 0.0;
    double band_b_norm = 0.0;
    double envelope25 = 0.0;
    double envelope28 = 0.0;
    double ratio25 = 0.0;
    double ratio28 = 0.0;
};

BandDiagnostics band_diagnostics(const Trajectory& u, const Trajectory& v, double t,
                                 int j, const SpaceSpec& spec, int n_weight,
                                 const EpsilonFunction& eps, int quad_nodes,
                                 const SymbolSpec& sym);

} // namespace lplab

#endif
