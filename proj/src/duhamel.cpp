#include "lplab/duhamel.hpp"

#include <algorithm>
#include <cmath>

#include "lplab/norms.hpp"

namespace lplab {

Trajectory Trajectory::analytic(Grid g, double t_max,
                                std::function<SpectralField(double)> rule) {
    Trajectory t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->grid = g;
    t.impl_->t_max = t_max;
    t.impl_->rule = std::move(rule);
    return t;
}

Trajectory Trajectory::heat_flow(SpectralField u0, double t_max) {
    Grid g = u0.grid();
    auto data = std::make_shared<SpectralField>(std::move(u0));
    return analytic(g, t_max, [data](double t) { return heat(*data, t); });
}

Trajectory Trajectory::zero(Grid g, double t_max) {
    return analytic(g, t_max, [g](double) { return SpectralField(g, true); });
}

Trajectory Trajectory::superpose(Trajectory base, Trajectory correction) {
    base.grid().require_same(correction.grid(), "Trajectory::superpose");
    Grid g = base.grid();
    double tmax = std::min(base.t_max(), correction.t_max());
    return analytic(g, tmax,
                    [base, correction](double t) { return base.at(t) + correction.at(t); });
}

Trajectory Trajectory::sampled(std::vector<double> times, std::vector<SpectralField> fields) {
    if (times.empty() || times.size() != fields.size())
        throw std::invalid_argument("Trajectory::sampled: need matching nonempty samples");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("Trajectory::sampled: times must increase");
    Trajectory t;
    t.impl_ = std::make_shared<Impl>();
    t.impl_->grid = fields.front().grid();
    t.impl_->t_max = times.back();
    t.impl_->times = std::move(times);
    t.impl_->fields = std::move(fields);
    return t;
}

SpectralField Trajectory::at(double t) const {
    if (!impl_) throw std::logic_error("Trajectory: empty");
    if (!(t > 0.0) || t > impl_->t_max * (1.0 + 1e-12))
        throw std::out_of_range("Trajectory: time outside (0, t_max]");
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->cache.find(t);
        if (it != impl_->cache.end()) return it->second;
    }
    SpectralField value;
    if (impl_->rule) {
        value = impl_->rule(t);
    } else {
        // linear interpolation in sqrt(t); implicit zero sample at t = 0
        const auto& ts = impl_->times;
        auto it = std::lower_bound(ts.begin(), ts.end(), t);
        if (it == ts.end()) {
            value = impl_->fields.back();
        } else {
            std::size_t hi = static_cast<std::size_t>(it - ts.begin());
            double s = std::sqrt(t), shi = std::sqrt(ts[hi]);
            if (std::abs(s - shi) < 1e-14 * shi) {
                value = impl_->fields[hi];
            } else if (hi == 0) {
                value = (cplx{s / shi, 0.0}) * impl_->fields[0];
            } else {
                double slo = std::sqrt(ts[hi - 1]);
                double w = (s - slo) / (shi - slo);
                value = (cplx{1.0 - w, 0.0}) * impl_->fields[hi - 1] +
                        (cplx{w, 0.0}) * impl_->fields[hi];
            }
        }
    }
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto [it2, inserted] = impl_->cache.emplace(t, std::move(value));
    (void)inserted;
    return it2->second;
}

std::vector<double> trajectory_time_grid(double t_max, int octaves, int per_octave) {
    if (!(t_max > 0.0) || octaves < 1 || per_octave < 1)
        throw std::invalid_argument("trajectory_time_grid: bad parameters");
    std::vector<double> out;
    const int steps = octaves * per_octave;
    for (int i = steps; i >= 0; --i) {
        double s = std::sqrt(t_max) * std::exp2(-static_cast<double>(i) / (2.0 * per_octave));
        out.push_back(s * s);
    }
    return out;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_01: need n >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5)); // Newton from Chebyshev guess
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        double w = 1.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

TimeQuadrature TimeQuadrature::graded(double t, int node_count) {
    if (!(t > 0.0)) throw std::invalid_argument("TimeQuadrature: t must be > 0");
    if (node_count < 2) throw std::invalid_argument("TimeQuadrature: need >= 2 nodes");
    const int half = node_count / 2;
    std::vector<double> gl_x, gl_w;
    gauss_legendre_01(half, gl_x, gl_w);
    const double smax = std::sqrt(0.5);

    TimeQuadrature q;
    q.t = t;
    // tau = t s^2, s in (0, 1/sqrt(2)]: weight 2 t s ds
    for (int i = 0; i < half; ++i) {
        double s = gl_x[i] * smax;
        q.nodes.push_back(t * s * s);
        q.weights.push_back(gl_w[i] * smax * 2.0 * t * s);
    }
    // tau = t (1 - r^2), r in (0, 1/sqrt(2)]: weight 2 t r dr, descending r
    for (int i = half - 1; i >= 0; --i) {
        double r = gl_x[i] * smax;
        q.nodes.push_back(t * (1.0 - r * r));
        q.weights.push_back(gl_w[i] * smax * 2.0 * t * r);
    }
    return q;
}

double EpsilonFunction::eval(double s) const {
    if (!(s >= 0.0)) throw std::invalid_argument("EpsilonFunction: s must be >= 0");
    if (s == 0.0) return 0.0;
    double acc = 0.0;
    for (int n = std::max(-4, eta.n_lo()); n <= eta.n_hi(); ++n)
        acc += eta.at(n) * std::min(1.0, std::exp2(2.0 * n) * s);
    return acc;
}

SpectralField bilinear_B(const Trajectory& u, const Trajectory& v, double t,
                         const TimeQuadrature& quad, const SymbolSpec& sym) {
    u.grid().require_same(v.grid(), "bilinear_B");
    if (t > u.t_max() * (1.0 + 1e-12) || t > v.t_max() * (1.0 + 1e-12))
        throw std::out_of_range("bilinear_B: t beyond trajectory domain");
    SpectralField acc(u.grid(), true);
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
        const double tau = quad.nodes[i];
        auto prod = product_dealiased(u.at(tau), v.at(tau));
        acc += (cplx{quad.weights[i], 0.0}) * heat(apply_symbol(prod, sym), t - tau);
    }
    acc.set_mean_zero(true);
    return acc;
}

SpectralField bilinear_B(const Trajectory& u, const Trajectory& v, double t,
                         int quad_nodes, const SymbolSpec& sym) {
    return bilinear_B(u, v, t, TimeQuadrature::graded(t, quad_nodes), sym);
}

BandDiagnostics band_diagnostics(const Trajectory& u, const Trajectory& v, double t,
                                 int j, const SpaceSpec& spec, int n_weight,
                                 const EpsilonFunction& eps, int quad_nodes,
                                 const SymbolSpec& sym) {
    const Grid& g = u.grid();
    check_band_in_window(g, j, "band_diagnostics");
    const int p = 2 * n_weight;
    const double two_j = std::exp2(j);
    auto quad = TimeQuadrature::graded(t, quad_nodes);

    BandDiagnostics d;
    d.j = j;
    d.t = t;
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
        const double tau = quad.nodes[i];
        const double kern = std::pow(1.0 + two_j * std::sqrt(t - tau), -p);
        auto uf = u.at(tau);
        auto vf = v.at(tau);
        double rect =
            norm(product_dealiased(delta_j_nocheck(uf, j), s_j_nocheck(vf, j - 2)), spec);
        SpectralField diag_field(g, true);
        for (int k = j - 4; k <= g.band_hi(); ++k) {
            auto dk = delta_j_nocheck(uf, k);
            if (dk.max_axis_freq() == 0) continue;
            diag_field += product_dealiased(dk, tilde_delta_j_nocheck(vf, k));
        }
        double diag = norm(delta_j_nocheck(diag_field, j), spec);
        d.r_term += quad.weights[i] * two_j * kern * rect;
        d.c_term += quad.weights[i] * two_j * kern * diag;
    }
    d.band_b_norm = norm(delta_j(bilinear_B(u, v, t, quad, sym), j), spec);
    const double decay = std::pow(1.0 + two_j * std::sqrt(t), -n_weight);
    d.envelope25 = std::min(1.0, std::exp2(2.0 * j) * t) * decay;
    d.envelope28 = eps.eval(std::exp2(2.0 * j) * t) * decay;
    d.ratio25 = d.envelope25 > 0.0 ? d.r_term / d.envelope25 : 0.0;
    d.ratio28 = d.envelope28 > 0.0 ? d.band_b_norm / d.envelope28 : 0.0;
    return d;
}

} // namespace lplab
