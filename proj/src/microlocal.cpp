#include "lplab/microlocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lplab/fft.hpp"
#include "lplab/norms.hpp"

namespace lplab {

namespace {

constexpr double kBig = 1e30;

// Felzenszwalb-Huttenlocher 1-d squared-distance transform (lower envelope
// of parabolas); d[i] = min_j (f[j] + (i - j)^2).
void dt_1d(const std::vector<double>& f, std::vector<double>& d) {
    const int n = static_cast<int>(f.size());
    static thread_local std::vector<int> v;
    static thread_local std::vector<double> z;
    v.assign(static_cast<std::size_t>(n), 0);
    z.assign(static_cast<std::size_t>(n) + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -kBig;
    z[1] = kBig;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + static_cast<double>(q) * q) -
                    (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kBig;
    }
    k = 0;
    d.resize(f.size());
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        double dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

// periodic variant via 3x tiling, middle copy kept
void dt_1d_periodic(std::vector<double>& line) {
    const std::size_t n = line.size();
    std::vector<double> tiled(3 * n);
    for (std::size_t r = 0; r < 3; ++r)
        std::copy(line.begin(), line.end(), tiled.begin() + r * n);
    std::vector<double> out;
    dt_1d(tiled, out);
    std::copy(out.begin() + n, out.begin() + 2 * n, line.begin());
}

std::size_t flat_index(const Grid& g, int i, int j, int k) {
    if (g.dim == 2) return static_cast<std::size_t>(i) * g.n + j;
    return (static_cast<std::size_t>(i) * g.n + j) * g.n + k;
}

int nearest_node(const Grid& g, double coord) {
    double cells = coord / g.cell_width();
    long r = std::lround(cells);
    long n = g.n;
    return static_cast<int>(((r % n) + n) % n);
}

} // namespace

std::vector<double> distance_field(const Grid& g, const PointSet& S) {
    if (S.empty()) throw std::invalid_argument("distance_field: empty point set");
    std::vector<double> d2(g.size(), kBig);

    auto mark = [&](int i, int j, int k) { d2[flat_index(g, i, j, k)] = 0.0; };
    switch (S.shape) {
        case SetShape::Points:
            for (const auto& p : S.points) {
                if (static_cast<int>(p.size()) != g.dim)
                    throw std::invalid_argument("distance_field: point arity mismatch");
                int i = nearest_node(g, p[0]);
                int j = nearest_node(g, p[1]);
                int k = g.dim == 3 ? nearest_node(g, p[2]) : 0;
                mark(i, j, k);
            }
            break;
        case SetShape::Plane: {
            int fixed = nearest_node(g, S.offset);
            for (int a = 0; a < g.n; ++a)
                for (int b = 0; b < (g.dim == 3 ? g.n : 1); ++b) {
                    int idx[3] = {a, a, a};
                    idx[S.plane_axis] = fixed;
                    if (g.dim == 2) {
                        int other = S.plane_axis == 0 ? 1 : 0;
                        idx[other] = a;
                        mark(idx[0], idx[1], 0);
                    } else {
                        int rest[2], r = 0;
                        for (int ax = 0; ax < 3; ++ax)
                            if (ax != S.plane_axis) rest[r++] = ax;
                        idx[rest[0]] = a;
                        idx[rest[1]] = b;
                        mark(idx[0], idx[1], idx[2]);
                    }
                }
            break;
        }
        case SetShape::Line: {
            int f1 = nearest_node(g, S.offset);
            if (g.dim != 3) throw std::invalid_argument("distance_field: Line needs dim 3");
            for (int a = 0; a < g.n; ++a) {
                int idx[3] = {f1, f1, f1};
                idx[S.plane_axis] = a; // axis along which the line runs
                mark(idx[0], idx[1], idx[2]);
            }
            break;
        }
    }

    // separable passes in cell units
    std::vector<double> line(static_cast<std::size_t>(g.n));
    if (g.dim == 2) {
        for (int i = 0; i < g.n; ++i) { // along axis 1
            for (int j = 0; j < g.n; ++j) line[j] = d2[flat_index(g, i, j, 0)];
            dt_1d_periodic(line);
            for (int j = 0; j < g.n; ++j) d2[flat_index(g, i, j, 0)] = line[j];
        }
        for (int j = 0; j < g.n; ++j) { // along axis 0
            for (int i = 0; i < g.n; ++i) line[i] = d2[flat_index(g, i, j, 0)];
            dt_1d_periodic(line);
            for (int i = 0; i < g.n; ++i) d2[flat_index(g, i, j, 0)] = line[i];
        }
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                for (int k = 0; k < g.n; ++k) line[k] = d2[flat_index(g, i, j, k)];
                dt_1d_periodic(line);
                for (int k = 0; k < g.n; ++k) d2[flat_index(g, i, j, k)] = line[k];
            }
        for (int i = 0; i < g.n; ++i)
            for (int k = 0; k < g.n; ++k) {
                for (int j = 0; j < g.n; ++j) line[j] = d2[flat_index(g, i, j, k)];
                dt_1d_periodic(line);
                for (int j = 0; j < g.n; ++j) d2[flat_index(g, i, j, k)] = line[j];
            }
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                for (int i = 0; i < g.n; ++i) line[i] = d2[flat_index(g, i, j, k)];
                dt_1d_periodic(line);
                for (int i = 0; i < g.n; ++i) d2[flat_index(g, i, j, k)] = line[i];
            }
    }

    std::vector<double> out(d2.size());
    const double h = g.cell_width();
    for (std::size_t i = 0; i < d2.size(); ++i) out[i] = std::sqrt(d2[i]) * h;
    return out;
}

double DensityProfile::at(double d) const {
    for (std::size_t i = delta.size(); i-- > 0;)
        if (delta[i] >= d) return eps[i];
    return eps.front();
}

DensityProfile density_function(const Grid& g, const PointSet& S, int delta_levels,
                                int center_stride) {
    if (S.empty()) throw std::invalid_argument("density_function: empty point set");
    auto dist = distance_field(g, S);
    const double h = g.cell_width();

    DensityProfile prof;
    for (int m = 0; m < delta_levels; ++m) {
        prof.delta.push_back(std::exp2(-m));
        prof.eps.push_back(0.0);
    }

    // centers: strided lattice plus the set trace (where suprema concentrate)
    std::vector<std::array<int, 3>> centers;
    auto push_center = [&](int i, int j, int k) { centers.push_back({i, j, k}); };
    for (int i = 0; i < g.n; i += center_stride)
        for (int j2 = 0; j2 < g.n; j2 += center_stride) {
            if (g.dim == 2)
                push_center(i, j2, 0);
            else
                for (int k = 0; k < g.n; k += center_stride) push_center(i, j2, k);
        }
    std::size_t trace_budget = 64;
    for (std::size_t i = 0; i < dist.size() && trace_budget > 0; ++i) {
        if (dist[i] != 0.0) continue;
        --trace_budget;
        if (g.dim == 2)
            push_center(static_cast<int>(i) / g.n, static_cast<int>(i) % g.n, 0);
        else {
            int k = static_cast<int>(i % g.n);
            int j2 = static_cast<int>((i / g.n) % g.n);
            int i0 = static_cast<int>(i / (static_cast<std::size_t>(g.n) * g.n));
            push_center(i0, j2, k);
        }
    }

    // dyadic radii
    std::vector<double> radii;
    for (double r = g.box_edge() / 4.0; r >= 4.0 * h; r /= 2.0) radii.push_back(r);
    if (radii.empty()) radii.push_back(g.box_edge() / 4.0);

    for (double r : radii) {
        const int rc = static_cast<int>(std::floor(r / h));
        // offsets within the ball
        std::vector<std::array<int, 3>> offs;
        for (int di = -rc; di <= rc; ++di)
            for (int dj = -rc; dj <= rc; ++dj) {
                if (g.dim == 2) {
                    if (static_cast<double>(di) * di + static_cast<double>(dj) * dj <=
                        static_cast<double>(rc) * rc)
                        offs.push_back({di, dj, 0});
                } else {
                    for (int dk = -rc; dk <= rc; ++dk)
                        if (static_cast<double>(di) * di + static_cast<double>(dj) * dj +
                                static_cast<double>(dk) * dk <=
                            static_cast<double>(rc) * rc)
                            offs.push_back({di, dj, dk});
                }
            }
        std::vector<int> hist(static_cast<std::size_t>(delta_levels) + 1, 0);
        for (const auto& c : centers) {
            std::fill(hist.begin(), hist.end(), 0);
            for (const auto& o : offs) {
                int ii = (c[0] + o[0] + g.n) % g.n;
                int jj = (c[1] + o[1] + g.n) % g.n;
                int kk = g.dim == 3 ? (c[2] + o[2] + g.n) % g.n : 0;
                double dv = dist[flat_index(g, ii, jj, kk)];
                double ratio = dv / r;
                int mstar;
                if (ratio <= 0.0)
                    mstar = delta_levels - 1;
                else if (ratio > 1.0)
                    mstar = -1;
                else
                    mstar = std::min(delta_levels - 1,
                                     static_cast<int>(std::floor(-std::log2(ratio))));
                if (mstar >= 0) ++hist[static_cast<std::size_t>(mstar)];
            }
            // cumulative: count for level m includes all mstar >= m
            int acc = 0;
            for (int m = delta_levels - 1; m >= 0; --m) {
                acc += hist[static_cast<std::size_t>(m)];
                double frac = static_cast<double>(acc) / static_cast<double>(offs.size());
                prof.eps[static_cast<std::size_t>(m)] =
                    std::max(prof.eps[static_cast<std::size_t>(m)], frac);
            }
        }
    }
    return prof;
}

DensityProfile analytic_density_point(int dim, int delta_levels) {
    DensityProfile p;
    p.analytic = true;
    for (int m = 0; m < delta_levels; ++m) {
        double d = std::exp2(-m);
        p.delta.push_back(d);
        p.eps.push_back(std::pow(d, dim));
    }
    return p;
}

DensityProfile analytic_density_plane(int delta_levels) {
    DensityProfile p;
    p.analytic = true;
    for (int m = 0; m < delta_levels; ++m) {
        double d = std::exp2(-m);
        p.delta.push_back(d);
        p.eps.push_back(std::min(1.0, 1.5 * d * (1.0 - d * d / 3.0)));
    }
    return p;
}

DensityProfile analytic_density_constant(double value, int delta_levels) {
    DensityProfile p;
    p.analytic = true;
    for (int m = 0; m < delta_levels; ++m) {
        p.delta.push_back(std::exp2(-m));
        p.eps.push_back(value);
    }
    return p;
}

DensityProfile analytic_density_log(int delta_levels) {
    DensityProfile p;
    p.analytic = true;
    for (int m = 0; m < delta_levels; ++m) {
        double d = std::exp2(-m);
        p.delta.push_back(d);
        p.eps.push_back(1.0 / std::log(std::exp(1.0) / d));
    }
    return p;
}

DiniReport dini_check(const DensityProfile& profile) {
    DiniReport rep;
    for (double e : profile.eps) rep.dyadic_sum += e;
    // geometric mean of tail ratios over the last half of the profile
    std::size_t n = profile.eps.size();
    std::size_t lo = n / 2;
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t m = lo; m + 1 < n; ++m) {
        if (profile.eps[m] <= 0.0) continue;
        double r = profile.eps[m + 1] / profile.eps[m];
        if (r > 0.0) {
            acc += std::log(r);
            ++cnt;
        }
    }
    rep.tail_ratio = cnt > 0 ? std::exp(acc / cnt) : 0.0;
    rep.converges = rep.tail_ratio <= 0.85;
    return rep;
}

EtaSequence eta_from_density(double sprime, const DensityProfile& profile, int n_hi) {
    if (!(sprime > 0.0)) throw std::invalid_argument("eta_from_density: s' must be > 0");
    if (n_hi >= static_cast<int>(profile.eps.size()))
        throw std::invalid_argument("eta_from_density: profile too short for requested window");
    std::vector<double> vals;
    for (int n = 0; n <= n_hi; ++n) {
        double acc = 0.0;
        for (int m = 0; m <= n; ++m)
            acc += std::exp2(-2.0 * sprime * (n - m)) * profile.eps[static_cast<std::size_t>(m)];
        vals.push_back(acc);
    }
    return EtaSequence(0, std::move(vals));
}

double convolution_stability_constant(const Grid& g, const PointSet& S, double sprime,
                                      int n_exp, int j) {
    if (!(n_exp > g.dim + sprime))
        throw std::invalid_argument("convolution_stability_constant: need N > dim + s'");
    auto dist = distance_field(g, S);
    const double two_j = std::exp2(j);

    // kernel samples around the periodic origin
    std::vector<cplx> kern(g.size()), wfield(g.size());
    const double h = g.cell_width();
    for (std::size_t i = 0; i < g.size(); ++i) {
        int idx[3] = {0, 0, 0};
        std::size_t rem = i;
        for (int a = g.dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % g.n);
            rem /= g.n;
        }
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            int di = std::min(idx[a], g.n - idx[a]);
            r2 += static_cast<double>(di) * di;
        }
        double r = std::sqrt(r2) * h;
        kern[i] = std::pow(2.0, g.dim * j) * std::pow(1.0 + two_j * r, -n_exp);
        wfield[i] = std::pow(1.0 + two_j * dist[i], -sprime);
    }
    auto khat = to_spectral(g, kern);
    auto what = to_spectral(g, wfield);
    std::vector<cplx> prod(g.size());
    const double v = g.volume();
    for (std::size_t i = 0; i < g.size(); ++i) prod[i] = v * khat[i] * what[i];
    auto conv = to_physical(g, prod);

    double best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        best = std::max(best, conv[i].real() * std::pow(1.0 + two_j * dist[i], sprime));
    return best;
}

namespace {

// fit of log(sup over dyadic distance bins) against log(1 + rho)
double band_decay_slope(const Grid& g, const SpectralField& band, int j,
                        const std::vector<double>& dist) {
    auto phys = to_physical(g, band.coef());
    const double two_j = std::exp2(j);
    const int bins = 8;
    std::vector<double> sup(bins, 0.0);
    for (std::size_t i = 0; i < phys.size(); ++i) {
        double rho = two_j * dist[i];
        int b = rho < 1.0 ? 0
                          : std::min(bins - 1, 1 + static_cast<int>(std::floor(std::log2(rho))));
        sup[static_cast<std::size_t>(b)] =
            std::max(sup[static_cast<std::size_t>(b)], std::abs(phys[i]));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int b = 0; b < bins; ++b) {
        if (sup[static_cast<std::size_t>(b)] <= 0.0) continue;
        double x = std::log(1.0 + (b == 0 ? 0.5 : std::exp2(b - 0.5)));
        double y = std::log(sup[static_cast<std::size_t>(b)]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 3) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace

DecayReport decay_check(const Trajectory& u, const SpectralField& u0, const PointSet& S,
                        double sprime, const std::vector<double>& times, int fit_band) {
    const Grid& g = u.grid();
    auto dist = distance_field(g, S);
    DecayReport rep;
    rep.times = times;

    for (double t : times) {
        auto phys = to_physical(g, u.at(t).coef());
        const double rt = std::sqrt(t);
        double c = 0.0;
        for (std::size_t i = 0; i < phys.size(); ++i)
            c = std::max(c, std::abs(phys[i]) * (rt + dist[i]));
        if (sprime < 1.0) c *= std::pow(rt, 1.0 - sprime);
        rep.envelope_constant.push_back(c);
    }
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (double c : rep.envelope_constant) {
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    rep.constant_spread = cmin > 0.0 ? cmax / cmin : 0.0;

    // spatial decay exponents at the mid time, linear part vs Duhamel part
    double t_ref = times[times.size() / 2];
    SpectralField lin = heat(u0, t_ref);
    SpectralField w = u.at(t_ref) - lin;
    rep.slope_u = band_decay_slope(g, delta_j(lin, fit_band), fit_band, dist);
    rep.slope_w = band_decay_slope(g, delta_j(w, fit_band), fit_band, dist);
    rep.fit_ok = rep.slope_u < 0.0 && rep.slope_w < 0.0;
    return rep;
}

} // namespace lplab
