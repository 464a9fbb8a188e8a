#include "lplab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "lplab/fft.hpp"
#include "lplab/microlocal.hpp"

namespace lplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double ball_multiplier(int dim, double u) {
    if (u < 1e-6) {
        double u2 = u * u;
        return dim == 3 ? 1.0 - u2 / 10.0 : 1.0 - u2 / 8.0;
    }
    if (dim == 3) return 3.0 * (std::sin(u) - u * std::cos(u)) / (u * u * u);
    return 2.0 * std::cyl_bessel_j(1, u) / u;
}

// dyadic (half-step refined) radius family, largest first; the spectral
// ball average is exact at every R, so the floor only trims the useless
// sub-cell range and keeps the family closed under halving
std::vector<double> morrey_radii(const Grid& g) {
    std::vector<double> out;
    const double top = g.box_edge() / 4.0;
    const double floor_r = g.cell_width();
    for (int m = 0;; ++m) {
        double r = top * std::exp2(-0.5 * m);
        if (r < floor_r) break;
        out.push_back(r);
    }
    if (out.empty()) out.push_back(top);
    return out;
}

int center_stride(const Grid& g) { return std::max(1, g.n / 32); }

// max over strided centers of the real part of a physical field
double strided_max(const Grid& g, const std::vector<cplx>& phys, int stride) {
    double best = 0.0;
    if (g.dim == 2) {
        for (int i = 0; i < g.n; i += stride)
            for (int j = 0; j < g.n; j += stride)
                best = std::max(best, phys[static_cast<std::size_t>(i) * g.n + j].real());
    } else {
        for (int i = 0; i < g.n; i += stride)
            for (int j = 0; j < g.n; j += stride)
                for (int k = 0; k < g.n; k += stride)
                    best = std::max(best,
                                    phys[(static_cast<std::size_t>(i) * g.n + j) * g.n + k].real());
    }
    return best;
}

// spectral coefficients of |f|^q on the 2x padded grid
std::pair<Grid, std::vector<cplx>> abs_power_padded(const SpectralField& f, double q) {
    const Grid& g = f.grid();
    Grid fine(g.dim, 2 * g.n, g.box_len);
    SpectralField embedded(fine, false);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f[i] == cplx{0.0, 0.0}) continue;
        int kvec[3];
        std::size_t rem = i;
        for (int a = g.dim - 1; a >= 0; --a) {
            kvec[a] = g.freq_int(static_cast<int>(rem % g.n));
            rem /= g.n;
        }
        std::vector<int> kk(kvec, kvec + g.dim);
        set_mode(embedded, kk, f[i]);
    }
    auto phys = to_physical(fine, embedded.coef());
    if (q == 2.0) {
        for (auto& c : phys) c = cplx{std::norm(c), 0.0};
    } else {
        for (auto& c : phys) c = cplx{std::pow(std::abs(c), q), 0.0};
    }
    return {fine, to_spectral(fine, phys)};
}

double lorentz_norm(const SpectralField& f, double p, double q) {
    auto re = rearrangement(f);
    const double mu = re.cell_measure;
    if (std::isinf(q)) {
        double best = 0.0;
        for (std::size_t i = 0; i < re.values.size(); ++i)
            best = std::max(best, re.values[i] * std::pow((i + 1) * mu, 1.0 / p));
        return best;
    }
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < re.values.size(); ++i) {
        double cur = std::pow((i + 1) * mu, q / p);
        acc += std::pow(re.values[i], q) * (cur - prev);
        prev = cur;
    }
    return std::pow(acc, 1.0 / q);
}

double fourier_lq(const SpectralField& f, double q) {
    const Grid& g = f.grid();
    const double v = g.volume();
    const double cell_xi = std::pow(1.0 / g.box_len, g.dim);
    if (std::isinf(q)) {
        double best = 0.0;
        for (const auto& c : f.coef()) best = std::max(best, std::abs(c));
        return v * best;
    }
    double acc = 0.0;
    for (const auto& c : f.coef())
        if (c != cplx{0.0, 0.0}) acc += std::pow(v * std::abs(c), q);
    return std::pow(acc * cell_xi, 1.0 / q);
}

double besov_norm(const SpectralField& f, double s, double p, double q) {
    const Grid& g = f.grid();
    double acc = 0.0, best = 0.0;
    for (int j = g.band_lo(); j <= g.band_hi(); ++j) {
        double a = std::exp2(s * j) * norm(delta_j(f, j), SpaceSpec::lebesgue(p));
        if (std::isinf(q))
            best = std::max(best, a);
        else
            acc += std::pow(a, q);
    }
    return std::isinf(q) ? best : std::pow(acc, 1.0 / q);
}

double triebel_norm(const SpectralField& f, double s, double p, double q) {
    const Grid& g = f.grid();
    std::vector<double> lq(g.size(), 0.0);
    for (int j = g.band_lo(); j <= g.band_hi(); ++j) {
        auto phys = to_physical(g, delta_j(f, j).coef());
        const double w = std::exp2(s * j);
        for (std::size_t i = 0; i < phys.size(); ++i)
            lq[i] += std::pow(w * std::abs(phys[i]), q);
    }
    double acc = 0.0;
    if (std::isinf(p)) {
        for (double v : lq) acc = std::max(acc, v);
        return std::pow(acc, 1.0 / q);
    }
    for (double v : lq) acc += std::pow(v, p / q);
    return std::pow(acc * g.cell_volume(), 1.0 / p);
}

double two_microlocal_norm(const SpectralField& f, double sprime, const PointSet& set) {
    if (set.empty())
        throw std::invalid_argument("two-microlocal norm: degenerate set (S is empty)");
    const Grid& g = f.grid();
    auto dist = distance_field(g, set);
    double best = 0.0;
    for (int j = g.band_lo(); j <= g.band_hi(); ++j) {
        auto band = delta_j(f, j);
        if (band.max_axis_freq() == 0 && band[0] == cplx{0.0, 0.0}) continue;
        auto phys = to_physical(g, band.coef());
        const double two_j = std::exp2(j);
        for (std::size_t i = 0; i < phys.size(); ++i) {
            double w = std::abs(phys[i]) / two_j * std::pow(1.0 + two_j * dist[i], sprime);
            best = std::max(best, w);
        }
    }
    return best;
}

double derived_cn_norm(const SpectralField& f, const SpaceSpec& base, int nw) {
    const Grid& g = f.grid();
    double best = 0.0;
    for (int j = g.band_lo(); j <= g.band_hi(); ++j)
        best = std::max(best,
                        std::pow(1.0 + std::exp2(j), nw) * norm(delta_j(f, j), base));
    return best;
}

double derived_bn_norm(const SpectralField& f, const SpaceSpec& base, int nw) {
    const Grid& g = f.grid();
    int j0 = std::clamp(0, g.band_lo(), g.band_hi());
    double out = norm(s_j(f, j0), base);
    for (int j = std::max(0, g.band_lo()); j <= g.band_hi(); ++j)
        out = std::max(out, std::exp2(static_cast<double>(nw) * j) * norm(delta_j(f, j), base));
    return out;
}

} // namespace

Rearrangement rearrangement(const SpectralField& f) {
    auto phys = to_physical(f.grid(), f.coef());
    Rearrangement out;
    out.cell_measure = f.grid().cell_volume();
    out.values.reserve(phys.size());
    for (const auto& c : phys) out.values.push_back(std::abs(c));
    std::sort(out.values.begin(), out.values.end(), std::greater<double>());
    return out;
}

std::vector<cplx> ball_average_field(const Grid& g, const std::vector<cplx>& coef,
                                     double radius) {
    std::vector<cplx> mult(coef.size());
    for (std::size_t i = 0; i < coef.size(); ++i) {
        if (coef[i] == cplx{0.0, 0.0}) {
            mult[i] = cplx{0.0, 0.0};
            continue;
        }
        double u = std::sqrt(g.xi_norm_sq(i)) * radius;
        mult[i] = coef[i] * ball_multiplier(g.dim, u);
    }
    return to_physical(g, mult);
}

double morrey_norm(const SpectralField& f, double p, double q) {
    auto [fine, wq] = abs_power_padded(f, q);
    const int stride = 2 * center_stride(f.grid());
    double best = 0.0;
    for (double r : morrey_radii(f.grid())) {
        auto avg = ball_average_field(fine, wq, r);
        double m = std::max(0.0, strided_max(fine, avg, stride));
        best = std::max(best, std::pow(r, 3.0 / p) * std::pow(m, 1.0 / q));
    }
    return best;
}

double morrey_norm_exhaustive(const SpectralField& f, double p, double q) {
    const Grid& g = f.grid();
    auto phys = to_physical(g, f.coef());
    std::vector<double> wq(phys.size());
    for (std::size_t i = 0; i < phys.size(); ++i) wq[i] = std::pow(std::abs(phys[i]), q);
    const double cell = g.cell_width();
    double best = 0.0;
    if (g.dim != 2)
        throw std::invalid_argument("morrey_norm_exhaustive: oracle provided for 2-d grids");
    for (int rcells = 2; rcells <= g.n / 4; ++rcells) {
        const double r = rcells * cell;
        // precompute offsets within the ball
        std::vector<std::pair<int, int>> offs;
        for (int di = -rcells; di <= rcells; ++di)
            for (int dj = -rcells; dj <= rcells; ++dj)
                if (static_cast<double>(di) * di + static_cast<double>(dj) * dj <=
                    static_cast<double>(rcells) * rcells)
                    offs.emplace_back(di, dj);
        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) {
                double acc = 0.0;
                for (const auto& [di, dj] : offs) {
                    int ii = (i + di + g.n) % g.n;
                    int jj = (j + dj + g.n) % g.n;
                    acc += wq[static_cast<std::size_t>(ii) * g.n + jj];
                }
                double avg = acc / offs.size();
                best = std::max(best, std::pow(r, 3.0 / p) * std::pow(avg, 1.0 / q));
            }
        }
    }
    return best;
}

double m_eta_norm(const SpectralField& f, const EtaSequence& eta) {
    if (!eta.nonincreasing())
        throw std::invalid_argument("m_eta_norm: eta must be nonincreasing");
    const Grid& g = f.grid();

    // radii 2^-j', capped by a quarter box; the spectral ball average stays
    // exact below the cell width, where band averages saturate at the peak
    std::vector<int> jprimes;
    for (int jp = -8; jp <= 40; ++jp) {
        double r = std::exp2(-jp);
        if (r > g.box_edge() / 4.0 || r < 0.25 * g.cell_width()) continue;
        jprimes.push_back(jp);
    }

    double best = 0.0;
    const int stride = 2 * center_stride(g);
    for (int j = g.band_lo(); j <= g.band_hi(); ++j) {
        auto band = delta_j(f, j);
        bool empty = true;
        for (const auto& c : band.coef())
            if (c != cplx{0.0, 0.0}) { empty = false; break; }
        if (empty) continue;
        auto g2 = modulus_squared(band);
        const double four_j = std::exp2(2.0 * j);
        for (int jp : jprimes) {
            auto avg = ball_average_field(g2.grid(), g2.coef(), std::exp2(-jp));
            double m = std::max(0.0, strided_max(g2.grid(), avg, stride));
            double e = eta.at_clamped(j - jp);
            if (e == 0.0) {
                if (m > 1e-14) return std::numeric_limits<double>::infinity();
                continue;
            }
            best = std::max(best, std::sqrt(m / (e * e * four_j)));
        }
        // R -> 0 limit of the ball averages: the pointwise candidate with the
        // eta_n = eta_0 (n <= 0) clamp; dominates the shrinking-radius tail
        {
            double e0 = eta.at_clamped(eta.n_lo() - 1);
            double peak = sup_norm(band);
            if (e0 == 0.0) {
                if (peak > 1e-14) return std::numeric_limits<double>::infinity();
            } else {
                best = std::max(best, peak / (e0 * std::exp2(j)));
            }
        }
    }
    return best;
}

double norm(const SpectralField& f, const SpaceSpec& spec) {
    switch (spec.kind) {
        case SpaceKind::Lebesgue:
            if (std::isinf(spec.p)) return sup_norm(f);
            return lp_norm(f, spec.p);
        case SpaceKind::Lorentz:
            return lorentz_norm(f, spec.p, spec.q);
        case SpaceKind::BesovHom:
            return besov_norm(f, spec.s, spec.p, spec.q);
        case SpaceKind::TriebelHom:
            return triebel_norm(f, spec.s, spec.p, spec.q);
        case SpaceKind::Morrey:
            return morrey_norm(f, spec.p, spec.q);
        case SpaceKind::BesovOverMorrey: {
            const Grid& g = f.grid();
            double acc = 0.0, best = 0.0;
            for (int j = g.band_lo(); j <= g.band_hi(); ++j) {
                double a = std::exp2(spec.s * j) *
                           morrey_norm(tilde_delta_j(f, j), spec.p, spec.q);
                if (std::isinf(spec.r))
                    best = std::max(best, a);
                else
                    acc += std::pow(a, spec.r);
            }
            return std::isinf(spec.r) ? best : std::pow(acc, 1.0 / spec.r);
        }
        case SpaceKind::FourierFq: {
            const Grid& g = f.grid();
            double best = 0.0;
            for (int j = g.band_lo(); j <= g.band_hi(); ++j)
                best = std::max(best, std::exp2(j * (2.0 - 3.0 / spec.q)) *
                                          fourier_lq(delta_j(f, j), spec.q));
            return best;
        }
        case SpaceKind::MetaEta:
            return m_eta_norm(f, spec.eta);
        case SpaceKind::TwoMicrolocal:
            return two_microlocal_norm(f, spec.sprime, spec.set);
        case SpaceKind::DerivedCN:
            return derived_cn_norm(f, *spec.base, spec.n_weight);
        case SpaceKind::DerivedBN:
            return derived_bn_norm(f, *spec.base, spec.n_weight);
    }
    throw std::logic_error("norm: unhandled space kind");
}

double time_weighted_norm(const SpectralField& f, double t, const SpaceSpec& spec) {
    if (!(t > 0.0)) throw std::invalid_argument("time_weighted_norm: t must be > 0");
    const Grid& g = f.grid();
    if (spec.kind == SpaceKind::DerivedCN) {
        const double rt = std::sqrt(t);
        double best = 0.0;
        for (int j = g.band_lo(); j <= g.band_hi(); ++j)
            best = std::max(best, std::pow(1.0 + std::exp2(j) * rt, spec.n_weight) *
                                      norm(delta_j(f, j), *spec.base));
        return best;
    }
    if (spec.kind == SpaceKind::DerivedBN) {
        const double rt = std::sqrt(t);
        int jt = static_cast<int>(std::ceil(-std::log2(rt)));
        while (std::exp2(-jt) > rt) ++jt;
        while (jt > INT_MIN && std::exp2(-(jt - 1)) <= rt) --jt;
        int j_eval = std::clamp(jt, g.band_lo(), g.band_hi());
        double out = norm(s_j(f, j_eval), *spec.base);
        for (int j = std::max(jt, g.band_lo()); j <= g.band_hi(); ++j)
            out = std::max(out, std::pow(std::exp2(j) * rt, spec.n_weight) *
                                    norm(delta_j(f, j), *spec.base));
        return out;
    }
    throw std::invalid_argument("time_weighted_norm: spec must be cn:... or bn:...");
}

} // namespace lplab
