#include "lplab/paraproduct.hpp"

#include <algorithm>
#include <cmath>

#include "lplab/norms.hpp"

namespace lplab {

ProductSplit bony_split(const SpectralField& f, const SpectralField& g, int j) {
    f.grid().require_same(g.grid(), "bony_split");
    const Grid& grid = f.grid();
    check_band_in_window(grid, j, "bony_split");
    const int ceiling = product_axis_ceiling(grid);
    if (f.max_axis_freq() > ceiling || g.max_axis_freq() > ceiling)
        throw std::out_of_range("bony_split: aliasing risk, inputs must stay below the "
                                "per-axis ceiling " + std::to_string(ceiling));

    ProductSplit out;
    out.j = j;
    out.lowhigh = SpectralField(grid, true);
    out.highlow = SpectralField(grid, true);
    out.diagonal = SpectralField(grid, true);

    auto empty = [](const SpectralField& h) {
        return h.max_axis_freq() == 0 && h[0] == cplx{0.0, 0.0};
    };
    // low-high: pairs with k - l >= 3; only k within [j-3, j+3] survive Delta_j
    for (int k = j - 3; k <= std::min(j + 3, grid.band_hi()); ++k) {
        auto fk = delta_j_nocheck(f, k);
        if (!empty(fk))
            out.lowhigh += delta_j_nocheck(product_dealiased(fk, s_j_nocheck(g, k - 2)), j);
        auto gk = delta_j_nocheck(g, k);
        if (!empty(gk))
            out.highlow += delta_j_nocheck(product_dealiased(s_j_nocheck(f, k - 2), gk), j);
    }
    // spectral overlap: |k - l| <= 2; Delta_j kills everything below k = j - 4
    for (int k = j - 4; k <= grid.band_hi(); ++k) {
        auto fk = delta_j_nocheck(f, k);
        if (empty(fk)) continue;
        auto gk = tilde_delta_j_nocheck(g, k);
        if (empty(gk)) continue;
        out.diagonal += delta_j_nocheck(product_dealiased(fk, gk), j);
    }
    return out;
}

SpectralField random_band_field(const Grid& g, int k, Rng& rng) {
    check_band_in_window(g, k, "random_band_field");
    SpectralField f(g, true);
    const double lo = std::exp2(k - 1), hi = std::exp2(k + 1);
    const double lo2 = lo * lo, hi2 = hi * hi;
    bool any = false;
    for (std::size_t i = 1; i < g.size(); ++i) {
        double t = g.xi_norm_sq(i);
        if (t < lo2 || t > hi2) continue;
        f[i] = std::polar(1.0, rng.angle());
        any = true;
    }
    if (!any)
        throw std::out_of_range("random_band_field: annulus for band " + std::to_string(k) +
                                " contains no lattice modes");
    return f;
}

SpectralField random_band_field_normalized(const Grid& g, int k, const SpaceSpec& spec,
                                           Rng& rng) {
    SpectralField f = random_band_field(g, k, rng);
    double n = norm(f, spec);
    if (!(n > 0.0)) throw std::runtime_error("random_band_field_normalized: zero norm");
    f *= cplx{1.0 / n, 0.0};
    return f;
}

int top_product_band(const Grid& g) {
    // annulus top 2^(k+1) must stay below the per-axis product ceiling
    int k = g.band_max();
    const double lim = product_axis_ceiling(g) / g.box_len;
    while (k > g.band_min() && std::exp2(k + 1) > lim) --k;
    return k;
}

double EtaMeasurement::fitted_slope_log2() const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& r : rows) {
        if (!(r.ratio_max > 0.0)) continue;
        double x = r.n, y = std::log2(r.ratio_max);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

// Coherent saturating pair: conjugate-modulated one-dimensional combs whose
// product concentrates on the psi0 peak of band j with no random
// cancellation (the mechanism behind the sharpness example of the
// constant-eta spaces). f carries modes 0.75*2^k e_a1 + m e_a2, g the
// opposite modulation shifted by 2^j e_a1; the product spectrum is the
// triangle 2^j e_a1 + (m - m') e_a2 inside the band-j annulus.
std::pair<SpectralField, SpectralField> coherent_pair(const Grid& g, int k, int j,
                                                      Rng& rng) {
    const int a1 = rng.uniform_int(0, g.dim - 1);
    int a2 = rng.uniform_int(0, g.dim - 2);
    if (a2 >= a1) ++a2;
    const int c = static_cast<int>(std::lround(0.75 * std::exp2(k) * g.box_len));
    const int d = std::max(1, static_cast<int>(std::lround(std::exp2(j) * g.box_len)));
    const int half = std::max(0, static_cast<int>(std::lround(std::exp2(j - 1) * g.box_len)));
    const int flip = rng.sign();

    SpectralField f(g, true), h(g, true);
    for (int m = -half; m <= half; ++m) {
        std::vector<int> kf(g.dim, 0), kg(g.dim, 0);
        kf[a1] = flip * c;
        kf[a2] = m;
        kg[a1] = -flip * c + flip * d;
        kg[a2] = -m;
        set_mode(f, kf, cplx{1.0, 0.0});
        set_mode(h, kg, cplx{1.0, 0.0});
    }
    return {std::move(f), std::move(h)};
}

} // namespace

EtaMeasurement eta_estimate(const Grid& g, const SpaceSpec& spec, int n_lo, int n_hi,
                            int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("eta_estimate: trials must be >= 1");
    if (n_lo > n_hi) throw std::invalid_argument("eta_estimate: empty offset range");
    const int k_top = top_product_band(g);

    EtaMeasurement out;
    out.seed = seed;
    for (int n = n_lo; n <= n_hi; ++n) {
        // need k >= band_min + 2 so that l = k - 2 stays resolvable, and
        // j = k - n at a resolvable band
        int k_min = std::max(g.band_min() + 2, g.band_min() + n);
        if (k_min > k_top)
            throw std::out_of_range("eta_estimate: offset n=" + std::to_string(n) +
                                    " exceeds the grid band headroom (k window [" +
                                    std::to_string(k_min) + "," + std::to_string(k_top) +
                                    "])");
        std::vector<double> ratios;
        ratios.reserve(trials);
        for (int tr = 0; tr < trials; ++tr) {
            Rng rng = Rng::substream(seed, (static_cast<std::uint64_t>(n + 64) << 32) +
                                               static_cast<std::uint64_t>(tr));
            int k = rng.uniform_int(k_min, k_top);
            int j = k - n;
            SpectralField f, h;
            if (tr % 2 == 0) {
                // sup-saturating coherent pair (l = k)
                auto pair = coherent_pair(g, k, j, rng);
                f = std::move(pair.first);
                h = std::move(pair.second);
            } else {
                // independent constant-modulus shells, |k - l| <= 2
                int l = k + rng.uniform_int(-2, 0);
                f = random_band_field(g, k, rng);
                h = random_band_field(g, l, rng);
            }
            double nf = norm(f, spec), nh = norm(h, spec);
            if (!(nf > 0.0) || !(nh > 0.0)) continue;
            auto prod = delta_j(product_dealiased(f, h), j);
            double r = norm(prod, spec) / (std::exp2(2.0 * k - j) * nf * nh);
            ratios.push_back(r);
        }
        if (ratios.empty())
            throw std::runtime_error("eta_estimate: no usable trials");
        std::sort(ratios.begin(), ratios.end());
        EtaMeasurement::Row row;
        row.n = n;
        row.trials = static_cast<int>(ratios.size());
        row.ratio_max = ratios.back();
        row.ratio_median = ratios[ratios.size() / 2];
        row.theory_rate_log2 = known_eta_rate_log2(spec);
        out.rows.push_back(row);
    }
    return out;
}

double separation_constant(const Grid& g, const SpaceSpec& spec, int trials,
                           std::uint64_t seed, int gap) {
    if (trials < 1) throw std::invalid_argument("separation_constant: trials must be >= 1");
    const int k_top = top_product_band(g);
    double best = 0.0;
    const int gap_max = k_top - (g.band_lo() + 1);
    for (int tr = 0; tr < trials; ++tr) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(tr));
        int gp = gap > 0 ? gap : rng.uniform_int(3, std::max(3, std::min(6, gap_max)));
        int k_min = std::max(g.band_min(), g.band_lo() + 1 + gp);
        if (k_min > k_top)
            throw std::out_of_range("separation_constant: gap " + std::to_string(gp) +
                                    " exceeds the grid band headroom");
        int k = rng.uniform_int(k_min, k_top);
        int l = k - gp;
        auto f = random_band_field_normalized(g, k, spec, rng);
        auto h = random_band_field_normalized(g, l, spec, rng);
        double nf = norm(product_dealiased(f, h), spec);
        if (nf == 0.0) continue; // zero draw contributes nothing
        best = std::max(best, nf / std::exp2(l));
    }
    return best;
}

} // namespace lplab
