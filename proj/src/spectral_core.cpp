#include "lplab/spectral_core.hpp"

#include <algorithm>
#include <cmath>

#include "lplab/fft.hpp"

namespace lplab {

namespace {

SpectralField multiply_radial(const SpectralField& f, double (*mult)(int, double), int j) {
    SpectralField out(f.grid(), f.mean_zero());
    const Grid& g = f.grid();
    const std::size_t sz = g.size();
    for (std::size_t i = 0; i < sz; ++i) {
        double m = mult(j, g.xi_norm_sq(i));
        if (m != 0.0) out[i] = m * f[i];
    }
    out.set_mean_zero(true); // every band operator kills the zero mode
    return out;
}

} // namespace

int SpectralField::max_axis_freq() const {
    const Grid& g = grid_;
    int top = 0;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (coef_[i] == cplx{0.0, 0.0}) continue;
        std::size_t rem = i;
        for (int a = g.dim - 1; a >= 0; --a) {
            int idx = static_cast<int>(rem % g.n);
            rem /= g.n;
            top = std::max(top, std::abs(g.freq_int(idx)));
        }
    }
    return top;
}

double SpectralField::spectral_radius() const {
    double r2 = 0.0;
    for (std::size_t i = 0; i < coef_.size(); ++i)
        if (coef_[i] != cplx{0.0, 0.0}) r2 = std::max(r2, grid_.xi_norm_sq(i));
    return std::sqrt(r2);
}

std::size_t mode_index(const Grid& g, const std::vector<int>& k) {
    if (static_cast<int>(k.size()) != g.dim)
        throw std::invalid_argument("mode_index: wrong dimension");
    std::size_t flat = 0;
    for (int a = 0; a < g.dim; ++a) {
        int ki = k[a];
        if (ki < -g.n / 2 || ki >= g.n / 2)
            throw std::out_of_range("mode_index: frequency outside lattice");
        int idx = ki >= 0 ? ki : ki + g.n;
        flat = flat * g.n + static_cast<std::size_t>(idx);
    }
    return flat;
}

void set_mode(SpectralField& f, const std::vector<int>& k, cplx amplitude) {
    f[mode_index(f.grid(), k)] = amplitude;
}

cplx get_mode(const SpectralField& f, const std::vector<int>& k) {
    return f[mode_index(f.grid(), k)];
}

SpectralField delta_j_nocheck(const SpectralField& f, int j) {
    return multiply_radial(f, &CutoffProfile::delta_mult, j);
}

SpectralField s_j_nocheck(const SpectralField& f, int j) {
    SpectralField out(f.grid(), f.mean_zero());
    const Grid& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        double m = CutoffProfile::s_mult(j, g.xi_norm_sq(i));
        if (m != 0.0) out[i] = m * f[i];
    }
    return out;
}

SpectralField tilde_delta_j_nocheck(const SpectralField& f, int j) {
    return multiply_radial(f, &CutoffProfile::tilde_mult, j);
}

SpectralField delta_j(const SpectralField& f, int j) {
    check_band_in_window(f.grid(), j, "delta_j");
    return delta_j_nocheck(f, j);
}

SpectralField s_j(const SpectralField& f, int j) {
    check_band_in_window(f.grid(), j, "s_j");
    return s_j_nocheck(f, j);
}

SpectralField tilde_delta_j(const SpectralField& f, int j) {
    check_band_in_window(f.grid(), j, "tilde_delta_j");
    return tilde_delta_j_nocheck(f, j);
}

SpectralField reconstruct_from_bands(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField out(g, true);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = g.xi_norm_sq(i);
        double sum = 0.0;
        for (int j = g.band_lo(); j <= g.band_hi(); ++j)
            sum += CutoffProfile::delta_mult(j, t);
        out[i] = sum * f[i];
    }
    return out;
}

SpectralField heat(const SpectralField& f, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat: time must be >= 0");
    if (t == 0.0) return f;
    SpectralField out(f.grid(), f.mean_zero());
    const Grid& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = std::exp(-t * g.xi_norm_sq(i)) * f[i];
    return out;
}

cplx SymbolSpec::eval(const Grid& g, std::size_t flat) const {
    std::size_t rem = flat;
    double comp[3] = {0.0, 0.0, 0.0};
    for (int a = g.dim - 1; a >= 0; --a) {
        comp[a] = g.xi_component(static_cast<int>(rem % g.n));
        rem /= g.n;
    }
    switch (kind) {
        case SymbolKind::Scalar1:
            return cplx{0.0, comp[0]};
        case SymbolKind::ScalarCone: {
            double norm2 = 0.0;
            for (int a = 0; a < g.dim; ++a) norm2 += comp[a] * comp[a];
            if (norm2 == 0.0) return cplx{0.0, 0.0};
            const double norm = std::sqrt(norm2);
            return cplx{0.0, norm * std::exp(comp[g.dim - 1] / norm)};
        }
    }
    return cplx{0.0, 0.0};
}

SpectralField apply_symbol(const SpectralField& f, const SymbolSpec& sym) {
    SpectralField out(f.grid(), true);
    const Grid& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (f[i] != cplx{0.0, 0.0}) out[i] = sym.eval(g, i) * f[i];
    out[0] = cplx{0.0, 0.0};
    return out;
}

std::vector<SpectralField> leray_bilinear_symbol(const std::vector<SpectralField>& uv_sym) {
    if (uv_sym.empty()) throw std::invalid_argument("leray_bilinear_symbol: empty input");
    const Grid& g = uv_sym.front().grid();
    const int d = g.dim;
    if (static_cast<int>(uv_sym.size()) != d * d)
        throw std::invalid_argument(
            "leray_bilinear_symbol: expected dim^2 tensor components (shape error)");
    for (const auto& c : uv_sym) g.require_same(c.grid(), "leray_bilinear_symbol");

    std::vector<SpectralField> out;
    out.reserve(d);
    for (int k = 0; k < d; ++k) out.emplace_back(g, true);

    for (std::size_t i = 1; i < g.size(); ++i) {
        double xi[3] = {0.0, 0.0, 0.0};
        std::size_t rem = i;
        for (int a = d - 1; a >= 0; --a) {
            xi[a] = g.xi_component(static_cast<int>(rem % g.n));
            rem /= g.n;
        }
        double n2 = 0.0;
        for (int a = 0; a < d; ++a) n2 += xi[a] * xi[a];
        if (n2 == 0.0) continue;
        // w_l = i xi_m M_{lm}; out_k = -1/2 (w_k - xi_k (xi.w)/|xi|^2)
        cplx w[3] = {};
        for (int l = 0; l < d; ++l) {
            cplx acc{0.0, 0.0};
            for (int m = 0; m < d; ++m)
                acc += cplx{0.0, xi[m]} * uv_sym[static_cast<std::size_t>(l * d + m)][i];
            w[l] = acc;
        }
        cplx xw{0.0, 0.0};
        for (int a = 0; a < d; ++a) xw += xi[a] * w[a];
        for (int k = 0; k < d; ++k) out[k][i] = -0.5 * (w[k] - xi[k] * xw / n2);
    }
    return out;
}

SpectralField dyadic_rescale(const SpectralField& f, int m) {
    if (m == 0) return f;
    const Grid& g = f.grid();
    SpectralField out(g, f.mean_zero());
    const int half = g.n / 2;
    const double amp = std::ldexp(1.0, m);
    const std::size_t sz = g.size();
    for (std::size_t i = 0; i < sz; ++i) {
        if (f[i] == cplx{0.0, 0.0}) continue;
        int k[3] = {0, 0, 0};
        std::size_t rem = i;
        for (int a = g.dim - 1; a >= 0; --a) {
            k[a] = g.freq_int(static_cast<int>(rem % g.n));
            rem /= g.n;
        }
        std::vector<int> kk(g.dim);
        if (m > 0) {
            for (int a = 0; a < g.dim; ++a) {
                long shifted = static_cast<long>(k[a]) << m;
                if (shifted < -half || shifted >= half)
                    throw std::out_of_range(
                        "dyadic_rescale: insufficient headroom, shifted mode leaves lattice");
                kk[a] = static_cast<int>(shifted);
            }
        } else {
            const int div = 1 << (-m);
            for (int a = 0; a < g.dim; ++a) {
                if (k[a] % div != 0)
                    throw std::out_of_range(
                        "dyadic_rescale: occupied mode not divisible by 2^|m|");
                kk[a] = k[a] / div;
            }
        }
        out[mode_index(g, kk)] = amp * f[i];
    }
    return out;
}

SpectralField translate(const SpectralField& f, const std::vector<double>& a) {
    const Grid& g = f.grid();
    if (static_cast<int>(a.size()) != g.dim)
        throw std::invalid_argument("translate: wrong shift dimension");
    SpectralField out(g, f.mean_zero());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f[i] == cplx{0.0, 0.0}) continue;
        std::size_t rem = i;
        double phase = 0.0;
        for (int ax = g.dim - 1; ax >= 0; --ax) {
            phase += g.xi_component(static_cast<int>(rem % g.n)) * a[ax];
            rem /= g.n;
        }
        out[i] = f[i] * std::polar(1.0, -phase);
    }
    return out;
}

namespace {

// flat index of the same integer-frequency mode on another grid
std::size_t reindex_mode(const Grid& from, std::size_t flat, const Grid& to) {
    std::size_t out = 0;
    int kvec[3];
    std::size_t rem = flat;
    for (int a = from.dim - 1; a >= 0; --a) {
        kvec[a] = from.freq_int(static_cast<int>(rem % from.n));
        rem /= from.n;
    }
    for (int a = 0; a < from.dim; ++a) {
        int idx = kvec[a] >= 0 ? kvec[a] : kvec[a] + to.n;
        out = out * to.n + static_cast<std::size_t>(idx);
    }
    return out;
}

// embed coefficients into a 2x padded grid at the same integer frequencies
std::vector<cplx> embed_padded(const SpectralField& f, const Grid& fine) {
    const Grid& g = f.grid();
    std::vector<cplx> out(fine.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < g.size(); ++i)
        if (f[i] != cplx{0.0, 0.0}) out[reindex_mode(g, i, fine)] = f[i];
    return out;
}

SpectralField truncate_to(const Grid& coarse, const Grid& fine, const std::vector<cplx>& c) {
    SpectralField out(coarse, false);
    for (std::size_t i = 0; i < coarse.size(); ++i)
        out[i] = c[reindex_mode(coarse, i, fine)];
    return out;
}

// drop FFT rounding noise outside the provable per-axis support bound
void clip_axis_support(SpectralField& f, int extent) {
    const Grid& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f[i] == cplx{0.0, 0.0}) continue;
        std::size_t rem = i;
        for (int a = g.dim - 1; a >= 0; --a) {
            int k = g.freq_int(static_cast<int>(rem % g.n));
            rem /= g.n;
            if (std::abs(k) > extent) {
                f[i] = cplx{0.0, 0.0};
                break;
            }
        }
    }
}

} // namespace

SpectralField product_dealiased(const SpectralField& f, const SpectralField& g_) {
    f.grid().require_same(g_.grid(), "product_dealiased");
    const Grid& g = f.grid();
    const int ceiling = product_axis_ceiling(g);
    const int topf = f.max_axis_freq();
    const int topg = g_.max_axis_freq();
    if (topf > ceiling || topg > ceiling)
        throw std::out_of_range(
            "product_dealiased: aliasing risk, per-axis frequency " +
            std::to_string(std::max(topf, topg)) + " exceeds safe ceiling " +
            std::to_string(ceiling));
    Grid fine(g.dim, 2 * g.n, g.box_len);
    auto fa = to_physical(fine, embed_padded(f, fine));
    auto ga = to_physical(fine, embed_padded(g_, fine));
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= ga[i];
    auto prod = to_spectral(fine, fa);
    // every product mode fits within |k_i| <= n/2 - 1 thanks to the ceiling
    auto out = truncate_to(g, fine, prod);
    clip_axis_support(out, std::min(topf + topg, g.n / 2 - 1));
    return out;
}

SpectralField truncate_axis(const SpectralField& f, int ceiling) {
    SpectralField out = f;
    clip_axis_support(out, ceiling);
    return out;
}

SpectralField conjugate(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField out(g, f.mean_zero());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (f[i] == cplx{0.0, 0.0}) continue;
        std::size_t rem = i;
        int kvec[3];
        for (int a = g.dim - 1; a >= 0; --a) {
            kvec[a] = g.freq_int(static_cast<int>(rem % g.n));
            rem /= g.n;
        }
        std::vector<int> neg(g.dim);
        bool ok = true;
        for (int a = 0; a < g.dim; ++a) {
            if (kvec[a] == -g.n / 2) { ok = false; break; }
            neg[a] = -kvec[a];
        }
        if (!ok) continue; // Nyquist plane is unused by construction
        out[mode_index(g, neg)] = std::conj(f[i]);
    }
    return out;
}

SpectralField modulus_squared(const SpectralField& f) {
    const Grid& g = f.grid();
    const int top = f.max_axis_freq();
    Grid fine(g.dim, 2 * g.n, g.box_len);
    auto fa = to_physical(fine, embed_padded(f, fine));
    for (auto& c : fa) c = cplx{std::norm(c), 0.0};
    SpectralField out(fine, to_spectral(fine, fa), false);
    clip_axis_support(out, std::min(2 * top, fine.n / 2 - 1));
    return out;
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& c : f.coef()) s += std::norm(c);
    return std::sqrt(f.grid().volume() * s);
}

double sup_norm(const SpectralField& f) {
    auto phys = to_physical(f.grid(), f.coef());
    double m = 0.0;
    for (const auto& v : phys) m = std::max(m, std::abs(v));
    return m;
}

double lp_norm(const SpectralField& f, double p) {
    if (p == 2.0) return l2_norm(f);
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    auto phys = to_physical(f.grid(), f.coef());
    double s = 0.0;
    for (const auto& v : phys) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

} // namespace lplab
