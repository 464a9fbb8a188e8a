#include "lplab/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "lplab/duhamel.hpp"
#include "lplab/fft.hpp"
#include "lplab/norms.hpp"

namespace lplab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Prop19Pair make_prop19_pair(const Grid& grid, int k) {
    if (grid.box_len != 1.0)
        throw std::invalid_argument("prop19 pair: expects unit box half-period L = 1");
    const int mode = 1 << k;
    if (mode > product_axis_ceiling(grid))
        throw std::out_of_range("prop19 pair: band k=" + std::to_string(k) +
                                " exceeds the product ceiling; enlarge the grid");

    Prop19Pair out;
    out.k = k;
    // phi = 1 + (1/2) cos(x_2) (+ (1/2) cos(x_3)): unit-ball spectrum,
    // sidebands orthogonal to the modulation axis
    out.phi = SpectralField(grid, false);
    {
        std::vector<int> z(grid.dim, 0);
        set_mode(out.phi, z, cplx{1.0, 0.0});
        for (int ax = 1; ax < grid.dim; ++ax) {
            std::vector<int> kp(grid.dim, 0), km(grid.dim, 0);
            kp[ax] = 1;
            km[ax] = -1;
            set_mode(out.phi, kp, cplx{0.25, 0.0});
            set_mode(out.phi, km, cplx{0.25, 0.0});
        }
    }
    const double amp = std::exp2(k);
    out.f = SpectralField(grid, true);
    out.g = SpectralField(grid, true);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (out.phi[i] == cplx{0.0, 0.0}) continue;
        int kv[3];
        std::size_t rem = i;
        for (int a = grid.dim - 1; a >= 0; --a) {
            kv[a] = grid.freq_int(static_cast<int>(rem % grid.n));
            rem /= grid.n;
        }
        std::vector<int> shifted(kv, kv + grid.dim);
        shifted[0] -= mode; // f = 2^k e^{-i 2^k x_1} phi
        set_mode(out.f, shifted, amp * out.phi[i]);
        shifted[0] = kv[0] + mode; // g = 2^k e^{+i 2^k x_1} phi
        set_mode(out.g, shifted, amp * out.phi[i]);
    }
    return out;
}

double prop19_ratio(const Grid& grid, int k) {
    auto pair = make_prop19_pair(grid, k);
    auto prod = product_dealiased(pair.f, pair.g);
    return sup_norm(delta_j(prod, 0));
}

std::vector<double> DeltaSequence::partial_sums() const {
    std::vector<double> out;
    double acc = 0.0;
    for (double d : delta_sq) {
        acc += d;
        out.push_back(acc);
    }
    return out;
}

double DeltaSequence::slack(int n) const {
    if (n < j_lo || n > j_hi()) throw std::out_of_range("DeltaSequence::slack");
    double lhs = 0.0;
    for (int j = j_lo; j <= n; ++j)
        lhs += std::exp2(3.0 * (j - n)) * delta2(j);
    const double e = eta.at_clamped(n);
    return e * e - lhs;
}

bool DeltaSequence::divergence_hypothesis_holds() const {
    // terms 2^-3n sigma_n: a geometric tail (consecutive ratios bounded away
    // from 1) signals convergence; harmonic-or-slower tails diverge
    const int m = static_cast<int>(sigma.size());
    double acc = 0.0;
    int cnt = 0;
    for (int i = m / 2; i + 1 < m; ++i) {
        double a = std::exp2(-3.0 * (j_lo + i)) * sigma[static_cast<std::size_t>(i)];
        double b = std::exp2(-3.0 * (j_lo + i + 1)) * sigma[static_cast<std::size_t>(i + 1)];
        if (a > 0.0 && b > 0.0) {
            acc += std::log(b / a);
            ++cnt;
        }
    }
    if (cnt == 0) return false;
    return std::exp(acc / cnt) >= 0.8;
}

DeltaSequence delta_sequence(const EtaSequence& eta) {
    if (!eta.nonincreasing())
        throw std::invalid_argument("delta_sequence: eta must be nonincreasing");
    if (!eta.regularity_constant())
        throw std::invalid_argument("delta_sequence: eta must be regular");
    if (eta.n_lo() > 4)
        throw std::invalid_argument("delta_sequence: eta window must start at n <= 4");
    for (int n = std::max(4, eta.n_lo()); n <= eta.n_hi(); ++n)
        if (!(eta.at(n) > 0.0))
            throw std::invalid_argument("delta_sequence: eta must be positive on the window");

    DeltaSequence out;
    out.eta = eta;
    out.j_lo = 4;
    const int hi = eta.n_hi();
    // sigma_n = inf_{n <= k <= hi} 2^{3k} eta_k^2 (windowed infimum)
    std::vector<double> sigma(static_cast<std::size_t>(hi - 4 + 1));
    for (int n = hi; n >= 4; --n) {
        double v = std::exp2(3.0 * n) * eta.at(n) * eta.at(n);
        if (n < hi) v = std::min(v, sigma[static_cast<std::size_t>(n - 4 + 1)]);
        sigma[static_cast<std::size_t>(n - 4)] = v;
    }
    out.sigma = sigma;
    out.delta_sq.resize(sigma.size());
    out.delta_sq[0] = std::exp2(-12.0) * sigma[0];
    for (int j = 5; j <= hi; ++j)
        out.delta_sq[static_cast<std::size_t>(j - 4)] =
            std::exp2(-3.0 * j) *
            (sigma[static_cast<std::size_t>(j - 4)] - sigma[static_cast<std::size_t>(j - 5)]);
    return out;
}

OrthonormalBump make_orthonormal_bump(const Grid& grid, int sites_per_axis) {
    const int m = sites_per_axis;
    if (m < 2 || (m & (m - 1)) != 0 || m > grid.n / 2)
        throw std::invalid_argument("orthonormal bump: sites per axis must be a power of "
                                    "two, at most N/2");
    OrthonormalBump out;
    out.grid = grid;
    out.sites_per_axis = m;

    // annular profile h covering every residue class mod M
    const double r_lo = 0.5 * m / grid.box_len;
    const double r_hi = 1.75 * m / grid.box_len;
    out.smoothing_time = 0.5 / (r_hi * r_hi);
    SpectralField h(grid, true);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        double r = std::sqrt(grid.xi_norm_sq(i));
        if (r < r_lo || r > r_hi) continue;
        h[i] = cplx{std::exp(-r / (2.0 * m)), 0.0};
    }

    // class-wise normalization: V M^d sum_{n == zeta} e^{-2 s0 |xi|^2} |h|^2 = 1
    const std::size_t classes = static_cast<std::size_t>(std::pow(m, grid.dim));
    std::vector<double> sigma(classes, 0.0);
    auto class_of = [&](std::size_t flat) {
        std::size_t rem = flat, c = 0;
        for (int a = grid.dim - 1; a >= 0; --a) {
            int ki = grid.freq_int(static_cast<int>(rem % grid.n));
            rem /= grid.n;
            int zi = ((ki % m) + m) % m;
            c = c * m + static_cast<std::size_t>(zi);
        }
        return c;
    };
    // note: class accumulation order must match the index reconstruction
    std::vector<double> sig(classes, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (h[i] == cplx{0.0, 0.0}) continue;
        double e = std::exp(-2.0 * out.smoothing_time * grid.xi_norm_sq(i));
        sig[class_of(i)] += e * std::norm(h[i]);
    }
    for (double v : sig)
        if (!(v > 0.0))
            throw std::runtime_error("orthonormal bump: annulus misses a residue class");

    const double scale = grid.volume() * static_cast<double>(classes);
    out.m0 = SpectralField(grid, true);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (h[i] == cplx{0.0, 0.0}) continue;
        out.m0[i] = h[i] / std::sqrt(scale * sig[class_of(i)]);
    }
    out.m = heat(out.m0, out.smoothing_time);
    return out;
}

double OrthonormalBump::periodization_error() const {
    const int m = sites_per_axis;
    const std::size_t classes = static_cast<std::size_t>(std::pow(m, grid.dim));
    std::vector<double> sig(classes, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (this->m[i] == cplx{0.0, 0.0}) continue;
        std::size_t rem = i, c = 0;
        for (int a = grid.dim - 1; a >= 0; --a) {
            int ki = grid.freq_int(static_cast<int>(rem % grid.n));
            rem /= grid.n;
            int zi = ((ki % m) + m) % m;
            c = c * m + static_cast<std::size_t>(zi);
        }
        sig[c] += std::norm(this->m[i]);
    }
    const double scale = grid.volume() * static_cast<double>(classes);
    double worst = 0.0;
    for (double v : sig) worst = std::max(worst, std::abs(scale * v - 1.0));
    return worst;
}

cplx OrthonormalBump::site_inner_product(const std::vector<int>& l,
                                         const std::vector<int>& lp) const {
    // <m(.-l a), m(.-l' a)> = V sum_xi |m_hat|^2 e^{-i xi . (l - l') a}
    const double a = site_spacing();
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (m[i] == cplx{0.0, 0.0}) continue;
        double phase = 0.0;
        std::size_t rem = i;
        for (int ax = grid.dim - 1; ax >= 0; --ax) {
            double xi = grid.xi_component(static_cast<int>(rem % grid.n));
            rem /= grid.n;
            phase -= xi * a * (l[ax] - lp[ax]);
        }
        acc += std::norm(m[i]) * std::polar(1.0, phase);
    }
    return grid.volume() * acc;
}

std::vector<LacunaryShell> lacunary_shells(const OrthonormalBump& bump, int apex_sites,
                                           double alpha_sites, const DeltaSequence& dseq,
                                           int shell_count) {
    const int m = bump.sites_per_axis;
    std::vector<LacunaryShell> shells;
    for (int s = 0; s < shell_count; ++s) {
        const int j = dseq.j_lo + s;
        if (j > dseq.j_hi())
            throw std::out_of_range("lacunary_shells: delta sequence window too short");
        const double center = std::exp2(s) * apex_sites; // 2^s x_1 in site units
        const double halfw = alpha_sites * std::exp2(s) / std::sqrt(2.0);
        if (center + halfw > m - 1)
            throw std::out_of_range("lacunary_shells: shell " + std::to_string(s) +
                                    " overflows the box");
        LacunaryShell shell;
        shell.j = j;
        shell.coefficient = std::sqrt(dseq.delta2(j));
        const int lo1 = static_cast<int>(std::ceil(center - halfw));
        const int hi1 = static_cast<int>(std::floor(center + halfw));
        const int wt = static_cast<int>(std::floor(halfw));
        for (int l1 = lo1; l1 <= hi1; ++l1) {
            if (bump.grid.dim == 2) {
                for (int l2 = -wt; l2 <= wt; ++l2)
                    shell.sites.push_back({l1, l2});
            } else {
                for (int l2 = -wt; l2 <= wt; ++l2)
                    for (int l3 = -wt; l3 <= wt; ++l3)
                        shell.sites.push_back({l1, l2, l3});
            }
        }
        shells.push_back(std::move(shell));
    }
    return shells;
}

SpectralField lacunary_field(const OrthonormalBump& bump,
                             const std::vector<LacunaryShell>& shells,
                             const std::vector<int>& signs) {
    const Grid& g = bump.grid;
    std::size_t total = 0;
    for (const auto& s : shells) total += s.sites.size();
    if (signs.size() != total)
        throw std::invalid_argument("lacunary_field: one sign per site required");

    // a_hat(xi) = m0_hat(xi) * sum_l eps_l c_l e^{-i xi . l a}
    const double a = bump.site_spacing();
    SpectralField out(g, true);
    std::size_t sidx = 0;
    std::vector<std::pair<std::vector<double>, double>> charges; // position, signed coef
    for (const auto& shell : shells)
        for (const auto& site : shell.sites) {
            std::vector<double> pos(g.dim);
            for (int ax = 0; ax < g.dim; ++ax) pos[ax] = site[ax] * a;
            charges.emplace_back(std::move(pos), signs[sidx++] * shell.coefficient);
        }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (bump.m0[i] == cplx{0.0, 0.0}) continue;
        double xi[3] = {0.0, 0.0, 0.0};
        std::size_t rem = i;
        for (int ax = g.dim - 1; ax >= 0; --ax) {
            xi[ax] = g.xi_component(static_cast<int>(rem % g.n));
            rem /= g.n;
        }
        cplx lattice{0.0, 0.0};
        for (const auto& [pos, c] : charges) {
            double phase = 0.0;
            for (int ax = 0; ax < g.dim; ++ax) phase -= xi[ax] * pos[ax];
            lattice += c * std::polar(1.0, phase);
        }
        out[i] = bump.m0[i] * lattice;
    }
    return out;
}

double lacunary_ball_criterion(const OrthonormalBump& bump, const SpectralField& a,
                               const EtaSequence& eta, int k_lo, int k_hi) {
    auto g2 = modulus_squared(a);
    const double spacing = bump.site_spacing();
    double best = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double r = std::exp2(k) * spacing;
        if (r > bump.grid.box_edge() / 2.2) break;
        auto avg = ball_average_field(g2.grid(), g2.coef(), r);
        double mx = 0.0;
        const int stride = std::max(1, g2.grid().n / 64);
        if (g2.grid().dim == 2) {
            for (int i = 0; i < g2.grid().n; i += stride)
                for (int j = 0; j < g2.grid().n; j += stride)
                    mx = std::max(mx,
                                  avg[static_cast<std::size_t>(i) * g2.grid().n + j].real());
        } else {
            for (int i = 0; i < g2.grid().n; i += stride)
                for (int j = 0; j < g2.grid().n; j += stride)
                    for (int kk = 0; kk < g2.grid().n; kk += stride)
                        mx = std::max(
                            mx, avg[(static_cast<std::size_t>(i) * g2.grid().n + j) *
                                        g2.grid().n +
                                    kk]
                                    .real());
        }
        const double e = eta.at_clamped(k + 4);
        if (e > 0.0) best = std::max(best, mx / (e * e));
    }
    return best;
}

KernelProbe kernel_lower_bound(double x1, const std::vector<double>& l, double alpha) {
    if (l.size() < 2) throw std::invalid_argument("kernel_lower_bound: need l = (l1, l')");
    KernelProbe p;
    p.x1 = x1;
    p.l = l;

    // theta(x) = phi(x_1) psi'(x'), phi the unit-mass Gaussian, psi' Gaussian
    auto phi = [](double v) { return std::exp(-0.5 * v * v) / std::sqrt(2.0 * kPi); };
    auto psip = [](double r2) { return std::exp(-0.5 * r2); };

    // distance from (x1, 0) to the segment [0, l]
    double ll = 0.0;
    for (double c : l) ll += c * c;
    double proj = std::clamp(x1 * l[0] / ll, 0.0, 1.0);
    double d2 = 0.0;
    {
        double dx = x1 - proj * l[0];
        d2 = dx * dx;
        for (std::size_t a = 1; a < l.size(); ++a) d2 += proj * l[a] * proj * l[a];
    }
    p.in_cone = (l[0] >= 4.0 * x1) && (std::sqrt(d2) <= alpha);

    // I = int_0^1 phi(x1 - tau l1) psi'(|tau l'|^2) tau^2 dtau; substitute
    // v = x1 - tau l1, which resolves the O(1/l1)-wide support of phi exactly:
    // I = l1^-3 int (x1 - v)^2 phi(v) psi'(...) dv over v in [x1 - l1, x1]
    const int nq = 400;
    std::vector<double> xs, ws;
    gauss_legendre_01(nq, xs, ws);
    const double vlo = std::max(x1 - l[0], -12.0);
    const double vhi = std::min(x1, 12.0);
    double acc = 0.0;
    if (vhi > vlo) {
        for (int i = 0; i < nq; ++i) {
            double v = vlo + (vhi - vlo) * xs[i];
            double tau = (x1 - v) / l[0];
            double r2 = 0.0;
            for (std::size_t a = 1; a < l.size(); ++a) r2 += tau * l[a] * tau * l[a];
            acc += ws[i] * (vhi - vlo) * (x1 - v) * (x1 - v) * phi(v) * psip(r2);
        }
        acc /= std::pow(l[0], 3.0);
    }
    p.integral = std::abs(acc);
    p.sign = acc > 0.0 ? 1 : (acc < 0.0 ? -1 : 0);
    p.ratio = p.integral * std::pow(l[0], 3.0) / (x1 * x1);
    return p;
}

} // namespace lplab
