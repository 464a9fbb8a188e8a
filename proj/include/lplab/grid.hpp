#ifndef LPLAB_GRID_HPP
#define LPLAB_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lplab {

// Periodic grid on the box [0, 2*pi*L)^d with N points per axis.
// Frequencies live on the lattice (1/L)*Z^d, truncated to |k_i| <= N/2-1
// in integer index units (the Nyquist plane is unused).
struct Grid {
    int dim = 2;          // 2 or 3
    int n = 64;           // points per axis, power of two
    double box_len = 1.0; // L; physical box edge is 2*pi*L

    Grid() = default;
    Grid(int d, int n_, double L) : dim(d), n(n_), box_len(L) {
        if (dim != 2 && dim != 3)
            throw std::invalid_argument("Grid: dim must be 2 or 3");
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: N must be a power of two >= 8");
        if (!(box_len > 0.0))
            throw std::invalid_argument("Grid: box half-period L must be positive");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
        return s;
    }

    double box_edge() const { return 2.0 * 3.14159265358979323846 * box_len; }
    double cell_width() const { return box_edge() / n; }
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= cell_width();
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= box_edge();
        return v;
    }

    // integer frequency of FFT index i along one axis, in [-n/2, n/2)
    int freq_int(int i) const { return (i <= n / 2) ? i : i - n; }

    // physical frequency component xi_a = k_a / L
    double xi_component(int i) const { return freq_int(i) / box_len; }

    // |xi|^2 of the lattice mode with multi-index idx (flattened, row-major)
    double xi_norm_sq(std::size_t flat) const {
        double s = 0.0;
        std::size_t rem = flat;
        for (int a = dim - 1; a >= 0; --a) {
            int i = static_cast<int>(rem % n);
            rem /= n;
            double c = xi_component(i);
            s += c * c;
        }
        return s;
    }

    // Resolvable dyadic band window: 2^(jmin-1) >= 1/L, 2^(jmax+1) <= N/(2L).
    int band_min() const {
        int j = -62;
        while (std::ldexp(1.0, j - 1) * box_len < 1.0) ++j;
        return j;
    }
    int band_max() const {
        int j = 62;
        while (std::ldexp(1.0, j + 1) > 0.5 * n / box_len) --j;
        return j;
    }
    // direct band operators accept j in [band_min-2, band_max+2]
    int band_lo() const { return band_min() - 2; }
    int band_hi() const { return band_max() + 2; }

    bool same_as(const Grid& o) const {
        return dim == o.dim && n == o.n && box_len == o.box_len;
    }

    void require_same(const Grid& o, const char* what) const {
        if (!same_as(o))
            throw std::invalid_argument(std::string(what) +
                                        ": fields live on different grids");
    }
};

inline void check_band_in_window(const Grid& g, int j, const char* what) {
    if (j < g.band_lo() || j > g.band_hi())
        throw std::out_of_range(std::string(what) + ": band j=" + std::to_string(j) +
                                " outside resolvable window [" +
                                std::to_string(g.band_lo()) + ", " +
                                std::to_string(g.band_hi()) + "]");
}

} // namespace lplab

#endif
