#ifndef LPLAB_FIELD_HPP
#define LPLAB_FIELD_HPP

#include <complex>
#include <vector>

#include "lplab/grid.hpp"

namespace lplab {

using cplx = std::complex<double>;

// A function on the periodic box stored by its Fourier-series amplitudes:
//   f(x) = sum_xi coef(xi) * exp(i xi . x)
// coef is in standard FFT index order, row-major over axes.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g, bool mean_zero = false)
        : grid_(g), coef_(g.size(), cplx{0.0, 0.0}), mean_zero_(mean_zero) {}
    SpectralField(const Grid& g, std::vector<cplx> coef, bool mean_zero = false)
        : grid_(g), coef_(std::move(coef)), mean_zero_(mean_zero) {
        if (coef_.size() != grid_.size())
            throw std::invalid_argument("SpectralField: coefficient count mismatch");
        if (mean_zero_) coef_[0] = cplx{0.0, 0.0};
    }

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& coef() const { return coef_; }
    std::vector<cplx>& coef() { return coef_; }
    bool mean_zero() const { return mean_zero_; }
    void set_mean_zero(bool flag) {
        mean_zero_ = flag;
        if (flag && !coef_.empty()) coef_[0] = cplx{0.0, 0.0};
    }

    cplx& operator[](std::size_t i) { return coef_[i]; }
    const cplx& operator[](std::size_t i) const { return coef_[i]; }

    SpectralField& operator+=(const SpectralField& o) {
        grid_.require_same(o.grid_, "field sum");
        for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
        mean_zero_ = mean_zero_ && o.mean_zero_;
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        grid_.require_same(o.grid_, "field difference");
        for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
        mean_zero_ = mean_zero_ && o.mean_zero_;
        return *this;
    }
    SpectralField& operator*=(cplx s) {
        for (auto& c : coef_) c *= s;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

    // largest per-axis integer frequency with a nonzero coefficient
    int max_axis_freq() const;
    // largest |xi| over nonzero coefficients (0 when the field vanishes)
    double spectral_radius() const;

  private:
    Grid grid_;
    std::vector<cplx> coef_;
    bool mean_zero_ = false;
};

// Mode accessor helpers: integer frequency vector -> flat index.
std::size_t mode_index(const Grid& g, const std::vector<int>& k);
void set_mode(SpectralField& f, const std::vector<int>& k, cplx amplitude);
cplx get_mode(const SpectralField& f, const std::vector<int>& k);

} // namespace lplab

#endif
