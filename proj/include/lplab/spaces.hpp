#ifndef LPLAB_SPACES_HPP
#define LPLAB_SPACES_HPP

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lplab {

// Nonnegative sequence (eta_n) on a finite window [n_lo, n_hi].
// Two extension conventions are used by the callers:
//  - band-product profiles vanish for n <= -5,
//  - ball-average (M(eta)) profiles take eta_n = eta_0 for n <= 0.
class EtaSequence {
  public:
    EtaSequence() = default;
    EtaSequence(int n_lo, std::vector<double> values);

    static EtaSequence power(double rate_log2, int n_lo, int n_hi); // eta_n = 2^(rate*n)
    static EtaSequence from_function(int n_lo, int n_hi, double (*fn)(int));

    int n_lo() const { return n_lo_; }
    int n_hi() const { return n_lo_ + static_cast<int>(values_.size()) - 1; }
    bool in_window(int n) const { return n >= n_lo() && n <= n_hi(); }

    // raw windowed value; zero outside the window
    double at(int n) const {
        return in_window(n) ? values_[static_cast<std::size_t>(n - n_lo_)] : 0.0;
    }
    // M(eta) convention: eta_n = eta_0 for n below the window, clamp above
    double at_clamped(int n) const {
        if (n < n_lo_) return values_.empty() ? 0.0 : values_.front();
        if (n > n_hi()) return values_.empty() ? 0.0 : values_.back();
        return values_[static_cast<std::size_t>(n - n_lo_)];
    }

    bool nonincreasing() const;
    // Def-10 regularity: eta_{n+1}/C <= eta_n <= C eta_{n+1} on positive entries
    std::optional<double> regularity_constant() const;

    const std::vector<double>& values() const { return values_; }

  private:
    int n_lo_ = 0;
    std::vector<double> values_;
};

// ---- point sets on the torus (closed sets S of the 2-microlocal spaces) ----

enum class SetShape { Points, Plane, Line };

struct PointSet {
    SetShape shape = SetShape::Points;
    int plane_axis = 0;           // for Plane: {x_axis = offset}; Line: x,y=offset
    double offset = 0.0;
    std::vector<std::vector<double>> points; // for Points: explicit coordinates

    bool empty() const { return shape == SetShape::Points && points.empty(); }

    static PointSet single_point(const std::vector<double>& x) {
        PointSet s;
        s.points.push_back(x);
        return s;
    }
    static PointSet plane(int axis, double offset = 0.0) {
        PointSet s;
        s.shape = SetShape::Plane;
        s.plane_axis = axis;
        s.offset = offset;
        return s;
    }
};

// ---- space specification -----------------------------------------------------

enum class SpaceKind {
    Lebesgue,       // p in [1, inf]
    Lorentz,        // (p, q), quasi-norm via decreasing rearrangement
    BesovHom,       // (s, p, q)
    TriebelHom,     // (s, p, q < inf)
    Morrey,         // (p = 3, q in [1, 3])
    BesovOverMorrey,// s = 3/p - 1, ell^r over bands of Morrey(p, q)
    FourierFq,      // sup_j 2^(j(2-3/q)) || hat(Delta_j f) ||_Lq
    MetaEta,        // M(eta) ball-average space
    TwoMicrolocal,  // (s' > 0, S)
    DerivedCN,      // sup_j (1+2^j)^N ||Delta_j f||_base
    DerivedBN       // inhomogeneous: ||S_0 f||_base + sup_{j>=0} 2^(jN) ||...||
};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SpaceSpec {
    SpaceKind kind = SpaceKind::Lebesgue;
    double p = 3.0;
    double q = kInf;
    double s = 0.0;       // Besov/Triebel regularity
    double r = kInf;      // BesovOverMorrey outer exponent
    double sprime = 1.0;  // TwoMicrolocal
    int n_weight = 4;     // DerivedCN/DerivedBN exponent N
    EtaSequence eta;      // MetaEta
    PointSet set;         // TwoMicrolocal
    std::shared_ptr<const SpaceSpec> base; // DerivedCN/DerivedBN

    static SpaceSpec lebesgue(double p);
    static SpaceSpec lorentz(double p, double q);
    static SpaceSpec besov(double s, double p, double q);
    static SpaceSpec triebel(double s, double p, double q);
    static SpaceSpec morrey(double p, double q);
    static SpaceSpec besov_over_morrey(double p, double q, double r);
    static SpaceSpec fourier_fq(double q);
    static SpaceSpec meta_eta(EtaSequence eta);
    static SpaceSpec two_microlocal(double sprime, PointSet set);
    static SpaceSpec derived_cn(SpaceSpec base, int n_weight);
    static SpaceSpec derived_bn(SpaceSpec base, int n_weight);
};

// CLI grammar, e.g. "lebesgue:p=3", "besov:s=-0.5,p=6,q=inf",
// "cn:base=lebesgue:p=3,N=4", "micro:sp=2,set=plane(0)".
SpaceSpec parse_space_spec(const std::string& text);
std::string to_string(const SpaceSpec& spec);

// Reference eta decay rate (log2 slope) for spaces where one is known;
// used for the theory_rate column of eta-scan reports.
std::optional<double> known_eta_rate_log2(const SpaceSpec& spec);

} // namespace lplab

#endif
