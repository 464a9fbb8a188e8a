#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lplab/duhamel.hpp"
#include "lplab/norms.hpp"
#include "lplab/paraproduct.hpp"
#include "lplab/solver.hpp"

using namespace lplab;

namespace {

SpectralField plane_wave(const Grid& g, const std::vector<int>& k, cplx amp = {1.0, 0.0}) {
    SpectralField f(g, true);
    set_mode(f, k, amp);
    return f;
}

// flat-band critical datum: every band normalized to sup ~ 2^j
SpectralField critical_datum(const Grid& g, int k_lo, int k_hi, std::uint64_t seed) {
    SpectralField f(g, true);
    for (int k = k_lo; k <= k_hi; ++k) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(k));
        auto band = random_band_field(g, k, rng);
        double s = sup_norm(band);
        if (s > 0.0) f += (cplx{std::exp2(k) / s, 0.0}) * band;
    }
    return f;
}

EpsilonFunction reference_epsilon(int n_hi = 14) {
    // critical-Lebesgue mechanism: eta_n = 4^-n for n >= 0, clamped to 1
    // below; n_hi truncates to the offsets the band window realizes
    std::vector<double> v;
    for (int n = -4; n <= std::max(n_hi, -3); ++n)
        v.push_back(std::exp2(-2.0 * std::max(n, 0)));
    return EpsilonFunction{EtaSequence(-4, std::move(v))};
}

} // namespace

TEST_CASE("graded quadrature: positive weights summing to t") {
    for (double t : {1.0, 0.37, 1e-3}) {
        auto q = TimeQuadrature::graded(t, 24);
        double sum = 0.0;
        for (std::size_t i = 0; i < q.weights.size(); ++i) {
            CHECK(q.weights[i] > 0.0);
            CHECK(q.nodes[i] > 0.0);
            CHECK(q.nodes[i] < t);
            sum += q.weights[i];
        }
        CHECK(std::abs(sum - t) <= 1e-12 * t);
    }
}

TEST_CASE("epsilon function examples") {
    EpsilonFunction single{EtaSequence(0, {1.0})};
    CHECK(single.eval(0.0) == 0.0);
    CHECK(std::abs(single.eval(0.3) - 0.3) <= 1e-15);
    CHECK(std::abs(single.eval(7.0) - 1.0) <= 1e-15);

    // eta_n = 4^-n for n >= 0: eps(1) = sum 4^-n = 4/3
    std::vector<double> v;
    for (int n = 0; n <= 30; ++n) v.push_back(std::exp2(-2.0 * n));
    EpsilonFunction geo{EtaSequence(0, std::move(v))};
    CHECK(std::abs(geo.eval(1.0) - 4.0 / 3.0) <= 1e-9);

    // nondecreasing, bounded by sum eta
    double prev = 0.0;
    for (double s : {0.01, 0.1, 1.0, 10.0, 1e4}) {
        double e = geo.eval(s);
        CHECK(e >= prev);
        CHECK(e <= 4.0 / 3.0 + 1e-12);
        prev = e;
    }
}

TEST_CASE("single-mode closed form") {
    Grid g(2, 64, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    const std::vector<int> ka{3, 1}, kb{2, -2};
    const cplx A{0.7, 0.2}, Bc{-0.3, 0.5};
    auto u = Trajectory::analytic(g, 2.0, [&](double) { return plane_wave(g, ka, A); });
    auto v = Trajectory::analytic(g, 2.0, [&](double) { return plane_wave(g, kb, Bc); });
    const double t = 0.8;
    auto field = bilinear_B(u, v, t, 64, sym);
    // B = A Bc P(xi) (1 - e^{-t |xi|^2}) / |xi|^2 at xi = ka + kb
    const double xi2 = 25.0 + 1.0;
    const cplx p{0.0, 5.0};
    cplx expect = A * Bc * p * (1.0 - std::exp(-t * xi2)) / xi2;
    CHECK(std::abs(get_mode(field, {5, -1}) - expect) <= 1e-8 * std::abs(expect));
}

TEST_CASE("zero trajectories give zero, and B is symmetric") {
    Grid g(2, 64, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    auto z = Trajectory::zero(g, 1.0);
    CHECK(l2_norm(bilinear_B(z, z, 0.5, 16, sym)) == 0.0);

    auto u = Trajectory::heat_flow(critical_datum(g, 1, 3, 11), 1.0);
    auto v = Trajectory::heat_flow(critical_datum(g, 1, 3, 12), 1.0);
    auto ab = bilinear_B(u, v, 0.5, 16, sym);
    auto ba = bilinear_B(v, u, 0.5, 16, sym);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(ab[i] - ba[i]));
    CHECK(worst == 0.0); // pointwise products commute exactly
}

TEST_CASE("quadrature refinement stability on smooth trajectories") {
    Grid g(2, 128, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    auto u = Trajectory::heat_flow(critical_datum(g, 1, 3, 13), 1.0);
    auto v = Trajectory::heat_flow(critical_datum(g, 1, 3, 14), 1.0);
    const double t = 0.7;
    auto coarse = bilinear_B(u, v, t, 48, sym);
    auto fine = bilinear_B(u, v, t, 96, sym);
    CHECK(l2_norm(coarse - fine) <= 1e-8 * l2_norm(fine));
}

TEST_CASE("bilinear scaling covariance") {
    Grid g(2, 256, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    auto u0 = critical_datum(g, 2, 4, 15);
    auto v0 = critical_datum(g, 2, 4, 16);
    auto u = Trajectory::heat_flow(u0, 4.0);
    auto v = Trajectory::heat_flow(v0, 4.0);
    auto ur = Trajectory::heat_flow(dyadic_rescale(u0, 1), 1.0);
    auto vr = Trajectory::heat_flow(dyadic_rescale(v0, 1), 1.0);
    const double t = 0.9;
    auto lhs = dyadic_rescale(bilinear_B(u, v, t, 32, sym), 1);
    auto rhs = bilinear_B(ur, vr, t / 4.0, 32, sym);
    // u_hat(s) = rescale(u(4s)): for heat flows this is the heat flow of the
    // rescaled datum, and B commutes with the scaling up to the factor 2
    // carried by each rescale... the two routes must agree exactly:
    // rescale(B(u,v)(t)) multiplies amplitudes by 2 and B(ur,vr) carries
    // 2*2 from the data and 1/4 ... both sides evaluate identically.
    CHECK(l2_norm(lhs - rhs) <= 1e-7 * l2_norm(rhs));
}

TEST_CASE("band diagnostics: square term dies five bands above the data") {
    Grid g(2, 128, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    const int k = 1;
    Rng rng(17);
    auto datum = random_band_field(g, k, rng);
    auto u = Trajectory::heat_flow(datum, 1.0);
    auto eps = reference_epsilon();
    for (int j = k + 5; j <= g.band_max(); ++j) {
        auto d = band_diagnostics(u, u, 0.5, j, SpaceSpec::lebesgue(3.0), 4, eps, 12, sym);
        CHECK(d.c_term <= 1e-12);
    }
}

// Trajectory pinned to the F-ball envelope: sum_k (1 + 2^k sqrt(tau))^-N b_k
// with unit-E band fields b_k; bare heat flows decay exponentially below the
// envelope and cannot probe its sharpness.
Trajectory envelope_probe(const Grid& g, int k_lo, int k_hi, int n_weight,
                          std::uint64_t seed, double t_max, const SpaceSpec& base) {
    auto bands = std::make_shared<std::vector<SpectralField>>();
    for (int k = k_lo; k <= k_hi; ++k) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(k));
        auto b = random_band_field(g, k, rng);
        bands->push_back((cplx{1.0 / norm(b, base), 0.0}) * b);
    }
    return Trajectory::analytic(g, t_max, [bands, k_lo, n_weight, g](double tau) {
        SpectralField acc(g, true);
        const double rt = std::sqrt(tau);
        for (std::size_t i = 0; i < bands->size(); ++i) {
            double w = std::pow(1.0 + std::exp2(k_lo + static_cast<int>(i)) * rt, -n_weight);
            acc += (cplx{w, 0.0}) * (*bands)[i];
        }
        return acc;
    });
}

TEST_CASE("envelope ratios bounded across a (j, t) sweep") {
    Grid g(2, 128, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    // the dimension-matched critical Lebesgue space (p = d)
    auto base = SpaceSpec::lebesgue(2.0);
    auto u = envelope_probe(g, 1, 3, 4, 18, 1.0, base);
    std::vector<double> r25, r28;
    const int data_top = 3;
    for (int j = 3; j <= 4; ++j) {
        // epsilon over the offsets the band window actually realizes
        auto eps = reference_epsilon(data_top - j);
        for (int m = 1; m <= 6; ++m) {
            // dyadic times swept per band below the kernel transition:
            // 4^j t in [4^-6, 4^-1], where the envelope is sharp
            double t = std::exp2(2.0 * (-m - j));
            auto d = band_diagnostics(u, u, t, j, base, 4, eps, 12, sym);
            if (d.ratio25 > 0.0) r25.push_back(d.ratio25);
            if (d.ratio28 > 0.0) r28.push_back(d.ratio28);
        }
    }
    REQUIRE(r25.size() >= 12);
    REQUIRE(r28.size() >= 12);
    auto spread = [](std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) /
               *std::min_element(v.begin(), v.end());
    };
    INFO("spread25 ", spread(r25), " spread28 ", spread(r28));
    CHECK(spread(r25) <= 8.0);
    CHECK(spread(r28) <= 8.0);
}

TEST_CASE("B(u,v)(t) vanishes in the weak sense as t -> 0") {
    Grid g(2, 128, 1.0);
    SymbolSpec sym{SymbolKind::Scalar1};
    auto u = Trajectory::heat_flow(critical_datum(g, 1, 3, 19), 1.1);
    auto v = Trajectory::heat_flow(critical_datum(g, 1, 3, 20), 1.1);
    // fixed smooth test field: a low-band packet
    SpectralField test(g, true);
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g.xi_norm_sq(i) <= 4.0) test[i] = cplx{1.0, 0.0};
    // small-t regime t = 4^-m, m = 1..6: the pairing decays monotonically
    std::vector<double> pairing;
    for (int m = 1; m <= 6; ++m) {
        auto b = bilinear_B(u, v, std::exp2(-2.0 * m), 24, sym);
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < g.size(); ++i) acc += b[i] * std::conj(test[i]);
        pairing.push_back(std::abs(acc) * g.volume());
    }
    for (std::size_t m = 1; m < pairing.size(); ++m)
        CHECK(pairing[m] <= 1.05 * pairing[m - 1] + 1e-12);
    CHECK(pairing.back() <= 0.05 * pairing.front());
}

TEST_CASE("sampled trajectories interpolate in sqrt(t) and cache") {
    Grid g(2, 64, 1.0);
    std::vector<double> times{0.25, 1.0};
    std::vector<SpectralField> fields{plane_wave(g, {2, 0}, cplx{0.5, 0.0}),
                                      plane_wave(g, {2, 0}, cplx{1.0, 0.0})};
    auto tr = Trajectory::sampled(times, fields);
    // sqrt-linear between 0.25 and 1: at t = 0.5625 (sqrt = .75) weight is 1/2
    auto mid = tr.at(0.5625);
    CHECK(std::abs(get_mode(mid, {2, 0}) - cplx{0.75, 0.0}) <= 1e-13);
    // below the first sample: linear to the implicit zero at t = 0
    auto low = tr.at(0.0625);
    CHECK(std::abs(get_mode(low, {2, 0}) - cplx{0.25, 0.0}) <= 1e-13);
    // repeated evaluation identical (cache path)
    auto again = tr.at(0.5625);
    CHECK(get_mode(again, {2, 0}) == get_mode(mid, {2, 0}));
    CHECK_THROWS_AS((void)tr.at(2.0), std::out_of_range);
}
