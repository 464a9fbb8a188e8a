#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lplab/counterexample.hpp"
#include "lplab/norms.hpp"
#include "lplab/rng.hpp"

using namespace lplab;

namespace {

double harmonic_partial(int terms, int offset) {
    double acc = 0.0;
    for (int j = 0; j < terms; ++j) acc += 1.0 / (offset + j + 1.0);
    return acc;
}

EtaSequence sqrt_decay_eta(int hi) {
    std::vector<double> v;
    for (int n = 0; n <= hi; ++n) v.push_back(1.0 / std::sqrt(n + 1.0));
    return EtaSequence(0, std::move(v));
}

} // namespace

TEST_CASE("prop 19 pair: exact 4^k law and k-independent norms") {
    Grid g(2, 256, 1.0);
    std::vector<double> vals;
    for (int k = 3; k <= 6; ++k) vals.push_back(prop19_ratio(g, k));
    for (std::size_t i = 1; i < vals.size(); ++i) {
        double ratio = vals[i] / vals[i - 1];
        CHECK(std::abs(ratio - 4.0) <= 1e-10 * 4.0);
    }
    auto spec = SpaceSpec::besov(-1.0, kInf, kInf);
    double first = 0.0;
    for (int k = 3; k <= 6; ++k) {
        auto pair = make_prop19_pair(g, k);
        double nf = norm(pair.f, spec);
        double ng = norm(pair.g, spec);
        CHECK(std::abs(nf - ng) <= 1e-10 * nf);
        if (first == 0.0)
            first = nf;
        else
            CHECK(std::abs(nf - first) <= 1e-6 * first);
    }
    // zero profile gives zero ratio: directly on a zeroed pair
    auto pair = make_prop19_pair(g, 3);
    SpectralField zero(g, true);
    CHECK(sup_norm(delta_j(product_dealiased(zero, pair.g), 0)) == 0.0);
}

TEST_CASE("delta sequence for the harmonic-type eta") {
    auto eta = sqrt_decay_eta(24);
    auto d = delta_sequence(eta);
    // sigma_n = 8^n / (n+1), so delta_j^2 = 1/(j+1) - 1/(8j) for j >= 5
    CHECK(std::abs(d.sigma[0] - std::exp2(12.0) / 5.0) <= 1e-9 * d.sigma[0]);
    for (int j = 5; j <= 10; ++j) {
        double expected = 1.0 / (j + 1.0) - 1.0 / (8.0 * j);
        CHECK(std::abs(d.delta2(j) - expected) <= 1e-12);
    }
    // partial sums track the harmonic series within factor 2
    auto sums = d.partial_sums();
    for (std::size_t i = 3; i < sums.size(); ++i) {
        double h = harmonic_partial(static_cast<int>(i) + 1, 4);
        CHECK(sums[i] >= 0.5 * h);
        CHECK(sums[i] <= 2.0 * h);
    }
    // Eq. (50) slack nonnegative across the window, telescoping identity
    for (int n = 4; n <= d.j_hi(); ++n) {
        CHECK(d.slack(n) >= -1e-15);
        double lhs = 0.0;
        for (int j = 4; j <= n; ++j) lhs += std::exp2(3.0 * (j - n)) * d.delta2(j);
        double tele = std::exp2(-3.0 * n) * d.sigma[static_cast<std::size_t>(n - 4)];
        CHECK(std::abs(lhs - tele) <= 1e-12 * std::max(tele, 1e-30));
    }
    CHECK(d.divergence_hypothesis_holds());
}

TEST_CASE("delta sequence for square-summable eta reports a failed hypothesis") {
    auto eta = EtaSequence::power(-1.0, 0, 24); // eta_n = 2^-n
    auto d = delta_sequence(eta);
    // sigma_n = 2^n: geometric, sum 2^-3n sigma_n converges
    for (int n = 4; n <= 10; ++n)
        CHECK(std::abs(d.sigma[static_cast<std::size_t>(n - 4)] - std::exp2(n)) <=
              1e-12 * std::exp2(n));
    CHECK_FALSE(d.divergence_hypothesis_holds());
    for (int n = 4; n <= d.j_hi(); ++n) CHECK(d.slack(n) >= -1e-15);
}

TEST_CASE("delta sequence rejects invalid eta") {
    std::vector<double> increasing{1.0, 2.0, 4.0};
    CHECK_THROWS_AS((void)delta_sequence(EtaSequence(0, increasing)), std::invalid_argument);
}

TEST_CASE("orthonormal bump: periodization constant and site orthogonality") {
    Grid g(3, 64, 1.0);
    auto bump = make_orthonormal_bump(g, 8);
    CHECK(bump.periodization_error() <= 1e-8);

    auto self = bump.site_inner_product({0, 0, 0}, {0, 0, 0});
    CHECK(std::abs(self - cplx{1.0, 0.0}) <= 1e-6);
    for (const std::vector<int> shift :
         {std::vector<int>{1, 0, 0}, {0, 1, 0}, {2, 1, 0}, {3, 3, 3}}) {
        auto cross = bump.site_inner_product(shift, {0, 0, 0});
        CHECK(std::abs(cross) <= 1e-6);
    }
}

TEST_CASE("lacunary field: ball criterion stable under sign flips") {
    Grid g(3, 64, 1.0);
    auto bump = make_orthonormal_bump(g, 16);
    auto eta = sqrt_decay_eta(24);
    auto dseq = delta_sequence(eta);
    auto shells = lacunary_shells(bump, 2, 1.0, dseq, 3);
    REQUIRE(shells.size() == 3);
    std::size_t sites = 0;
    for (const auto& s : shells) sites += s.sites.size();

    // single shell occupied: uniformity over sign patterns
    std::vector<LacunaryShell> single{shells[1]};
    std::vector<double> constants;
    for (int pattern = 0; pattern < 16; ++pattern) {
        Rng rng = Rng::substream(404, static_cast<std::uint64_t>(pattern));
        std::vector<int> signs;
        for (std::size_t i = 0; i < single[0].sites.size(); ++i) signs.push_back(rng.sign());
        auto a = lacunary_field(bump, single, signs);
        constants.push_back(lacunary_ball_criterion(bump, a, eta, 0, 3));
    }
    double lo = *std::min_element(constants.begin(), constants.end());
    double hi = *std::max_element(constants.begin(), constants.end());
    INFO("single-shell constants ", lo, " .. ", hi);
    CHECK(lo > 0.0);
    CHECK(hi / lo <= 2.0);

    // two shells: near-orthogonality keeps the constant within factor 2
    std::vector<LacunaryShell> two{shells[1], shells[2]};
    Rng rng(405);
    std::vector<int> signs;
    for (const auto& s : two)
        for (std::size_t i = 0; i < s.sites.size(); ++i) signs.push_back(rng.sign());
    auto a2 = lacunary_field(bump, two, signs);
    double c2 = lacunary_ball_criterion(bump, a2, eta, 0, 3);
    CHECK(c2 <= 2.0 * hi);
    CHECK(c2 >= 0.25 * lo);

    // all-zero coefficients give a zero criterion
    std::vector<LacunaryShell> zero_shell = single;
    zero_shell[0].coefficient = 0.0;
    auto az = lacunary_field(bump, zero_shell,
                             std::vector<int>(single[0].sites.size(), 1));
    CHECK(lacunary_ball_criterion(bump, az, eta, 0, 3) == 0.0);
}

TEST_CASE("kernel lower bound: uniform beta over the cone sample") {
    std::vector<double> ratios;
    for (double x1 : {8.0, 12.0, 16.0, 20.0}) {
        for (double mult : {4.0, 6.0, 8.0, 12.0, 16.0}) {
            auto p = kernel_lower_bound(x1, {mult * x1, 0.0, 0.0});
            CHECK(p.in_cone);
            ratios.push_back(p.ratio);
        }
    }
    REQUIRE(ratios.size() == 20);
    double beta = *std::min_element(ratios.begin(), ratios.end());
    INFO("beta ", beta);
    CHECK(beta > 0.05); // a single uniform positive constant fits the sample
}

TEST_CASE("kernel lower bound: l1 cubed law and out-of-cone reporting") {
    auto a = kernel_lower_bound(10.0, {40.0, 0.0, 0.0});
    auto b = kernel_lower_bound(10.0, {80.0, 0.0, 0.0});
    double shrink = a.integral / b.integral;
    CHECK(shrink >= 8.0 / 1.5);
    CHECK(shrink <= 8.0 * 1.5);

    // far off the segment: no assertion, but the hypothesis flag drops
    auto c = kernel_lower_bound(10.0, {40.0, 30.0, 0.0});
    CHECK_FALSE(c.in_cone);
    CHECK(std::isfinite(c.ratio));

    // sign extraction is the byproduct used by the epsilon_l construction
    CHECK(a.sign != 0);
}
